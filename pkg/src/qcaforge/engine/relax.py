import logging
from concurrent.futures import Executor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..models.schemas import SimConfig
from .physics import CouplingTable, response

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelaxResult:
    polarizations: np.ndarray
    converged: bool
    iterations: int


def _row_blocks(count: int, workers: int) -> List[Tuple[int, int]]:
    step = -(-count // workers)
    return [(start, min(start + step, count)) for start in range(0, count, step)]


class NeighborField:
    """
    Weighted neighbour sums sum_j E_k(i, j) * P_j for every cell.

    Each row is reduced on its own, so splitting rows across threads returns
    exactly the single-threaded numbers.
    """

    def __init__(self, coupling: CouplingTable, executor: Optional[Executor] = None, workers: int = 1):
        self.coupling = coupling
        self.executor = executor if workers > 1 else None
        self.blocks = _row_blocks(coupling.size, workers) if self.executor else []

    def _block(self, polarizations: np.ndarray, start: int, stop: int) -> np.ndarray:
        index = self.coupling.neighbor_index[start:stop]
        return (self.coupling.coefficients[start:stop] * polarizations[index]).sum(axis=1)

    def __call__(self, polarizations: np.ndarray) -> np.ndarray:
        if self.executor is None:
            return self._block(polarizations, 0, self.coupling.size)
        parts = self.executor.map(lambda block: self._block(polarizations, *block), self.blocks)
        return np.concatenate(list(parts))


def relax_sample(polarizations: np.ndarray, gammas: np.ndarray, coupling: CouplingTable,
                 config: SimConfig, field: Optional[NeighborField] = None) -> RelaxResult:
    """
    Synchronous (Jacobi) relaxation of one sample.

    Every free cell is updated from the previous sweep's values until the largest
    change drops below the tolerance or the sweep limit is hit. Held cells keep
    their values. Non-convergence is reported, not raised.
    """
    field = field or NeighborField(coupling)
    current = np.array(polarizations, dtype=float)
    free = coupling.free
    if not free.any():
        return RelaxResult(current, True, 0)

    scale = 2.0 * np.asarray(gammas, dtype=float)[coupling.zones]
    for iteration in range(1, config.max_iterations_per_sample + 1):
        updated = np.where(free, response(field(current) / scale), current)
        change = np.max(np.abs(updated - current)[free])
        current = updated
        if change < config.convergence_tolerance:
            return RelaxResult(current, True, iteration)
    return RelaxResult(current, False, config.max_iterations_per_sample)
