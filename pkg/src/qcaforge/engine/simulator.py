import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Mapping, Optional

import numpy as np

from ..core.constants import NUM_CLOCK_ZONES
from ..core.errors import LayoutError, SimulationError
from ..models.layout import CellFunction, Layout, validate_layout
from ..models.schemas import SimConfig
from .clocking import ClockSchedule
from .physics import CouplingTable
from .relax import NeighborField, relax_sample
from .trace import Trace

logger = logging.getLogger(__name__)

Vector = Mapping[str, int]

DEFAULT_PARALLEL_MIN_CELLS = 256


class Simulator:
    """
    Bistable-approximation engine bound to one layout.

    Couplings are computed once; `run` can be called repeatedly and always starts
    from the same initial state (free cells at 0, fixed cells at their value).
    """

    def __init__(self, layout: Layout, config: SimConfig, workers: int = 1,
                 parallel_min_cells: int = DEFAULT_PARALLEL_MIN_CELLS):
        result = validate_layout(layout)
        if not result.valid:
            raise LayoutError(f"layout '{layout.name}' is invalid", result.violations)

        self.layout = layout
        self.config = config
        self.schedule = ClockSchedule(config.samples_per_cycle)
        self.coupling = CouplingTable.build(layout, config)
        self.workers = workers if len(layout.cells) >= parallel_min_cells else 1
        self.input_index = np.array(
            [i for i, c in enumerate(layout.cells) if c.function is CellFunction.INPUT], dtype=int
        )
        self.input_labels = [layout.cells[i].label for i in self.input_index]
        self._gamma_table = np.array(
            [self.schedule.gammas(s, config) for s in range(config.samples_per_cycle)]
        )
        self.logger = logging.getLogger(__name__)

    def _drive(self, vector: Vector, position: int) -> np.ndarray:
        unknown = sorted(set(vector) - set(self.input_labels))
        if unknown:
            raise SimulationError(f"vector {position}: unknown input label(s) {', '.join(unknown)}")
        values = []
        for label in self.input_labels:
            if label not in vector:
                raise SimulationError(f"vector {position}: missing input label '{label}'")
            bit = vector[label]
            if bit not in (0, 1):
                raise SimulationError(f"vector {position}: input '{label}' must be 0 or 1, got {bit!r}")
            values.append(1.0 if bit else -1.0)
        return np.array(values)

    def initial_state(self) -> np.ndarray:
        return np.array([c.polarization for c in self.layout.cells], dtype=float)

    def run(self, vectors: Iterable[Vector], hold_cycles: int = 1) -> Trace:
        if hold_cycles < 1:
            raise SimulationError("hold_cycles must be at least 1")
        drives = [self._drive(v, i) for i, v in enumerate(vectors)]
        spc = self.config.samples_per_cycle
        count = len(self.layout.cells)
        total = len(drives) * hold_cycles * spc

        polarizations = np.empty((total, count))
        gammas = np.empty((total, NUM_CLOCK_ZONES))
        vector_index = np.empty(total, dtype=int)
        converged = np.empty(total, dtype=bool)
        iterations = np.empty(total, dtype=int)

        executor: Optional[ThreadPoolExecutor] = None
        if self.workers > 1:
            executor = ThreadPoolExecutor(max_workers=self.workers)
        try:
            field = NeighborField(self.coupling, executor, self.workers)
            state = self.initial_state()
            sample = 0
            for v, drive in enumerate(drives):
                for _ in range(hold_cycles):
                    state[self.input_index] = drive
                    for s in range(spc):
                        result = relax_sample(state, self._gamma_table[s], self.coupling, self.config, field)
                        state = result.polarizations
                        polarizations[sample] = state
                        gammas[sample] = self._gamma_table[s]
                        vector_index[sample] = v
                        converged[sample] = result.converged
                        iterations[sample] = result.iterations
                        sample += 1
        finally:
            if executor is not None:
                executor.shutdown()

        trace = Trace(self.layout, spc, hold_cycles, vector_index, gammas, polarizations, converged, iterations)
        if trace.nonconverged_count:
            self.logger.warning(
                f"{self.layout.name}: {trace.nonconverged_count} of {total} samples did not converge "
                f"within {self.config.max_iterations_per_sample} sweeps"
            )
        return trace


def simulate(layout: Layout, vectors: List[Vector], config: SimConfig, workers: int = 1,
             hold_cycles: int = 1, parallel_min_cells: int = DEFAULT_PARALLEL_MIN_CELLS) -> Trace:
    return Simulator(layout, config, workers, parallel_min_cells).run(vectors, hold_cycles)
