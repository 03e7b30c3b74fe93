"""Electrostatics of the four-dot cell and the bistable response function."""
import math
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from ..core.constants import ELEMENTARY_CHARGE, VACUUM_PERMITTIVITY
from ..models.layout import Cell, Layout
from ..models.schemas import SimConfig

NM = 1.0e-9

# Dot order around the cell; P=+1 fills dots 0 and 2, P=-1 fills 1 and 3.
_DOT_SIGNS = np.array([[1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]])


def dot_charges(polarization: int) -> np.ndarray:
    """Net dot charges: an electron (-e) on the occupied diagonal plus +e/2 background everywhere."""
    occupied = np.array([1.0, 0.0, 1.0, 0.0]) if polarization > 0 else np.array([0.0, 1.0, 0.0, 1.0])
    return ELEMENTARY_CHARGE * (0.5 - occupied)


def _coulomb_energy(offset_nm: np.ndarray, pol_i: int, pol_j: int, config: SimConfig) -> float:
    dots = _DOT_SIGNS * config.dot_offset
    dots_i = dots
    dots_j = dots + offset_nm
    separation = np.linalg.norm(dots_i[:, None, :] - dots_j[None, :, :], axis=2) * NM
    charges = np.outer(dot_charges(pol_i), dot_charges(pol_j))
    # exact summation: the 16 pair terms cancel down to a small remainder
    total = math.fsum((charges / separation).ravel())
    return total / (4.0 * np.pi * VACUUM_PERMITTIVITY * config.epsilon_r)


def kink_energy_offset(dx_nm: float, dy_nm: float, config: SimConfig) -> float:
    """Kink energy (J) of a cell pair separated by (dx, dy)."""
    if dx_nm == 0 and dy_nm == 0:
        raise ValueError("kink energy is undefined for coincident cells")
    offset = np.array([dx_nm, dy_nm], dtype=float)
    return _coulomb_energy(offset, 1, -1, config) - _coulomb_energy(offset, 1, 1, config)


def kink_energy(cell_i: Cell, cell_j: Cell, config: SimConfig) -> float:
    """
    E_k = U(opposite) - U(same) for two cells.

    Positive values favour aligned polarizations (orthogonal neighbours), negative
    values favour anti-alignment (diagonal neighbours).
    """
    return kink_energy_offset(cell_j.x_nm - cell_i.x_nm, cell_j.y_nm - cell_i.y_nm, config)


def response(x):
    """Bistable transfer f(x) = x / sqrt(1 + x^2); works on scalars and arrays."""
    return x / np.sqrt(1.0 + x * x)


@dataclass(frozen=True)
class CouplingTable:
    """
    Padded neighbour lists of a layout.

    Row i holds the indices of every cell within the radius of effect and their kink
    energies; padding entries point at cell i with a zero coefficient.
    """
    neighbor_index: np.ndarray  # (N, K) int
    coefficients: np.ndarray  # (N, K) float, J
    zones: np.ndarray  # (N,) int
    free: np.ndarray  # (N,) bool, cells updated by relaxation

    @property
    def size(self) -> int:
        return len(self.zones)

    @classmethod
    def build(cls, layout: Layout, config: SimConfig) -> "CouplingTable":
        cells = layout.cells
        count = len(cells)
        radius_sq = config.radius_of_effect ** 2
        cache: Dict[Tuple[int, int], float] = {}
        rows = []
        for i, ci in enumerate(cells):
            row = []
            for j, cj in enumerate(cells):
                if i == j:
                    continue
                dx, dy = cj.x_nm - ci.x_nm, cj.y_nm - ci.y_nm
                if dx * dx + dy * dy > radius_sq:
                    continue
                if (dx, dy) not in cache:
                    cache[(dx, dy)] = kink_energy_offset(dx, dy, config)
                row.append((j, cache[(dx, dy)]))
            rows.append(row)

        width = max((len(r) for r in rows), default=0) or 1
        index = np.tile(np.arange(count)[:, None], (1, width))
        coefficients = np.zeros((count, width))
        for i, row in enumerate(rows):
            for k, (j, energy) in enumerate(row):
                index[i, k] = j
                coefficients[i, k] = energy

        return cls(
            neighbor_index=index,
            coefficients=coefficients,
            zones=np.array([c.zone for c in cells], dtype=int),
            free=np.array([not c.is_held for c in cells], dtype=bool),
        )
