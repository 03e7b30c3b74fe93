from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from ..core.constants import GRID_PITCH_NM, NUM_CLOCK_ZONES


class CellFunction(str, Enum):
    NORMAL = "normal"
    INPUT = "input"
    OUTPUT = "output"
    FIXED = "fixed"


@dataclass(frozen=True)
class Cell:
    """
    One QCA cell on the grid.

    Positions are integer nanometres of the cell centre. Live polarization is
    engine state; `polarization` here is the value a simulation starts from.
    """
    x_nm: int
    y_nm: int
    zone: int
    function: CellFunction = CellFunction.NORMAL
    label: Optional[str] = None
    fixed_polarization: Optional[int] = None

    @classmethod
    def normal(cls, x_nm: int, y_nm: int, zone: int) -> "Cell":
        return cls(x_nm, y_nm, zone)

    @classmethod
    def input(cls, x_nm: int, y_nm: int, zone: int, label: str) -> "Cell":
        return cls(x_nm, y_nm, zone, CellFunction.INPUT, label)

    @classmethod
    def output(cls, x_nm: int, y_nm: int, zone: int, label: str) -> "Cell":
        return cls(x_nm, y_nm, zone, CellFunction.OUTPUT, label)

    @classmethod
    def fixed(cls, x_nm: int, y_nm: int, zone: int, polarization: int) -> "Cell":
        return cls(x_nm, y_nm, zone, CellFunction.FIXED, None, polarization)

    @property
    def position(self) -> Tuple[int, int]:
        return (self.x_nm, self.y_nm)

    @property
    def polarization(self) -> float:
        if self.function is CellFunction.FIXED:
            return float(self.fixed_polarization)
        return 0.0

    @property
    def is_held(self) -> bool:
        """Input and fixed cells are never updated by relaxation."""
        return self.function in (CellFunction.INPUT, CellFunction.FIXED)

    def moved(self, x_nm: int, y_nm: int) -> "Cell":
        return replace(self, x_nm=x_nm, y_nm=y_nm)


@dataclass(frozen=True)
class Layout:
    name: str
    cells: Tuple[Cell, ...]
    inputs: Tuple[str, ...] = ()
    outputs: Tuple[str, ...] = ()

    @classmethod
    def from_cells(cls, name: str, cells: Iterable[Cell]) -> "Layout":
        """Build a layout whose terminal lists follow the order cells are given in."""
        cells = tuple(cells)
        inputs = tuple(c.label for c in cells if c.function is CellFunction.INPUT)
        outputs = tuple(c.label for c in cells if c.function is CellFunction.OUTPUT)
        return cls(name, cells, inputs, outputs)

    def __len__(self) -> int:
        return len(self.cells)

    def cell_for(self, label: str) -> Cell:
        return self.cells[self.index_of(label)]

    def index_of(self, label: str) -> int:
        for index, cell in enumerate(self.cells):
            if cell.label == label:
                return index
        raise KeyError(label)

    def column_names(self) -> List[str]:
        """Per-cell names used by traces: the label, or cell<index>."""
        return [c.label if c.label else f"cell{i}" for i, c in enumerate(self.cells)]

    def _rebuilt(self, cells: Iterable[Cell]) -> "Layout":
        return Layout(self.name, tuple(cells), self.inputs, self.outputs)

    def translated(self, dx_nm: int, dy_nm: int) -> "Layout":
        return self._rebuilt(c.moved(c.x_nm + dx_nm, c.y_nm + dy_nm) for c in self.cells)

    def mirrored(self) -> "Layout":
        """Reflection across the x-axis."""
        return self._rebuilt(c.moved(c.x_nm, -c.y_nm) for c in self.cells)

    def rotated(self) -> "Layout":
        """Quarter turn about the origin."""
        return self._rebuilt(c.moved(-c.y_nm, c.x_nm) for c in self.cells)

    def without_cell(self, index: int) -> "Layout":
        removed = self.cells[index]
        cells = self.cells[:index] + self.cells[index + 1:]
        inputs = tuple(label for label in self.inputs if label != removed.label)
        outputs = tuple(label for label in self.outputs if label != removed.label)
        return Layout(self.name, cells, inputs, outputs)


@dataclass
class ValidationResult:
    violations: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def validate_layout(layout: Layout) -> ValidationResult:
    """Check every layout invariant and collect all violations; never raises."""
    result = ValidationResult()
    problems = result.violations

    positions = Counter(c.position for c in layout.cells)
    for (x, y), count in sorted(positions.items()):
        if count > 1:
            problems.append(f"duplicate position ({x}, {y}) used by {count} cells")

    for index, cell in enumerate(layout.cells):
        where = f"cell {index} at ({cell.x_nm}, {cell.y_nm})"
        if cell.x_nm % GRID_PITCH_NM or cell.y_nm % GRID_PITCH_NM:
            problems.append(f"off-grid {where}: centres must be multiples of {GRID_PITCH_NM} nm")
        if not 0 <= cell.zone < NUM_CLOCK_ZONES:
            problems.append(f"{where} has clock zone {cell.zone} outside 0-3")
        if cell.function is CellFunction.FIXED:
            if cell.fixed_polarization not in (-1, 1):
                problems.append(f"{where} is fixed with polarization {cell.fixed_polarization}, expected +1 or -1")
        elif cell.function in (CellFunction.INPUT, CellFunction.OUTPUT):
            if not cell.label:
                problems.append(f"{where} is an {cell.function.value} without a label")
        elif cell.label:
            problems.append(f"{where} is a normal cell carrying label '{cell.label}'")

    labels = Counter(c.label for c in layout.cells if c.label)
    for label, count in sorted(labels.items()):
        if count > 1:
            problems.append(f"label '{label}' used by {count} cells")

    by_label: Dict[str, CellFunction] = {c.label: c.function for c in layout.cells if c.label}
    for kind, declared in ((CellFunction.INPUT, layout.inputs), (CellFunction.OUTPUT, layout.outputs)):
        for label in declared:
            if by_label.get(label) is not kind:
                problems.append(f"dangling {kind.value} label '{label}' has no {kind.value} cell")
        for label, function in by_label.items():
            if function is kind and label not in declared:
                problems.append(f"{kind.value} cell '{label}' is not listed in the layout {kind.value}s")

    if not any(c.function is CellFunction.OUTPUT for c in layout.cells):
        problems.append("missing output: layout has no output cell")

    return result


