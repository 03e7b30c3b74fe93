"""Compact text grids for hand-placed layouts."""
from typing import Iterable, Optional, Sequence

from ..core.constants import GRID_PITCH_NM
from ..models.layout import Cell, Layout

EMPTY = "."


def parse_token(token: str, x_nm: int, y_nm: int) -> Cell:
    """
    One grid token: a zone digit, optionally followed by `+`/`-` (fixed cell),
    `<label` (input) or `>label` (output).
    """
    zone = int(token[0])
    rest = token[1:]
    if not rest:
        return Cell.normal(x_nm, y_nm, zone)
    if rest in ("+", "-"):
        return Cell.fixed(x_nm, y_nm, zone, 1 if rest == "+" else -1)
    if rest[0] == "<":
        return Cell.input(x_nm, y_nm, zone, rest[1:])
    if rest[0] == ">":
        return Cell.output(x_nm, y_nm, zone, rest[1:])
    raise ValueError(f"bad grid token '{token}'")


def grid_cells(rows: Iterable[str]) -> Iterable[Cell]:
    for y, row in enumerate(rows):
        for x, token in enumerate(row.split()):
            if token != EMPTY:
                yield parse_token(token, x * GRID_PITCH_NM, y * GRID_PITCH_NM)


def grid_layout(name: str, rows: Sequence[str], inputs: Optional[Sequence[str]] = None) -> Layout:
    """Build a layout from grid rows; `inputs` fixes the terminal order when given."""
    layout = Layout.from_cells(name, grid_cells(rows))
    if inputs is not None:
        if sorted(inputs) != sorted(layout.inputs):
            raise ValueError(f"{name}: input order {list(inputs)} does not match cells {list(layout.inputs)}")
        layout = Layout(layout.name, layout.cells, tuple(inputs), layout.outputs)
    return layout
