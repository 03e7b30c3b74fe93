"""Primitive devices: majority gate, AND/OR, inverters and wires."""
import logging
from typing import Optional, Sequence

from ..core.constants import GRID_PITCH_NM, NUM_CLOCK_ZONES
from ..core.errors import ZoneOrderError
from ..models.layout import Cell, Layout
from .circuit import CircuitHandle, metrics, table
from .grid import grid_layout

logger = logging.getLogger(__name__)

MAJORITY_ROWS = (
    ".   0<B .",
    "0<A 0   0>Out",
    ".   0<C .",
)

MAJORITY_TABLE = """qcaforge-table v1
name majority
inputs A B C
output Out
0 0 0 -> 0
0 0 1 -> 0
0 1 0 -> 0
0 1 1 -> 1
1 0 0 -> 0
1 0 1 -> 1
1 1 0 -> 1
1 1 1 -> 1
"""


def majority_gate() -> CircuitHandle:
    """Plus-shaped 5-cell gate: inputs west (A), north (B), south (C), output east."""
    layout = grid_layout("majority_gate", MAJORITY_ROWS, inputs=("A", "B", "C"))
    return CircuitHandle(
        name="majority_gate",
        layout=layout,
        expected_table=table(MAJORITY_TABLE),
        expected_metrics=metrics(5, 0.003364, 1),
        reference_model="majority",
        description="5-cell majority gate",
    )


def _two_input_gate(name: str, fixed: str, rows_text: str, model: str) -> CircuitHandle:
    rows = (
        ".   0<B .",
        "0<A 0   0>Out",
        f".   0{fixed} .",
    )
    return CircuitHandle(
        name=name,
        layout=grid_layout(name, rows, inputs=("A", "B")),
        expected_table=table(f"qcaforge-table v1\nname {name}\ninputs A B\noutput Out\n{rows_text}"),
        expected_metrics=metrics(5, 0.003364, 1),
        reference_model=model,
        description=f"majority gate with its south input fixed at {fixed}1",
    )


def and_gate() -> CircuitHandle:
    return _two_input_gate("and_gate", "-", "0 0 -> 0\n0 1 -> 0\n1 0 -> 0\n1 1 -> 1\n", "and")


def or_gate() -> CircuitHandle:
    return _two_input_gate("or_gate", "+", "0 0 -> 0\n0 1 -> 1\n1 0 -> 1\n1 1 -> 1\n", "or")


NOT_TABLE = "qcaforge-table v1\nname not\ninputs In\noutput Out\n0 -> 1\n1 -> 0\n"

# The output sits on the diagonal of the input wire's end; the trailing cell is a sink.
CORNER_INVERTER_ROWS = (
    "0<In 0 0 . . .     .",
    ".    . . 1 1 2>Out 3",
)

# Fork into two branches that meet the output column from both diagonals.
SYMMETRIC_INVERTER_ROWS = (
    ".    0 0 . . .     .",
    "0<In 0 . 1 1 1>Out 2",
    ".    0 0 . . .     .",
)


def inverter(style: str = "corner") -> CircuitHandle:
    if style == "corner":
        rows, expected = CORNER_INVERTER_ROWS, metrics(7, 0.005244, 3)
    elif style == "symmetric":
        rows, expected = SYMMETRIC_INVERTER_ROWS, metrics(10, 0.008004, 2)
    else:
        raise ValueError(f"unknown inverter style '{style}', expected corner or symmetric")
    name = f"inverter_{style}"
    return CircuitHandle(
        name=name,
        layout=grid_layout(name, rows),
        expected_table=table(NOT_TABLE.replace("name not", f"name {name}")),
        expected_metrics=expected,
        reference_model="not",
        description=f"{style} inverter",
    )


def check_zone_plan(zone_plan: Sequence[int]) -> None:
    """Consecutive zones must stay equal or advance by one (mod 4)."""
    for zone in zone_plan:
        if not 0 <= zone < NUM_CLOCK_ZONES:
            raise ZoneOrderError(f"invalid zone ordering: zone {zone} outside 0-3")
    for position in range(1, len(zone_plan)):
        step = (zone_plan[position] - zone_plan[position - 1]) % NUM_CLOCK_ZONES
        if step > 1:
            raise ZoneOrderError(
                f"invalid zone ordering: zone {zone_plan[position - 1]} -> {zone_plan[position]} "
                f"at cell {position} skips a phase"
            )


def wire(n: int, zone_plan: Optional[Sequence[int]] = None) -> CircuitHandle:
    """
    Horizontal n-cell wire; the first cell is the input In, the last the output Out.

    When Out is alone in its clock zone a sink cell of the same zone follows it, so
    the output has a partner to hold against.
    """
    if n < 2:
        raise ValueError("a wire needs at least 2 cells")
    zone_plan = list(zone_plan) if zone_plan is not None else [0] * n
    if len(zone_plan) != n:
        raise ValueError(f"zone plan has {len(zone_plan)} entries for {n} cells")
    check_zone_plan(zone_plan)

    cells = [Cell.input(0, 0, zone_plan[0], "In")]
    cells += [Cell.normal(i * GRID_PITCH_NM, 0, zone_plan[i]) for i in range(1, n - 1)]
    cells.append(Cell.output((n - 1) * GRID_PITCH_NM, 0, zone_plan[-1], "Out"))
    if zone_plan[-2] != zone_plan[-1]:
        cells.append(Cell.normal(n * GRID_PITCH_NM, 0, zone_plan[-1]))
    name = f"wire_{n}"
    return CircuitHandle(
        name=name,
        layout=Layout.from_cells(name, cells),
        expected_table=table(f"qcaforge-table v1\nname {name}\ninputs In\noutput Out\n0 -> 0\n1 -> 1\n"),
        reference_model="identity",
        description=f"{n}-cell wire over zones {''.join(str(z) for z in zone_plan)}",
    )
