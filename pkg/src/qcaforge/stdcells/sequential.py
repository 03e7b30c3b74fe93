"""
Multiplexer, D latch and D flip-flops.

The flip-flops share one latch core: Q' = (D AND En) OR (Q AND NOT En), where the
loop from the output gate back to the hold gate spans one clock cycle. An edge
detector drives En: AND of the clock and the clock delayed by one cycle through
an inverting corner, so En pulses for one cycle after the chosen edge.
"""
import logging

from .circuit import CircuitHandle, metrics, table
from .grid import grid_layout

logger = logging.getLogger(__name__)

# Out = S ? B : A. Both data legs meet the select arms in zone 1 AND gates
# (fixed -1) that feed a zone 2 OR gate (fixed +1).
MUX_ROWS = (
    ".   . . . . . 0<B . . . .     .",
    ".   . . . . . 1   . . . .     .",
    ".   . . . . . 2   . . . .     .",
    ".   . . . . . 3   . . . .     .",
    ".   . . . . . 0   . . . .     .",
    ".   . . . . . 0   . . . .     .",
    "0<S 1 2 3 0 0 1   1 1 . .     .",
    "0   . . . . . 0   . 1 . .     .",
    "0   . . . . . 0-  . 1 . .     .",
    "0   . . . . . 0+  1 2 2 3>Out 0",
    "0   . . . . . 0-  . 1 . .     .",
    ".   1 . . . . 0   . 1 . .     .",
    ".   1 2 3 0 0 1   1 1 . .     .",
    ".   . . . . . 0   . . . .     .",
    ".   . . . . . 0   . . . .     .",
    ".   . . . . . 3   . . . .     .",
    ".   . . . . . 2   . . . .     .",
    ".   . . . . . 1   . . . .     .",
    ".   . . . . . 0<A . . . .     .",
)

MUX_TABLE = """qcaforge-table v1
name mux2to1
inputs A B S
output Out
0 0 0 -> 0
0 0 1 -> 0
0 1 0 -> 0
0 1 1 -> 1
1 0 0 -> 1
1 0 1 -> 0
1 1 0 -> 1
1 1 1 -> 1
"""

# Transparent while Clk = 1, holds while Clk = 0.
LATCH_ROWS = (
    ".  . .     0<D   2 2",
    "0  0- 0    .     . .",
    "0- .  1    2>Out . .",
    ".  .  0    3     . .",
    ".  0<Clk . .     . .",
    ".  3  .    .     . .",
)

LATCH_TABLE = """qcaforge-table v1
name d_latch
inputs D Clk
clock Clk
output Out
0 1 -> 0
1 1 -> 1
0 10 -> hold
1 10 -> hold
x 0 -> hold
"""

# Rising edge: Clk AND NOT Clk(previous cycle); the inverting corner sits next to
# the clock input and the delayed copy runs down the zone 3 column.
POSITIVE_FLIPFLOP_ROWS = (
    ". . 0<Clk 0 0 . . . . . . . . . . .",
    ". . 0 . . 1 . . . . . . . . . .",
    ". . 0 . . 1 . . . . . . . . . .",
    ". . 1 . . 2 . . . . . . . . . .",
    ". . 1 . . 3 . . . . . . . . . .",
    ". . 1 . . 0 . . . . . . . . . .",
    "0- 1 2 1 1 0 . . . 2<D . . . . . .",
    ". . 2 . . . . . . 3 . . . . . .",
    ". . 3 . . . . . . 0 . . . . . .",
    ". . 3 . . . . . . 0 . . . . . .",
    ". . 3 3 3 3 3 0 0 1 1 1 . . . .",
    ". . 3 . . . . . . 0 . 1 . . . .",
    ". . 3 . . . . . . 0- . 1 . . . .",
    ". . 3 . . . . . . 0+ 1 2 2 3 3>Out 0",
    ". . 3 . . . . . . 0- . 1 . 3 . .",
    ". . 3 3 3 . . . . 0 . 1 . 3 . .",
    ". . . . . 0 0 0 0 1 1 1 . 3 . .",
    ". . . . . . . . . 0 . . . 3 . .",
    ". . . . . . . . . 0 0 0 0 0 . .",
)

# Falling edge: NOT Clk AND Clk(previous cycle).
NEGATIVE_FLIPFLOP_ROWS = (
    ". 0<Clk 0 1 2 3 . . . . . . . . . .",
    ". 0 . . . 3 . . . . . . . . . .",
    ". 0 . . . 0 . . . . . . . . . .",
    ". . 1 . . 0 . . . . . . . . . .",
    ". . 1 . . 1 . . . . . . . . . .",
    ". . 1 . . 1 . . . . . . . . . .",
    "0- 1 2 1 1 1 . . . 2<D . . . . . .",
    ". . 2 . . . . . . 3 . . . . . .",
    ". . 3 . . . . . . 0 . . . . . .",
    ". . 3 . . . . . . 0 . . . . . .",
    ". . 3 3 3 3 3 0 0 1 1 1 . . . .",
    ". . 3 . . . . . . 0 . 1 . . . .",
    ". . 3 . . . . . . 0- . 1 . . . .",
    ". . 3 . . . . . . 0+ 1 2 2 3 3>Out 0",
    ". . 3 . . . . . . 0- . 1 . 3 . .",
    ". . 3 3 3 . . . . 0 . 1 . 3 . .",
    ". . . . . 0 0 0 0 1 1 1 . 3 . .",
    ". . . . . . . . . 0 . . . 3 . .",
    ". . . . . . . . . 0 0 0 0 0 . .",
)

POSITIVE_FLIPFLOP_TABLE = """qcaforge-table v1
name d_flipflop_positive
inputs Clk D
clock Clk
output Out
01 0 -> 0
01 1 -> 1
10 x -> hold
0 x -> hold
1 x -> hold
"""

NEGATIVE_FLIPFLOP_TABLE = """qcaforge-table v1
name d_flipflop_negative
inputs Clk D
clock Clk
output Out
10 0 -> 0
10 1 -> 1
01 x -> hold
"""

# Positive-edge flip-flop whose Q meets P and S in a zone 0 majority gate.
SET_RESET_FLIPFLOP_ROWS = (
    ". . 0<Clk 0 0 . . . . . . . . . . . . . . .",
    ". . 0 . . 1 . . . . . . . . . . . . . .",
    ". . 0 . . 1 . . . . . . . . . . . . . .",
    ". . 1 . . 2 . . . . . . . . . . . . . .",
    ". . 1 . . 3 . . . . . . . . . . . . . .",
    ". . 1 . . 0 . . . . . . . . . . . . . .",
    "0- 1 2 1 1 0 . . . 2<D . . . . . . . . . .",
    ". . 2 . . . . . . 3 . . . . . . . . . .",
    ". . 3 . . . . . . 0 . . . . . . 0<P . . .",
    ". . 3 . . . . . . 0 . . . . . . 1 . . .",
    ". . 3 3 3 3 3 0 0 1 1 1 . . . . 2 . . .",
    ". . 3 . . . . . . 0 . 1 . . . . 3 . . .",
    ". . 3 . . . . . . 0- . 1 . . . . 3 . . .",
    ". . 3 . . . . . . 0+ 1 2 2 3 3 3 0 0 1>Out 2",
    ". . 3 . . . . . . 0- . 1 . 3 . . 3 . . .",
    ". . 3 3 3 . . . . 0 . 1 . 3 . . 3 . . .",
    ". . . . . 0 0 0 0 1 1 1 . 3 . . 2 . . .",
    ". . . . . . . . . 0 . . . 3 . . 1 . . .",
    ". . . . . . . . . 0 0 0 0 0 . . 0<S . . .",
)

# Falling-edge variant of the set/reset flip-flop.
NEGATIVE_SET_RESET_FLIPFLOP_ROWS = (
    ". 0<Clk 0 1 2 3",
    ". 0 . . . 3",
    ". 0 . . . 0",
    ". . 1 . . 0",
    ". . 1 . . 1",
    ". . 1 . . 1",
    "0- 1 2 1 1 1 . . . 2<D",
    ". . 2 . . . . . . 3",
    ". . 3 . . . . . . 0 . . . . . . 0<P",
    ". . 3 . . . . . . 0 . . . . . . 1",
    ". . 3 3 3 3 3 0 0 1 1 1 . . . . 2",
    ". . 3 . . . . . . 0 . 1 . . . . 3",
    ". . 3 . . . . . . 0- . 1 . . . . 3",
    ". . 3 . . . . . . 0+ 1 2 2 3 3 3 0 0 1>Out 2",
    ". . 3 . . . . . . 0- . 1 . 3 . . 3",
    ". . 3 3 3 . . . . 0 . 1 . 3 . . 3",
    ". . . . . 0 0 0 0 1 1 1 . 3 . . 2",
    ". . . . . . . . . 0 . . . 3 . . 1",
    ". . . . . . . . . 0 0 0 0 0 . . 0<S",
)

# P S | clock | D -> Out(t+1)
SET_RESET_TABLE = """qcaforge-table v1
name d_flipflop_sr
inputs P S Clk D
clock Clk
output Out
0 0 x x -> 0
1 1 x x -> 1
0 1 01 0 -> 0
1 0 01 1 -> 1
0 1 10 x -> hold
1 0 10 x -> hold
"""

NEGATIVE_SET_RESET_TABLE = """qcaforge-table v1
name d_flipflop_sr_negative
inputs P S Clk D
clock Clk
output Out
0 0 x x -> 0
1 1 x x -> 1
0 1 10 0 -> 0
1 0 10 1 -> 1
0 1 01 x -> hold
1 0 01 x -> hold
"""


def mux2to1() -> CircuitHandle:
    """Out = A when S = 0, B when S = 1."""
    return CircuitHandle(
        name="mux2to1",
        layout=grid_layout("mux2to1", MUX_ROWS, inputs=("A", "B", "S")),
        expected_table=table(MUX_TABLE),
        expected_metrics=metrics(48, 0.089964, 8),
        hold_cycles=3,
        reference_model="mux",
        description="2:1 multiplexer, AND-OR form",
    )


def d_latch() -> CircuitHandle:
    return CircuitHandle(
        name="d_latch",
        layout=grid_layout("d_latch", LATCH_ROWS, inputs=("D", "Clk")),
        expected_table=table(LATCH_TABLE),
        expected_metrics=metrics(13, 0.01, 3),
        hold_cycles=2,
        reference_model="latch",
        description="13-cell D latch, transparent while Clk = 1",
    )


def d_flipflop(edge: str = "positive") -> CircuitHandle:
    if edge == "positive":
        rows, table_text, cells = POSITIVE_FLIPFLOP_ROWS, POSITIVE_FLIPFLOP_TABLE, 75
    elif edge == "negative":
        rows, table_text, cells = NEGATIVE_FLIPFLOP_ROWS, NEGATIVE_FLIPFLOP_TABLE, 77
    else:
        raise ValueError(f"unknown edge '{edge}', expected positive or negative")
    name = f"d_flipflop_{edge}"
    return CircuitHandle(
        name=name,
        layout=grid_layout(name, rows, inputs=("Clk", "D")),
        expected_table=table(table_text),
        expected_metrics=metrics(cells, 0.120204, 6),
        hold_cycles=3,
        reference_model=f"dff_{edge}",
        description=f"{edge}-edge D flip-flop: edge detector driving the latch core",
    )


def d_flipflop_sr(edge: str = "positive") -> CircuitHandle:
    """
    Out = MAJ(P, S, Q): P = S = 0 resets, P = S = 1 sets, otherwise Q passes.

    The positive-edge design is the published one, so its expected metrics are the
    published figures and `compare` reports any gap between them and this layout.
    """
    if edge == "positive":
        name, rows, table_text = "d_flipflop_sr", SET_RESET_FLIPFLOP_ROWS, SET_RESET_TABLE
        expected = metrics(35, 0.03, 8, has_set_reset=True)
    elif edge == "negative":
        name, rows, table_text = "d_flipflop_sr_negative", NEGATIVE_SET_RESET_FLIPFLOP_ROWS, NEGATIVE_SET_RESET_TABLE
        expected = metrics(91, 0.150444, 8, has_set_reset=True)
    else:
        raise ValueError(f"unknown edge '{edge}', expected positive or negative")
    return CircuitHandle(
        name=name,
        layout=grid_layout(name, rows, inputs=("P", "S", "Clk", "D")),
        expected_table=table(table_text),
        expected_metrics=expected,
        hold_cycles=3,
        reference_model="dff_sr" if edge == "positive" else "dff_sr_negative",
        description=f"{edge}-edge D flip-flop with set/reset majority stage",
    )
