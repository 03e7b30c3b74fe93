"""Truth tables, their text format and their expansion into concrete stimuli."""
import itertools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..core.constants import TABLE_HEADER
from ..core.errors import TableParseError, TruthTableError

logger = logging.getLogger(__name__)

HOLD = "hold"
DONT_CARE = "x"
RISING = "01"
FALLING = "10"

Expected = Union[int, str]
Vector = Dict[str, int]

_INPUT_VALUES = ("0", "1", DONT_CARE)
_CLOCK_VALUES = _INPUT_VALUES + (RISING, FALLING)
_CLOCK_WORDS = {RISING: "0 to 1", FALLING: "1 to 0", DONT_CARE: "x", "0": "0", "1": "1"}


@dataclass(frozen=True)
class TableRow:
    values: Tuple[str, ...]
    expected: Expected

    def render(self) -> str:
        return " ".join(self.values) + f" -> {self.expected}"


@dataclass(frozen=True)
class TruthTable:
    """
    Input assignments and the expected output value.

    The clock column, when present, is one of the inputs and may hold a transition
    ("01" rising, "10" falling). "hold" rows expect the output decoded just before
    the row's last vector.
    """
    name: str
    input_labels: Tuple[str, ...]
    output_label: str
    rows: Tuple[TableRow, ...]
    clock_label: Optional[str] = None

    def __post_init__(self):
        if self.clock_label is not None and self.clock_label not in self.input_labels:
            raise TruthTableError(f"clock '{self.clock_label}' is not one of the inputs")
        for number, row in enumerate(self.rows, start=1):
            self._check_row(number, row)

    def _check_row(self, number: int, row: TableRow):
        if len(row.values) != len(self.input_labels):
            raise TruthTableError(
                f"row {number}: {len(row.values)} values for {len(self.input_labels)} inputs"
            )
        for label, value in zip(self.input_labels, row.values):
            allowed = _CLOCK_VALUES if label == self.clock_label else _INPUT_VALUES
            if value not in allowed:
                raise TruthTableError(f"row {number}: '{value}' is not a valid value for '{label}'")
        if row.expected == HOLD and self.clock_label is None:
            raise TruthTableError(f"row {number}: 'hold' needs a clock column")
        if row.expected not in (0, 1, HOLD):
            raise TruthTableError(f"row {number}: expected output must be 0, 1 or hold")

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.input_labels + (self.output_label,)

    def clock_condition(self, row: TableRow) -> str:
        if self.clock_label is None:
            return ""
        return _CLOCK_WORDS[row.values[self.input_labels.index(self.clock_label)]]


@dataclass(frozen=True)
class Stimulus:
    """One concrete check: vectors to apply in order and the output expected at the last."""
    row_index: int
    vectors: Tuple[Tuple[Tuple[str, int], ...], ...]
    expected: Expected

    @property
    def vector_dicts(self) -> List[Vector]:
        return [dict(v) for v in self.vectors]

    def describe(self) -> str:
        parts = []
        for vector in self.vectors:
            parts.append(" ".join(f"{label}={bit}" for label, bit in vector))
        return " then ".join(parts)


def expand_rows(table: TruthTable) -> List[Stimulus]:
    """
    Concrete stimuli for every row, in row order.

    Each 'x' becomes 0 then 1 (leftmost column varying slowest); a clock transition
    becomes a pair of vectors with the clock value changing between them.
    """
    stimuli: List[Stimulus] = []
    for row_index, row in enumerate(table.rows):
        free = [i for i, value in enumerate(row.values) if value == DONT_CARE]
        for bits in itertools.product((0, 1), repeat=len(free)):
            values = list(row.values)
            for position, bit in zip(free, bits):
                values[position] = str(bit)
            vectors = _vectors_for(table, values)
            stimuli.append(Stimulus(row_index, vectors, row.expected))
    return stimuli


def _vectors_for(table: TruthTable, values: Sequence[str]):
    transition = None
    if table.clock_label is not None:
        clock_value = values[table.input_labels.index(table.clock_label)]
        if clock_value in (RISING, FALLING):
            transition = clock_value

    def build(clock_bit: Optional[str]):
        vector = []
        for label, value in zip(table.input_labels, values):
            if label == table.clock_label and clock_bit is not None:
                value = clock_bit
            vector.append((label, int(value)))
        return tuple(vector)

    if transition is None:
        return (build(None),)
    return (build(transition[0]), build(transition[1]))


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_table(text: str, source: str = "<text>") -> TruthTable:
    inputs: Optional[Tuple[str, ...]] = None
    output: Optional[str] = None
    clock: Optional[str] = None
    name: Optional[str] = None
    rows: List[TableRow] = []
    seen_header = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if not seen_header:
            if line != TABLE_HEADER:
                raise TableParseError(f"expected header '{TABLE_HEADER}'", source, line_no)
            seen_header = True
            continue

        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "name":
            name = rest
        elif keyword == "inputs":
            inputs = tuple(rest.split())
            if not inputs:
                raise TableParseError("inputs needs at least one label", source, line_no)
        elif keyword == "clock":
            clock = rest
        elif keyword == "output":
            if len(rest.split()) != 1:
                raise TableParseError("output takes exactly one label", source, line_no)
            output = rest
        elif "->" in line:
            if inputs is None or output is None:
                raise TableParseError("rows must follow the inputs and output lines", source, line_no)
            left, _, right = line.partition("->")
            expected_token = right.strip()
            if expected_token in ("0", "1"):
                expected: Expected = int(expected_token)
            elif expected_token == HOLD:
                expected = HOLD
            else:
                raise TableParseError(f"expected 0, 1 or hold, got '{expected_token}'", source, line_no)
            values = tuple(left.split())
            if len(values) != len(inputs):
                raise TableParseError(
                    f"row has {len(values)} values for {len(inputs)} inputs", source, line_no
                )
            rows.append(TableRow(values, expected))
        else:
            raise TableParseError(f"unknown keyword '{keyword}'", source, line_no)

    if not seen_header:
        raise TableParseError(f"empty file, expected header '{TABLE_HEADER}'", source, 1)
    if inputs is None or output is None:
        raise TableParseError("table needs inputs and output lines", source)
    if name is None:
        name = Path(source).stem if source != "<text>" else "table"
    try:
        return TruthTable(name, inputs, output, tuple(rows), clock)
    except TruthTableError as e:
        raise TableParseError(str(e), source) from None


def format_table(table: TruthTable) -> str:
    lines = [TABLE_HEADER, f"name {table.name}", "inputs " + " ".join(table.input_labels)]
    if table.clock_label is not None:
        lines.append(f"clock {table.clock_label}")
    lines.append(f"output {table.output_label}")
    lines.extend(row.render() for row in table.rows)
    return "\n".join(lines) + "\n"


def load_table(path: Union[str, Path]) -> TruthTable:
    path = Path(path)
    with open(path, "r") as f:
        return parse_table(f.read(), str(path))


def save_table(table: TruthTable, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(format_table(table))
