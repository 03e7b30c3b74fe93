"""Reader and writer for the `qcaforge-layout v1` text format."""
import logging
from pathlib import Path
from typing import List, Union

from ..core.constants import LAYOUT_HEADER
from ..core.errors import LayoutParseError
from ..models.layout import Cell, CellFunction, Layout

logger = logging.getLogger(__name__)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_int(token: str, what: str, source: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise LayoutParseError(f"{what} must be a decimal integer, got '{token}'", source, line_no) from None


def _parse_function(token: str, x: int, y: int, zone: int, source: str, line_no: int) -> Cell:
    kind, _, argument = token.partition(":")
    if kind == "normal" and not argument:
        return Cell.normal(x, y, zone)
    if kind == "fixed":
        if argument not in ("+1", "-1"):
            raise LayoutParseError(f"fixed cells take +1 or -1, got '{argument}'", source, line_no)
        return Cell.fixed(x, y, zone, int(argument))
    if kind in ("input", "output"):
        if not argument:
            raise LayoutParseError(f"{kind} cell needs a label", source, line_no)
        factory = Cell.input if kind == "input" else Cell.output
        return factory(x, y, zone, argument)
    raise LayoutParseError(f"unknown cell function '{token}'", source, line_no)


def parse_layout(text: str, source: str = "<text>") -> Layout:
    """Parse layout text; every error names the offending line."""
    name = None
    cells: List[Cell] = []
    seen_header = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if not seen_header:
            if line != LAYOUT_HEADER:
                raise LayoutParseError(f"expected header '{LAYOUT_HEADER}'", source, line_no)
            seen_header = True
            continue

        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "name":
            if not rest:
                raise LayoutParseError("name must not be empty", source, line_no)
            name = rest
        elif keyword == "cell":
            tokens = rest.split()
            if len(tokens) != 4:
                raise LayoutParseError("cell takes <x_nm> <y_nm> <zone> <function>", source, line_no)
            x = _parse_int(tokens[0], "x_nm", source, line_no)
            y = _parse_int(tokens[1], "y_nm", source, line_no)
            zone = _parse_int(tokens[2], "zone", source, line_no)
            if not 0 <= zone <= 3:
                raise LayoutParseError(f"zone must be 0-3, got {zone}", source, line_no)
            cells.append(_parse_function(tokens[3], x, y, zone, source, line_no))
        else:
            raise LayoutParseError(f"unknown keyword '{keyword}'", source, line_no)

    if not seen_header:
        raise LayoutParseError(f"empty file, expected header '{LAYOUT_HEADER}'", source, 1)
    if name is None:
        name = Path(source).stem if source != "<text>" else "unnamed"
    return Layout.from_cells(name, cells)


def _function_token(cell: Cell) -> str:
    if cell.function is CellFunction.FIXED:
        return f"fixed:{cell.fixed_polarization:+d}"
    if cell.function in (CellFunction.INPUT, CellFunction.OUTPUT):
        return f"{cell.function.value}:{cell.label}"
    return "normal"


def format_layout(layout: Layout) -> str:
    lines = [LAYOUT_HEADER, f"name {layout.name}"]
    lines.extend(
        f"cell {c.x_nm} {c.y_nm} {c.zone} {_function_token(c)}" for c in layout.cells
    )
    return "\n".join(lines) + "\n"


def load_layout(path: Union[str, Path]) -> Layout:
    path = Path(path)
    with open(path, "r") as f:
        text = f.read()
    layout = parse_layout(text, str(path))
    logger.debug(f"Loaded layout '{layout.name}' with {len(layout)} cells from {path}")
    return layout


def save_layout(layout: Layout, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(format_layout(layout))
