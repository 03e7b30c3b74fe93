"""Static layout metrics: cell count, bounding-box area and clock-phase latency."""
import logging
from collections import deque
from typing import Dict, List, Optional

from ..core.constants import CELL_SIZE_NM, GRID_PITCH_NM, NUM_CLOCK_ZONES
from ..core.errors import DisconnectedError, LayoutError
from ..models.layout import CellFunction, Layout, validate_layout
from ..models.schemas import MetricsReport, SimConfig

logger = logging.getLogger(__name__)

NM2_PER_UM2 = 1.0e6
SET_RESET_LABELS = ("P", "S")
DATA_INPUT_LABEL = "D"


def cell_count(layout: Layout) -> int:
    """All drawn cells count, fixed and input/output cells included."""
    return len(layout.cells)


def bounding_area(layout: Layout, cell_size: float = CELL_SIZE_NM) -> float:
    """Area in µm² of the axis-aligned box enclosing every cell square."""
    if not layout.cells:
        raise LayoutError("empty layout")
    xs = [c.x_nm for c in layout.cells]
    ys = [c.y_nm for c in layout.cells]
    width = max(xs) - min(xs) + cell_size
    height = max(ys) - min(ys) + cell_size
    return width * height / NM2_PER_UM2


def rounded_area(area_um2: float) -> float:
    return round(area_um2, 2)


def _adjacent(a, b) -> bool:
    return (a.x_nm, a.y_nm) != (b.x_nm, b.y_nm) and \
        abs(a.x_nm - b.x_nm) <= GRID_PITCH_NM and abs(a.y_nm - b.y_nm) <= GRID_PITCH_NM


def clock_phase_latency(layout: Layout, input_label: str, output_label: str) -> int:
    """
    Clock phases a signal crosses from an input cell to an output cell.

    0-1 breadth-first search over 8-neighbour adjacency: a hop within a zone costs
    nothing, a hop to the next zone (mod 4) costs one transition, any other hop is
    illegal. Fixed and input cells never serve as intermediate hops.
    Result = 1 + transitions on the cheapest path.
    """
    try:
        source = layout.index_of(input_label)
        target = layout.index_of(output_label)
    except KeyError as e:
        raise LayoutError(f"unknown label {e.args[0]!r}") from None

    cells = layout.cells
    best: List[Optional[int]] = [None] * len(cells)
    best[source] = 0
    queue = deque([source])
    while queue:
        current = queue.popleft()
        here = cells[current]
        for index, cell in enumerate(cells):
            if index == source or cell.function in (CellFunction.FIXED, CellFunction.INPUT):
                continue
            if not _adjacent(here, cell):
                continue
            step = (cell.zone - here.zone) % NUM_CLOCK_ZONES
            if step > 1:
                continue
            cost = best[current] + step
            if best[index] is None or cost < best[index]:
                best[index] = cost
                if step == 0:
                    queue.appendleft(index)
                else:
                    queue.append(index)

    if best[target] is None:
        raise DisconnectedError(f"disconnected: no path from '{input_label}' to '{output_label}'")
    return 1 + best[target]


def latency_table(layout: Layout) -> Dict[str, Optional[int]]:
    """Latency of every input->output pair, None where no path exists."""
    table: Dict[str, Optional[int]] = {}
    for output_label in layout.outputs:
        for input_label in layout.inputs:
            try:
                table[f"{input_label}->{output_label}"] = clock_phase_latency(layout, input_label, output_label)
            except DisconnectedError:
                logger.debug(f"{layout.name}: {input_label} does not reach {output_label}")
                table[f"{input_label}->{output_label}"] = None
    return table


def compute_metrics(layout: Layout, config: Optional[SimConfig] = None) -> MetricsReport:
    """Table columns of a valid layout; cell squares take their size from `config`."""
    result = validate_layout(layout)
    if not result.valid:
        raise LayoutError(f"layout '{layout.name}' is invalid", result.violations)

    latencies = latency_table(layout)
    connected = {pair: phases for pair, phases in latencies.items() if phases is not None}
    data_paths = [phases for pair, phases in connected.items() if pair.split("->")[0] == DATA_INPUT_LABEL]
    if data_paths:
        clock_phases = max(data_paths)
    else:
        clock_phases = max(connected.values()) if connected else None

    area = bounding_area(layout, config.cell_size if config else CELL_SIZE_NM)
    return MetricsReport(
        cell_count=cell_count(layout),
        area_um2=area,
        area_um2_rounded=rounded_area(area),
        clock_phases=clock_phases,
        has_set_reset=all(label in layout.inputs for label in SET_RESET_LABELS),
        latencies=latencies,
    )
