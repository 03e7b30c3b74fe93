from typing import List, Optional

from ..core.errors import SimulationError
from ..engine.trace import Trace
from ..models.layout import CellFunction, Layout

DEFAULT_THRESHOLD = 0.5


def decode_value(polarization: float, threshold: float = DEFAULT_THRESHOLD) -> Optional[int]:
    """+P above the threshold reads 1, below -threshold reads 0, anything between is undecodable (None)."""
    if polarization > threshold:
        return 1
    if polarization < -threshold:
        return 0
    return None


def decode_output(trace: Trace, label: str, layout: Optional[Layout] = None,
                  threshold: float = DEFAULT_THRESHOLD) -> List[Optional[int]]:
    """
    One bit per logical vector, read at the last sample of the output zone's hold
    quarter in the last cycle the vector is held.
    """
    layout = layout or trace.layout
    try:
        index = layout.index_of(label)
    except KeyError:
        raise SimulationError(f"'{label}' is not a cell label of '{layout.name}'") from None
    cell = layout.cells[index]
    if cell.function is not CellFunction.OUTPUT:
        raise SimulationError(f"'{label}' is not an output of '{layout.name}'")

    return [
        decode_value(trace.polarizations[trace.decision_sample(v, cell.zone), index], threshold)
        for v in range(trace.vector_count)
    ]
