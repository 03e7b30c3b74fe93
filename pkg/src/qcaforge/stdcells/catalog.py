"""Every bundled circuit, by name."""
import logging
from dataclasses import replace
from pathlib import Path
from typing import Callable, Dict, List, Union

from ..core.constants import LAYOUT_SUFFIX, TABLE_SUFFIX
from ..persistence.layout_file import save_layout
from ..verify.truth_table import save_table
from .circuit import CircuitHandle, metrics
from .primitives import and_gate, inverter, majority_gate, or_gate, wire
from .sequential import d_flipflop, d_flipflop_sr, d_latch, mux2to1

logger = logging.getLogger(__name__)

FOUR_ZONE_WIRE_PLAN = (0, 0, 1, 1, 2, 2, 3, 3)


def _four_zone_wire() -> CircuitHandle:
    return replace(wire(len(FOUR_ZONE_WIRE_PLAN), FOUR_ZONE_WIRE_PLAN),
                   expected_metrics=metrics(8, 0.002844, 4))


_GENERATORS: Dict[str, Callable[[], CircuitHandle]] = {
    "majority_gate": majority_gate,
    "and_gate": and_gate,
    "or_gate": or_gate,
    "inverter_corner": lambda: inverter("corner"),
    "inverter_symmetric": lambda: inverter("symmetric"),
    "wire_8": _four_zone_wire,
    "mux2to1": mux2to1,
    "d_latch": d_latch,
    "d_flipflop_positive": lambda: d_flipflop("positive"),
    "d_flipflop_negative": lambda: d_flipflop("negative"),
    "d_flipflop_sr": d_flipflop_sr,
    "d_flipflop_sr_negative": lambda: d_flipflop_sr("negative"),
}


def circuit_names() -> List[str]:
    return list(_GENERATORS)


def get_circuit(name: str) -> CircuitHandle:
    try:
        return _GENERATORS[name]()
    except KeyError:
        raise KeyError(f"no bundled circuit named '{name}'") from None


def bundled_circuits() -> List[CircuitHandle]:
    return [factory() for factory in _GENERATORS.values()]


def export_circuits(directory: Union[str, Path]) -> List[Path]:
    """Write every bundled layout and truth table into `directory`."""
    directory = Path(directory)
    written = []
    for circuit in bundled_circuits():
        layout_path = directory / f"{circuit.name}{LAYOUT_SUFFIX}"
        save_layout(circuit.layout, layout_path)
        written.append(layout_path)
        if circuit.expected_table is not None:
            table_path = directory / f"{circuit.name}{TABLE_SUFFIX}"
            save_table(circuit.expected_table, table_path)
            written.append(table_path)
    logger.info(f"Exported {len(written)} files to {directory}")
    return written
