from dataclasses import dataclass
from typing import Optional

from ..core.errors import LayoutError, TruthTableError
from ..models.layout import Layout, validate_layout
from ..models.schemas import MetricsReport
from ..verify.truth_table import TruthTable, parse_table


@dataclass(frozen=True)
class CircuitHandle:
    """
    A generated layout with what is known about it.

    expected_metrics is the baseline `compare` holds the stored layout to: the published
    figures for designs that have them, otherwise the figures of this layout.
    """
    name: str
    layout: Layout
    expected_table: Optional[TruthTable] = None
    expected_metrics: Optional[MetricsReport] = None
    hold_cycles: int = 2
    reference_model: Optional[str] = None
    description: str = ""

    def __post_init__(self):
        result = validate_layout(self.layout)
        if not result.valid:
            raise LayoutError(f"circuit '{self.name}' has an invalid layout", result.violations)
        if self.expected_table is not None:
            known = set(self.layout.inputs) | set(self.layout.outputs)
            missing = [label for label in self.expected_table.labels if label not in known]
            if missing:
                raise TruthTableError(f"circuit '{self.name}': table labels {missing} are not in the layout")


def table(text: str) -> TruthTable:
    return parse_table(text, "<bundled>")


def metrics(cell_count: int, area_um2: float, clock_phases: int, has_set_reset: bool = False) -> MetricsReport:
    return MetricsReport(
        cell_count=cell_count,
        area_um2=area_um2,
        area_um2_rounded=round(area_um2, 2),
        clock_phases=clock_phases,
        has_set_reset=has_set_reset,
    )
