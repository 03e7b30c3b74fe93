"""Comparison tables against published designs and the live-metric check of the bundled layouts."""
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import yaml
from pydantic import BaseModel

from ..core.errors import LayoutError
from ..geometry.metrics import compute_metrics
from ..models.schemas import MetricsReport, SimConfig
from ..stdcells.circuit import CircuitHandle

logger = logging.getLogger(__name__)

REFERENCE_METRICS_PATH = Path(__file__).with_name("reference_metrics.yaml")


class ReferenceRow(BaseModel):
    design: str
    area_um2: float
    cell_count: int
    clock_phases: int
    has_set_reset: Optional[bool] = None


class ReferenceFamily(BaseModel):
    title: str
    circuit: str
    proposed: ReferenceRow
    references: List[ReferenceRow]

    @property
    def best_reference(self) -> ReferenceRow:
        """The earlier design with the fewest cells."""
        return min(self.references, key=lambda row: row.cell_count)


def load_references(path: Union[str, Path] = REFERENCE_METRICS_PATH) -> Dict[str, ReferenceFamily]:
    with open(path, "r") as f:
        raw = yaml.safe_load(f)
    return {key: ReferenceFamily(**value) for key, value in raw.items()}


def improvement_percent(reference: float, proposed: float) -> int:
    """round(100 * (reference - proposed) / reference), halves rounded up."""
    return int(math.floor(100.0 * (reference - proposed) / reference + 0.5))


@dataclass
class ComparisonTable:
    title: str
    rows: List[ReferenceRow]
    proposed: ReferenceRow
    best_reference: ReferenceRow
    cell_improvement: int
    area_improvement: int


@dataclass
class ComparisonReport:
    tables: List[ComparisonTable] = field(default_factory=list)
    live_metrics: Dict[str, MetricsReport] = field(default_factory=dict)
    deviations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.deviations


def _bundled_row(name: str, live: MetricsReport) -> ReferenceRow:
    return ReferenceRow(
        design=f"Bundled {name} layout",
        area_um2=live.area_um2_rounded,
        cell_count=live.cell_count,
        clock_phases=live.clock_phases or 0,
        has_set_reset=live.has_set_reset,
    )


def comparison_report(circuits: Sequence[CircuitHandle],
                      references: Optional[Dict[str, ReferenceFamily]] = None,
                      config: Optional[SimConfig] = None) -> ComparisonReport:
    """
    Live metrics of every circuit, checked against its expected baseline (the published
    row for the latch and the set/reset flip-flop), plus one table per reference family.

    Improvements use the published counts of the proposed design against the
    earlier design with the fewest cells.
    """
    references = references if references is not None else load_references()
    report = ComparisonReport()

    for circuit in circuits:
        try:
            live = compute_metrics(circuit.layout, config)
        except LayoutError as e:
            report.deviations.append(f"{circuit.name}: {e}")
            continue
        report.live_metrics[circuit.name] = live
        if circuit.expected_metrics is None:
            continue
        for column, found, expected in live.differences(circuit.expected_metrics):
            report.deviations.append(f"{circuit.name}: {column} is {found}, expected {expected}")

    for family in references.values():
        best = family.best_reference
        rows = list(family.references) + [family.proposed]
        live = report.live_metrics.get(family.circuit)
        if live is not None:
            rows.append(_bundled_row(family.circuit, live))
        report.tables.append(ComparisonTable(
            title=family.title,
            rows=rows,
            proposed=family.proposed,
            best_reference=best,
            cell_improvement=improvement_percent(best.cell_count, family.proposed.cell_count),
            area_improvement=improvement_percent(best.area_um2, family.proposed.area_um2),
        ))

    for line in report.deviations:
        logger.warning(f"Metric deviation: {line}")
    return report
