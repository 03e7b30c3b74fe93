"""Plain-text and CSV renderings of metrics, verification and comparison reports."""
from typing import List

import pandas as pd

from ..models.schemas import MetricsReport
from ..verify.checker import VerificationReport
from ..verify.comparison import ComparisonReport, ComparisonTable

FLOAT_FORMAT = "%.6g"


def _yes_no(flag) -> str:
    if flag is None:
        return "-"
    return "yes" if flag else "no"


def _csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


# ─── Metrics ──────────────────────────────────────────────────────────────────

def metrics_text(name: str, report: MetricsReport) -> str:
    phases = report.clock_phases if report.clock_phases is not None else "n/a"
    headline = f"cells: {report.cell_count}, area: {report.area_um2_rounded:.2f} µm², phases: {phases}"
    if report.has_set_reset:
        headline += ", S/R: yes"
    lines = [f"layout: {name}", headline, f"raw area: {report.area_um2:.6f} µm²"]
    for pair, latency in report.latencies.items():
        lines.append(f"latency {pair}: {latency if latency is not None else 'disconnected'}")
    return "\n".join(lines) + "\n"


def metrics_csv(name: str, report: MetricsReport) -> str:
    frame = pd.DataFrame([{
        "layout": name,
        "cell_count": report.cell_count,
        "area_um2": report.area_um2,
        "area_um2_rounded": report.area_um2_rounded,
        "clock_phases": report.clock_phases,
        "has_set_reset": report.has_set_reset,
        **{f"latency {pair}": latency for pair, latency in report.latencies.items()},
    }])
    return _csv(frame)


# ─── Verification ─────────────────────────────────────────────────────────────

def verification_frame(report: VerificationReport) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "check": o.index,
                "row": o.row_index,
                "stimulus": o.stimulus,
                "expected": o.expected,
                "observed": "-" if o.observed is None else o.observed,
                "result": o.status.value,
            }
            for o in report.outcomes
        ],
        columns=["check", "row", "stimulus", "expected", "observed", "result"],
    )


def verification_text(report: VerificationReport) -> str:
    latency = f"{report.latency_phases} phases" if report.latency_phases is not None else "n/a"
    lines = [
        f"circuit: {report.circuit}  checks: {report.source}",
        f"hold cycles: {report.hold_cycles}, latency: {latency}, alignment shift: {report.alignment_shift} vectors",
        f"non-converged samples: {report.nonconverged_samples} of {report.total_samples}",
    ]
    width = max([len(o.stimulus) for o in report.outcomes] + [8])
    lines.append(f"{'#':>3}  {'row':>3}  {'stimulus':<{width}}  {'expected':>8}  {'observed':>8}  result")
    for o in report.outcomes:
        observed = "-" if o.observed is None else str(o.observed)
        lines.append(
            f"{o.index:>3}  {o.row_index + 1:>3}  {o.stimulus:<{width}}  {str(o.expected):>8}  {observed:>8}  {o.status.value}"
        )
    passed = len(report.outcomes) - len(report.failures)
    verdict = "PASS" if report.passed else "FAIL"
    lines.append(f"verdict: {verdict} ({passed} of {len(report.outcomes)} checks passed)")
    return "\n".join(lines) + "\n"


def verification_csv(report: VerificationReport) -> str:
    return _csv(verification_frame(report))


# ─── Comparison ───────────────────────────────────────────────────────────────

def _table_lines(table: ComparisonTable) -> List[str]:
    with_sr = any(row.has_set_reset is not None for row in table.rows)
    width = max(len(row.design) for row in table.rows)
    header = f"{'design':<{width}}  {'area (µm²)':>10}  {'cells':>5}  {'clock phases':>12}"
    if with_sr:
        header += "  S/R"
    lines = [table.title, header]
    for row in table.rows:
        line = f"{row.design:<{width}}  {row.area_um2:>10.2f}  {row.cell_count:>5}  {row.clock_phases:>12}"
        if with_sr:
            line += f"  {_yes_no(row.has_set_reset)}"
        lines.append(line)
    best = table.best_reference.design
    lines.append(f"cell count improvement vs {best}: {table.cell_improvement}%")
    lines.append(f"area improvement vs {best}: {table.area_improvement}%")
    return lines


def comparison_text(report: ComparisonReport) -> str:
    lines: List[str] = []
    for table in report.tables:
        lines.extend(_table_lines(table))
        lines.append("")
    lines.append("Bundled circuits")
    for name, live in report.live_metrics.items():
        phases = live.clock_phases if live.clock_phases is not None else "n/a"
        lines.append(f"  {name}: cells {live.cell_count}, area {live.area_um2_rounded:.2f} µm², phases {phases}")
    if report.deviations:
        lines.append("deviations:")
        lines.extend(f"  {line}" for line in report.deviations)
    else:
        lines.append("deviations: none")
    return "\n".join(lines) + "\n"


def comparison_csv(report: ComparisonReport) -> str:
    records = []
    for table in report.tables:
        for row in table.rows:
            proposed = row is table.proposed
            records.append({
                "table": table.title,
                "design": row.design,
                "area_um2": row.area_um2,
                "cell_count": row.cell_count,
                "clock_phases": row.clock_phases,
                "has_set_reset": _yes_no(row.has_set_reset),
                "cell_improvement_pct": table.cell_improvement if proposed else "",
                "area_improvement_pct": table.area_improvement if proposed else "",
            })
    return _csv(pd.DataFrame(records))
