"""Drive circuits with truth-table stimuli or vector streams and judge the decoded output."""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.constants import NUM_CLOCK_ZONES
from ..core.errors import DisconnectedError, TruthTableError
from ..engine.simulator import DEFAULT_PARALLEL_MIN_CELLS, Simulator
from ..geometry.metrics import clock_phase_latency
from ..models.layout import Layout
from ..models.schemas import SimConfig
from ..stdcells.circuit import CircuitHandle
from .decode import DEFAULT_THRESHOLD, decode_output
from .reference import Model, get_model
from .truth_table import HOLD, Expected, TruthTable, expand_rows

logger = logging.getLogger(__name__)

DEFAULT_WARMUP_VECTORS = 2

Vector = Dict[str, int]


class Outcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNDECODABLE = "undecodable"


@dataclass
class RowOutcome:
    index: int
    row_index: int
    stimulus: str
    expected: Expected
    observed: Optional[int]
    status: Outcome


@dataclass
class VerificationReport:
    circuit: str
    source: str
    outcomes: List[RowOutcome] = field(default_factory=list)
    latency_phases: Optional[int] = None
    alignment_shift: int = 0
    hold_cycles: int = 1
    nonconverged_samples: int = 0
    total_samples: int = 0

    @property
    def passed(self) -> bool:
        return all(o.status is Outcome.PASS for o in self.outcomes)

    @property
    def failures(self) -> List[RowOutcome]:
        return [o for o in self.outcomes if o.status is not Outcome.PASS]

    def summary(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in Outcome}
        for o in self.outcomes:
            counts[o.status.value] += 1
        return counts


def alignment_shift(layout: Layout, hold_cycles: int) -> Tuple[int, Optional[int]]:
    """
    Vectors between applying an input and reading its effect at the decision point.

    A signal entering in zone z and crossing L phases settles in clock cycle
    floor((z + L) / 4) after it was applied; a vector is read in its last held cycle.
    Returns (shift in vectors, largest latency in phases).
    """
    delay_cycles = 0
    latest: Optional[int] = None
    for output_label in layout.outputs:
        for input_label in layout.inputs:
            try:
                phases = clock_phase_latency(layout, input_label, output_label)
            except DisconnectedError:
                continue
            zone = layout.cell_for(input_label).zone
            delay_cycles = max(delay_cycles, (zone + phases) // NUM_CLOCK_ZONES)
            latest = phases if latest is None else max(latest, phases)
    slack = delay_cycles - (hold_cycles - 1)
    shift = 0 if slack <= 0 else -(-slack // hold_cycles)
    return shift, latest


def _judge(expected: Expected, observed: Optional[int], reference: Optional[int] = None) -> Outcome:
    if observed is None:
        return Outcome.UNDECODABLE
    if expected == HOLD:
        if reference is None:
            return Outcome.UNDECODABLE
        return Outcome.PASS if observed == reference else Outcome.FAIL
    return Outcome.PASS if observed == expected else Outcome.FAIL


def _describe(vector: Vector) -> str:
    return " ".join(f"{label}={bit}" for label, bit in vector.items())


class CircuitVerifier:
    """Runs one continuous simulation per check so sequential state carries across vectors."""

    def __init__(self, circuit: CircuitHandle, config: SimConfig, workers: int = 1,
                 hold_cycles: Optional[int] = None, warmup_vectors: int = DEFAULT_WARMUP_VECTORS,
                 threshold: float = DEFAULT_THRESHOLD, parallel_min_cells: int = DEFAULT_PARALLEL_MIN_CELLS):
        self.circuit = circuit
        self.config = config
        self.hold_cycles = hold_cycles or circuit.hold_cycles
        self.warmup_vectors = warmup_vectors
        self.threshold = threshold
        self.simulator = Simulator(circuit.layout, config, workers, parallel_min_cells)
        self.shift, self.latency = alignment_shift(circuit.layout, self.hold_cycles)
        self.logger = logging.getLogger(__name__)

    def _report(self, source: str) -> VerificationReport:
        return VerificationReport(
            circuit=self.circuit.name,
            source=source,
            latency_phases=self.latency,
            alignment_shift=self.shift,
            hold_cycles=self.hold_cycles,
        )

    def _run(self, stream: Sequence[Vector], output_label: str, report: VerificationReport):
        trace = self.simulator.run(stream, self.hold_cycles)
        report.nonconverged_samples = trace.nonconverged_count
        report.total_samples = trace.sample_count
        return decode_output(trace, output_label, self.circuit.layout, self.threshold)

    def check_table(self, table: TruthTable) -> VerificationReport:
        layout = self.circuit.layout
        if set(table.input_labels) != set(layout.inputs):
            raise TruthTableError(
                f"table inputs {list(table.input_labels)} do not match circuit inputs {list(layout.inputs)}"
            )
        if table.output_label not in layout.outputs:
            raise TruthTableError(f"'{table.output_label}' is not an output of '{layout.name}'")

        report = self._report(table.name)
        stimuli = expand_rows(table)
        if not stimuli:
            return report

        stream: List[Vector] = []
        decisions = []
        for stimulus in stimuli:
            vectors = stimulus.vector_dicts
            stream.extend([vectors[0]] * self.warmup_vectors)
            stream.extend(vectors)
            stream.extend([vectors[-1]] * self.shift)
            decisions.append((stimulus, len(stream) - 1))

        decoded = self._run(stream, table.output_label, report)
        for number, (stimulus, position) in enumerate(decisions):
            observed = decoded[position]
            reference = decoded[position - 1] if stimulus.expected == HOLD else None
            report.outcomes.append(RowOutcome(
                index=number,
                row_index=stimulus.row_index,
                stimulus=stimulus.describe(),
                expected=stimulus.expected,
                observed=observed,
                status=_judge(stimulus.expected, observed, reference),
            ))
        self.logger.info(
            f"{self.circuit.name} vs {table.name}: {len(report.failures)} of {len(report.outcomes)} checks failed"
        )
        return report

    def check_stream(self, vectors: Sequence[Vector], model: Model, output_label: str = "Out",
                     source: str = "stream") -> VerificationReport:
        report = self._report(source)
        if not vectors:
            return report
        expected = model(vectors)
        decoded = self._run(list(vectors), output_label, report)
        for v in range(self.warmup_vectors, len(vectors) - self.shift):
            if expected[v] is None:
                continue
            observed = decoded[v + self.shift]
            report.outcomes.append(RowOutcome(
                index=len(report.outcomes),
                row_index=v,
                stimulus=_describe(vectors[v]),
                expected=expected[v],
                observed=observed,
                status=_judge(expected[v], observed),
            ))
        self.logger.info(
            f"{self.circuit.name} stream of {len(vectors)}: {len(report.failures)} of {len(report.outcomes)} checks failed"
        )
        return report


def check_truth_table(circuit: CircuitHandle, table: TruthTable, config: SimConfig,
                      workers: int = 1, hold_cycles: Optional[int] = None, **options) -> VerificationReport:
    return CircuitVerifier(circuit, config, workers, hold_cycles, **options).check_table(table)


def check_stream(circuit: CircuitHandle, vectors: Sequence[Vector], config: SimConfig,
                 model: Optional[Model] = None, workers: int = 1, hold_cycles: Optional[int] = None,
                 **options) -> VerificationReport:
    if model is None:
        if circuit.reference_model is None:
            raise TruthTableError(f"circuit '{circuit.name}' has no reference model")
        model = get_model(circuit.reference_model)
    output_label = circuit.layout.outputs[0]
    return CircuitVerifier(circuit, config, workers, hold_cycles, **options).check_stream(vectors, model, output_label)


def random_vectors(labels: Sequence[str], count: int, seed: int) -> List[Vector]:
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(count, len(labels)))
    return [{label: int(b) for label, b in zip(labels, row)} for row in bits]
