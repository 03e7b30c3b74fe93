import unittest

from ..core.errors import TruthTableError
from ..models.schemas import SimConfig
from ..stdcells.catalog import bundled_circuits, get_circuit
from ..verify.checker import CircuitVerifier, Outcome, alignment_shift
from ..verify.truth_table import parse_table

FAST = SimConfig(samples_per_cycle=48)


class TestAlignmentShift(unittest.TestCase):
    def test_bundled_circuits_need_no_shift(self):
        for circuit in bundled_circuits():
            with self.subTest(circuit=circuit.name):
                shift, _ = alignment_shift(circuit.layout, circuit.hold_cycles)
                self.assertEqual(shift, 0)

    def test_long_wire_with_single_hold_cycle(self):
        layout = get_circuit("wire_8").layout
        self.assertEqual(alignment_shift(layout, 1), (1, 4))
        self.assertEqual(alignment_shift(layout, 2), (0, 4))


class TestCheckTable(unittest.TestCase):
    def test_majority_passes_its_own_table(self):
        circuit = get_circuit("majority_gate")
        report = CircuitVerifier(circuit, FAST).check_table(circuit.expected_table)
        self.assertTrue(report.passed)
        self.assertEqual(len(report.outcomes), 8)
        self.assertEqual(report.summary()[Outcome.PASS.value], 8)

    def test_input_mismatch(self):
        table = parse_table("qcaforge-table v1\ninputs A B\noutput Out\n0 0 -> 0\n")
        with self.assertRaisesRegex(TruthTableError, "do not match"):
            CircuitVerifier(get_circuit("majority_gate"), FAST).check_table(table)

    def test_unknown_output(self):
        table = parse_table("qcaforge-table v1\ninputs A B C\noutput Q\n0 0 0 -> 0\n")
        with self.assertRaisesRegex(TruthTableError, "not an output"):
            CircuitVerifier(get_circuit("majority_gate"), FAST).check_table(table)
