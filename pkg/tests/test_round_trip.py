"""
Bundled circuits written to disk, read back and verified again.

    python -m pytest tests/test_round_trip.py -v
"""

import os
import sys
import tempfile
import unittest
from pathlib import Path

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "src")))

from qcaforge.geometry.metrics import compute_metrics
from qcaforge.models.schemas import SimConfig
from qcaforge.persistence.layout_file import load_layout
from qcaforge.reporting.reports import verification_text
from qcaforge.stdcells.circuit import CircuitHandle
from qcaforge.stdcells.catalog import circuit_names, export_circuits, get_circuit
from qcaforge.verify.checker import check_truth_table
from qcaforge.verify.truth_table import load_table

FAST = SimConfig(samples_per_cycle=48)


# ─── Export and reload ────────────────────────────────────────────────────────

class TestRoundTrip(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.directory = Path(self._tmp.name)
        export_circuits(self.directory)

    def tearDown(self):
        self._tmp.cleanup()

    def test_layouts_and_metrics_survive(self):
        for name in circuit_names():
            with self.subTest(circuit=name):
                circuit = get_circuit(name)
                layout = load_layout(self.directory / f"{name}.qcaforge")
                self.assertEqual(layout.cells, circuit.layout.cells)
                self.assertEqual(set(layout.inputs), set(circuit.layout.inputs))
                self.assertEqual(compute_metrics(layout), compute_metrics(circuit.layout))

    def test_reverification_gives_identical_reports(self):
        for name in ("majority_gate", "inverter_symmetric", "d_latch"):
            with self.subTest(circuit=name):
                circuit = get_circuit(name)
                original = check_truth_table(circuit, circuit.expected_table, FAST)

                layout = load_layout(self.directory / f"{name}.qcaforge")
                table = load_table(self.directory / f"{name}.table")
                reloaded_circuit = CircuitHandle(name=name, layout=layout, hold_cycles=circuit.hold_cycles)
                reloaded = check_truth_table(reloaded_circuit, table, FAST)
                self.assertEqual(verification_text(reloaded), verification_text(original))
                self.assertTrue(reloaded.passed)


if __name__ == "__main__":
    unittest.main()
