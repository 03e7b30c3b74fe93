import unittest
import xml.etree.ElementTree as ET

import numpy as np
import pandas as pd

from ..core.errors import RenderError, SimulationError, VectorParseError
from ..engine.trace import Trace
from ..geometry.metrics import compute_metrics
from ..models.layout import Cell, Layout
from ..models.schemas import SimConfig
from ..persistence.vector_file import exhaustive_vectors, parse_vectors
from ..reporting.reports import metrics_csv, metrics_text, verification_csv, verification_text
from ..reporting.svg import polarization_color, render, render_sample
from ..stdcells.catalog import get_circuit
from ..verify.checker import Outcome, RowOutcome, VerificationReport
from ..verify.decode import decode_output, decode_value

SVG = "{http://www.w3.org/2000/svg}"


class TestMetricsReport(unittest.TestCase):
    def test_latch_text(self):
        text = metrics_text("d_latch", compute_metrics(get_circuit("d_latch").layout))
        lines = text.splitlines()
        self.assertEqual(lines[0], "layout: d_latch")
        self.assertEqual(lines[1], "cells: 13, area: 0.01 µm², phases: 3")
        self.assertIn("latency D->Out: 3", lines)

    def test_set_reset_text(self):
        text = metrics_text("d_flipflop_sr", compute_metrics(get_circuit("d_flipflop_sr").layout))
        self.assertIn("phases: 8, S/R: yes", text.splitlines()[1])

    def test_csv(self):
        lines = metrics_csv("majority_gate", compute_metrics(get_circuit("majority_gate").layout)).splitlines()
        self.assertEqual(lines[0].split(",")[:6],
                         ["layout", "cell_count", "area_um2", "area_um2_rounded", "clock_phases", "has_set_reset"])
        self.assertTrue(lines[1].startswith("majority_gate,5,0.003364,0,1,False"))


class TestVerificationReport(unittest.TestCase):
    def setUp(self):
        self.report = VerificationReport(circuit="majority_gate", source="and3", hold_cycles=2, latency_phases=1)
        self.report.outcomes = [
            RowOutcome(0, 0, "A=0 B=0 C=0", 0, 0, Outcome.PASS),
            RowOutcome(1, 3, "A=0 B=1 C=1", 0, 1, Outcome.FAIL),
            RowOutcome(2, 4, "A=1 B=0 C=0", 0, None, Outcome.UNDECODABLE),
        ]

    def test_verdict(self):
        self.assertFalse(self.report.passed)
        self.assertEqual(len(self.report.failures), 2)
        self.assertEqual(self.report.summary(), {"pass": 1, "fail": 1, "undecodable": 1})
        self.assertTrue(verification_text(self.report).endswith("verdict: FAIL (1 of 3 checks passed)\n"))

    def test_csv(self):
        lines = verification_csv(self.report).splitlines()
        self.assertEqual(lines[0], "check,row,stimulus,expected,observed,result")
        self.assertEqual(lines[2], "1,3,A=0 B=1 C=1,0,1,fail")
        self.assertEqual(lines[3], "2,4,A=1 B=0 C=0,0,-,undecodable")


class TestDecode(unittest.TestCase):
    def test_thresholds(self):
        self.assertEqual(decode_value(0.9), 1)
        self.assertEqual(decode_value(-0.51), 0)
        self.assertIsNone(decode_value(0.5))
        self.assertIsNone(decode_value(-0.2))
        self.assertEqual(decode_value(0.3, threshold=0.2), 1)

    def test_decode_output_reads_last_hold_sample(self):
        layout = Layout.from_cells("wire", [Cell.input(0, 0, 0, "In"), Cell.output(20, 0, 1, "Out")])
        spc, hold = 8, 2
        samples = 2 * hold * spc
        polarizations = np.zeros((samples, 2))
        # zone 1 holds at offset (1*2 + 2*2 - 1) = 5 of each cycle
        polarizations[spc + 5, 1] = 0.9
        polarizations[3 * spc + 5, 1] = -0.9
        polarizations[5, 1] = -0.9
        trace = Trace(layout, spc, hold, np.repeat([0, 1], hold * spc), np.zeros((samples, 4)),
                      polarizations, np.ones(samples, dtype=bool), np.ones(samples, dtype=int))
        self.assertEqual(decode_output(trace, "Out"), [1, 0])
        with self.assertRaises(SimulationError):
            decode_output(trace, "In")


class TestVectorFile(unittest.TestCase):
    def test_parse(self):
        labels, vectors = parse_vectors("qcaforge-vectors v1\ninputs A B\n0 1\n1 1  # both high\n")
        self.assertEqual(labels, ("A", "B"))
        self.assertEqual(vectors, [{"A": 0, "B": 1}, {"A": 1, "B": 1}])

    def test_errors(self):
        with self.assertRaisesRegex(VectorParseError, ":2: unknown input"):
            parse_vectors("qcaforge-vectors v1\ninputs A Z\n", known_labels=("A", "B"))
        with self.assertRaisesRegex(VectorParseError, ":3: row has 1 values"):
            parse_vectors("qcaforge-vectors v1\ninputs A B\n1\n")
        with self.assertRaisesRegex(VectorParseError, ":3: vector values must be 0 or 1"):
            parse_vectors("qcaforge-vectors v1\ninputs A\n2\n")

    def test_exhaustive(self):
        vectors = exhaustive_vectors(("A", "B", "C"))
        self.assertEqual(len(vectors), 8)
        self.assertEqual(vectors[1], {"A": 0, "B": 0, "C": 1})
        with self.assertRaisesRegex(SimulationError, "too many inputs"):
            exhaustive_vectors([f"I{k}" for k in range(13)])


class TestSvg(unittest.TestCase):
    def test_majority_plus_shape(self):
        root = ET.fromstring(render(get_circuit("majority_gate").layout))
        rects = [r for r in root.iter(f"{SVG}rect") if r.get("stroke-width") == "1.50"]
        self.assertEqual(len(rects), 5)
        centres = {(float(r.get("x")), float(r.get("y"))) for r in rects}
        xs = sorted({x for x, _ in centres})
        ys = sorted({y for _, y in centres})
        self.assertEqual((len(xs), len(ys)), (3, 3))
        self.assertEqual(len(list(root.iter(f"{SVG}circle"))), 20)
        labels = {t.text for t in root.iter(f"{SVG}text")}
        self.assertTrue({"A", "B", "C", "Out", "zone 0", "zone 3"} <= labels)

    def test_fixed_negative_cell_uses_other_diagonal(self):
        layout = Layout.from_cells("fixed", [Cell.fixed(0, 0, 0, -1), Cell.output(20, 0, 0, "Out")])
        root = ET.fromstring(render(layout))
        dots = list(root.iter(f"{SVG}circle"))[:4]
        filled = [k for k, dot in enumerate(dots) if dot.get("fill") != "none"]
        self.assertEqual(filled, [1, 3])

    def test_geometry_follows_the_simulation_config(self):
        layout = Layout.from_cells("one", [Cell.output(0, 0, 0, "Out")])
        root = ET.fromstring(render(layout, config=SimConfig(cell_size=10.0, dot_offset=3.0)))
        rect = next(r for r in root.iter(f"{SVG}rect") if r.get("stroke-width") == "1.50")
        self.assertEqual(rect.get("width"), "20.00")
        dots = list(root.iter(f"{SVG}circle"))
        self.assertAlmostEqual(float(dots[1].get("cy")) - float(dots[0].get("cy")), 12.0)
        default = ET.fromstring(render(layout))
        dots = list(default.iter(f"{SVG}circle"))
        self.assertAlmostEqual(float(dots[1].get("cy")) - float(dots[0].get("cy")), 4 * SimConfig().dot_offset)

    def test_output_is_deterministic(self):
        layout = get_circuit("d_latch").layout
        self.assertEqual(render(layout), render(layout))

    def test_polarization_colours(self):
        self.assertEqual(polarization_color(1.0), "#1f5fbf")
        self.assertEqual(polarization_color(-1.0), "#c0392b")
        self.assertEqual(polarization_color(0.0), "#808080")

    def test_errors(self):
        with self.assertRaises(RenderError):
            render(Layout.from_cells("empty", []))
        layout = get_circuit("majority_gate").layout
        with self.assertRaises(RenderError):
            render(layout, [0.0])
        frame = pd.DataFrame({"sample": [0], "vector": [0], **{name: [0.5] for name in layout.column_names()}})
        self.assertIn("+0.50", render_sample(layout, frame, 0))
        with self.assertRaisesRegex(RenderError, "out of range"):
            render_sample(layout, frame, 7)
