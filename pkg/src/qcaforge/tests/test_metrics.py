import unittest

from ..core.errors import DisconnectedError, LayoutError
from ..geometry.metrics import (
    bounding_area,
    clock_phase_latency,
    compute_metrics,
    latency_table,
    rounded_area,
)
from ..models.layout import Cell, Layout
from ..models.schemas import SimConfig
from ..stdcells.catalog import bundled_circuits, get_circuit
from ..stdcells.primitives import wire


class TestArea(unittest.TestCase):
    def test_single_cell(self):
        layout = Layout.from_cells("dot", [Cell.output(0, 0, 0, "Out")])
        self.assertAlmostEqual(bounding_area(layout), 0.000324)

    def test_majority_gate(self):
        self.assertAlmostEqual(bounding_area(get_circuit("majority_gate").layout), 0.003364)

    def test_empty_layout(self):
        with self.assertRaisesRegex(LayoutError, "empty layout"):
            bounding_area(Layout.from_cells("e", []))

    def test_cell_size_comes_from_the_simulation_config(self):
        layout = get_circuit("majority_gate").layout
        self.assertAlmostEqual(bounding_area(layout, 10.0), 0.0025)
        report = compute_metrics(layout, SimConfig(cell_size=10.0))
        self.assertAlmostEqual(report.area_um2, 0.0025)
        self.assertAlmostEqual(compute_metrics(layout).area_um2, bounding_area(layout, SimConfig().cell_size))

    def test_rounding(self):
        self.assertEqual(rounded_area(0.013924), 0.01)
        self.assertEqual(rounded_area(0.026), 0.03)
        self.assertEqual(rounded_area(0.150444), 0.15)


class TestClockPhaseLatency(unittest.TestCase):
    def test_single_zone(self):
        self.assertEqual(clock_phase_latency(get_circuit("majority_gate").layout, "A", "Out"), 1)

    def test_four_zone_wire(self):
        layout = wire(8, (0, 0, 1, 1, 2, 2, 3, 3)).layout
        self.assertEqual(clock_phase_latency(layout, "In", "Out"), 4)

    def test_wraps_around_zone_three(self):
        layout = wire(10, (0, 0, 1, 1, 2, 2, 3, 3, 0, 0)).layout
        self.assertEqual(clock_phase_latency(layout, "In", "Out"), 5)

    def test_fixed_cells_do_not_carry_signals(self):
        cells = [Cell.input(0, 0, 0, "In"), Cell.fixed(20, 0, 0, 1), Cell.output(40, 0, 0, "Out")]
        layout = Layout.from_cells("blocked", cells)
        with self.assertRaisesRegex(DisconnectedError, "disconnected"):
            clock_phase_latency(layout, "In", "Out")
        self.assertEqual(latency_table(layout), {"In->Out": None})

    def test_backward_zone_step_is_illegal(self):
        cells = [Cell.input(0, 0, 1, "In"), Cell.output(20, 0, 0, "Out")]
        with self.assertRaises(DisconnectedError):
            clock_phase_latency(Layout.from_cells("backwards", cells), "In", "Out")

    def test_unknown_label(self):
        with self.assertRaises(LayoutError):
            clock_phase_latency(get_circuit("majority_gate").layout, "Z", "Out")


class TestComputeMetrics(unittest.TestCase):
    def test_bundled_circuits_match_their_baselines(self):
        for circuit in bundled_circuits():
            with self.subTest(circuit=circuit.name):
                live = compute_metrics(circuit.layout)
                if circuit.name == "d_flipflop_sr":
                    expected = [("cell_count", 89, 35), ("area_um2", 0.15, 0.03)]
                else:
                    expected = []
                self.assertEqual(live.differences(circuit.expected_metrics), expected)

    def test_latch(self):
        report = compute_metrics(get_circuit("d_latch").layout)
        self.assertEqual(report.cell_count, 13)
        self.assertEqual(report.area_um2_rounded, 0.01)
        self.assertEqual(report.clock_phases, 3)
        self.assertFalse(report.has_set_reset)

    def test_set_reset_flag(self):
        report = compute_metrics(get_circuit("d_flipflop_sr").layout)
        self.assertTrue(report.has_set_reset)
        self.assertEqual(report.clock_phases, 8)
        self.assertEqual(set(report.latencies), {"P->Out", "S->Out", "Clk->Out", "D->Out"})

    def test_disconnected_pairs_are_reported(self):
        cells = [Cell.input(0, 0, 0, "A"), Cell.output(20, 0, 0, "Out"), Cell.input(100, 0, 0, "B")]
        report = compute_metrics(Layout.from_cells("partial", cells))
        self.assertEqual(report.latencies, {"A->Out": 1, "B->Out": None})
        self.assertEqual(report.disconnected, ["B->Out"])
        self.assertEqual(report.clock_phases, 1)

    def test_invalid_layout(self):
        with self.assertRaises(LayoutError):
            compute_metrics(Layout.from_cells("empty", []))
