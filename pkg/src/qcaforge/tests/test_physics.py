import itertools
import math
import unittest

import numpy as np

from ..core.constants import ELEMENTARY_CHARGE, VACUUM_PERMITTIVITY
from ..engine.physics import CouplingTable, kink_energy, kink_energy_offset, response
from ..models.layout import Cell, Layout
from ..models.schemas import SimConfig

GOLDEN_KINK_ENERGIES = {
    (20, 0): 2.37700515832e-22,
    (20, 20): -5.16821003661e-23,
    (40, 0): 7.07170952410e-24,
    (40, 20): -1.63591445318e-24,
    (40, 40): -1.47710577774e-24,
    (60, 0): 9.17582424797e-25,
}


def brute_force_kink(dx, dy, epsilon_r=12.9, offset=4.5):
    """Dot-by-dot Coulomb sum written independently of the engine."""
    corners = [(offset, -offset), (offset, offset), (-offset, offset), (-offset, -offset)]

    def charges(polarization):
        electrons = (0, 2) if polarization > 0 else (1, 3)
        return [ELEMENTARY_CHARGE * (0.5 - (1 if k in electrons else 0)) for k in range(4)]

    def energy(p_i, p_j):
        terms = [
            qa * qb / (math.hypot(xa - (xb + dx), ya - (yb + dy)) * 1e-9)
            for (xa, ya), qa in zip(corners, charges(p_i))
            for (xb, yb), qb in zip(corners, charges(p_j))
        ]
        return math.fsum(terms) / (4 * math.pi * VACUUM_PERMITTIVITY * epsilon_r)

    return energy(1, -1) - energy(1, 1)


class TestKinkEnergy(unittest.TestCase):
    def setUp(self):
        self.config = SimConfig()

    def test_golden_values(self):
        for (dx, dy), expected in GOLDEN_KINK_ENERGIES.items():
            with self.subTest(offset=(dx, dy)):
                value = kink_energy_offset(dx, dy, self.config)
                self.assertLess(abs(value - expected) / abs(expected), 1e-9)

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(7)
        offsets = [
            (dx, dy) for dx, dy in itertools.product(range(-60, 61, 20), repeat=2)
            if (dx, dy) != (0, 0) and dx * dx + dy * dy <= 65 ** 2
        ]
        for k in rng.choice(len(offsets), size=10, replace=False):
            dx, dy = offsets[k]
            with self.subTest(offset=(dx, dy)):
                engine = kink_energy_offset(dx, dy, self.config)
                oracle = brute_force_kink(dx, dy)
                self.assertLess(abs(engine - oracle) / abs(oracle), 1e-12)

    def test_orthogonal_neighbours_favour_alignment(self):
        self.assertGreater(kink_energy_offset(20, 0, self.config), 0)
        self.assertGreater(kink_energy_offset(0, 20, self.config), 0)

    def test_diagonal_neighbours_favour_anti_alignment(self):
        self.assertLess(kink_energy_offset(20, 20, self.config), 0)
        self.assertLess(kink_energy_offset(-20, 20, self.config), 0)

    def test_symmetric_under_swap_and_reflection(self):
        a = Cell.normal(0, 0, 0)
        b = Cell.normal(40, 20, 0)
        self.assertAlmostEqual(kink_energy(a, b, self.config) / kink_energy(b, a, self.config), 1.0, places=12)
        self.assertAlmostEqual(
            kink_energy_offset(40, 20, self.config) / kink_energy_offset(40, -20, self.config), 1.0, places=12
        )

    def test_scales_inversely_with_permittivity(self):
        doubled = SimConfig(epsilon_r=25.8)
        ratio = kink_energy_offset(20, 0, self.config) / kink_energy_offset(20, 0, doubled)
        self.assertAlmostEqual(ratio, 2.0, places=12)

    def test_coincident_cells_rejected(self):
        with self.assertRaises(ValueError):
            kink_energy_offset(0, 0, self.config)


class TestResponse(unittest.TestCase):
    def test_values(self):
        self.assertEqual(response(0.0), 0.0)
        self.assertAlmostEqual(response(1.0), 1 / math.sqrt(2))
        self.assertAlmostEqual(response(-1.0), -1 / math.sqrt(2))

    def test_saturates_inside_unit_interval(self):
        x = np.array([-1e6, -5.0, 0.3, 5.0, 1e6])
        y = response(x)
        self.assertTrue(np.all(np.abs(y) <= 1.0))
        self.assertTrue(np.all(np.diff(y) > 0))


class TestCouplingTable(unittest.TestCase):
    def test_neighbours_within_radius(self):
        config = SimConfig()
        cells = [Cell.input(0, 0, 0, "In")] + [Cell.normal(20 * i, 0, 0) for i in range(1, 5)]
        cells.append(Cell.output(100, 0, 0, "Out"))
        coupling = CouplingTable.build(Layout.from_cells("wire", cells), config)

        # 65 nm reaches three cells either side on a straight wire
        row = {int(j): e for j, e in zip(coupling.neighbor_index[0], coupling.coefficients[0]) if e != 0}
        self.assertEqual(sorted(row), [1, 2, 3])
        self.assertAlmostEqual(row[1] / GOLDEN_KINK_ENERGIES[(20, 0)], 1.0, places=9)
        self.assertEqual(coupling.free.tolist(), [False, True, True, True, True, True])

    def test_padding_points_at_self_with_zero_weight(self):
        config = SimConfig()
        cells = [Cell.input(0, 0, 0, "In"), Cell.normal(20, 0, 0), Cell.normal(40, 0, 0),
                 Cell.output(200, 0, 0, "Out")]
        coupling = CouplingTable.build(Layout.from_cells("sparse", cells), config)
        last = coupling.neighbor_index.shape[0] - 1
        self.assertTrue(np.all(coupling.neighbor_index[last] == last))
        self.assertTrue(np.all(coupling.coefficients[last] == 0))

    def test_radius_is_inclusive(self):
        config = SimConfig(radius_of_effect=40.0)
        cells = [Cell.input(0, 0, 0, "In"), Cell.output(40, 0, 0, "Out")]
        coupling = CouplingTable.build(Layout.from_cells("pair", cells), config)
        self.assertNotEqual(coupling.coefficients[0].sum(), 0)
