import unittest

from ..core.errors import LayoutParseError
from ..models.layout import Cell, CellFunction, Layout, validate_layout
from ..persistence.layout_file import format_layout, parse_layout

MAJORITY_TEXT = """qcaforge-layout v1
# plus-shaped majority gate
name majority
cell 20 0 0 input:B
cell 0 20 0 input:A
cell 20 20 0 normal
cell 40 20 0 output:Out   # east arm
cell 20 40 0 input:C
"""


class TestValidateLayout(unittest.TestCase):
    def test_valid_layout(self):
        layout = parse_layout(MAJORITY_TEXT)
        self.assertTrue(validate_layout(layout).valid)

    def test_collects_every_violation(self):
        cells = (
            Cell.input(0, 0, 0, "A"),
            Cell.normal(0, 0, 1),
            Cell.normal(30, 0, 0),
            Cell(40, 0, 5),
            Cell(60, 0, 0, CellFunction.FIXED, None, 0),
            Cell(80, 0, 0, CellFunction.NORMAL, "stray"),
            Cell.input(100, 0, 0, "A"),
        )
        result = validate_layout(Layout("broken", cells, ("A", "Ghost"), ()))
        text = "\n".join(result.violations)
        self.assertFalse(result.valid)
        for fragment in ("duplicate position (0, 0)", "off-grid", "clock zone 5", "fixed with polarization 0",
                         "normal cell carrying label 'stray'", "label 'A' used by 2 cells",
                         "dangling input label 'Ghost'", "missing output"):
            self.assertIn(fragment, text)

    def test_undeclared_terminal(self):
        cells = (Cell.input(0, 0, 0, "In"), Cell.output(20, 0, 0, "Out"))
        result = validate_layout(Layout("wire", cells, ("In",), ()))
        self.assertIn("output cell 'Out' is not listed in the layout outputs", result.violations)


class TestLayoutTransforms(unittest.TestCase):
    def setUp(self):
        self.layout = parse_layout(MAJORITY_TEXT)

    def test_translated(self):
        moved = self.layout.translated(40, -60)
        self.assertEqual(moved.cells[0].position, (60, -60))
        self.assertEqual(moved.inputs, self.layout.inputs)
        self.assertTrue(validate_layout(moved).valid)

    def test_mirrored_and_rotated(self):
        self.assertEqual(self.layout.mirrored().cell_for("C").position, (20, -40))
        self.assertEqual(self.layout.rotated().cell_for("Out").position, (-20, 40))
        self.assertEqual(self.layout.mirrored().mirrored(), self.layout)

    def test_without_cell_drops_terminal(self):
        smaller = self.layout.without_cell(1)
        self.assertEqual(len(smaller), 4)
        self.assertNotIn("A", smaller.inputs)

    def test_lookup(self):
        self.assertEqual(self.layout.index_of("Out"), 3)
        self.assertEqual(self.layout.column_names(), ["B", "A", "cell2", "Out", "C"])
        with self.assertRaises(KeyError):
            self.layout.index_of("Nope")


class TestLayoutFile(unittest.TestCase):
    def test_parse(self):
        layout = parse_layout(MAJORITY_TEXT)
        self.assertEqual(layout.name, "majority")
        self.assertEqual(layout.inputs, ("B", "A", "C"))
        self.assertEqual(layout.outputs, ("Out",))
        self.assertIs(layout.cells[2].function, CellFunction.NORMAL)

    def test_format_is_canonical(self):
        text = format_layout(parse_layout(MAJORITY_TEXT))
        self.assertTrue(text.startswith("qcaforge-layout v1\nname majority\ncell 20 0 0 input:B\n"))
        self.assertEqual(format_layout(parse_layout(text)), text)

    def test_fixed_cells(self):
        layout = parse_layout("qcaforge-layout v1\ncell 0 0 2 fixed:-1\ncell 20 0 2 fixed:+1\n")
        self.assertEqual([c.fixed_polarization for c in layout.cells], [-1, 1])
        self.assertIn("cell 0 0 2 fixed:-1", format_layout(layout))

    def test_errors_carry_line_numbers(self):
        cases = {
            "cell 0 0 0 normal\n": ("<text>:1", "expected header"),
            "qcaforge-layout v1\n\ncell 0 0 zero normal\n": ("<text>:3", "zone must be a decimal integer"),
            "qcaforge-layout v1\ncell 0 0 4 normal\n": ("<text>:2", "zone must be 0-3"),
            "qcaforge-layout v1\ncell 0 0 0 fixed:2\n": ("<text>:2", "fixed cells take +1 or -1"),
            "qcaforge-layout v1\ncell 0 0 0 input:\n": ("<text>:2", "needs a label"),
            "qcaforge-layout v1\ncell 0 0 0 gate\n": ("<text>:2", "unknown cell function"),
            "qcaforge-layout v1\nwire 0 0\n": ("<text>:2", "unknown keyword"),
            "qcaforge-layout v1\ncell 0 0 0\n": ("<text>:2", "cell takes"),
        }
        for text, (location, message) in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(LayoutParseError) as caught:
                    parse_layout(text)
                self.assertTrue(str(caught.exception).startswith(location))
                self.assertIn(message, str(caught.exception))
