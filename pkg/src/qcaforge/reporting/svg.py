"""
SVG rendering of QCA layouts.

One square per cell filled by clock zone, with the four quantum dots drawn on
top. The occupied diagonal follows the sign of the cell's polarization; when
polarizations from a trace sample are given, occupied dots are shaded by value.
"""
from pathlib import Path
from typing import List, Optional, Sequence, Union
from xml.sax.saxutils import escape

import pandas as pd

from ..core.constants import DOT_DIAMETER_NM
from ..core.errors import RenderError
from ..engine.trace import sample_polarizations
from ..models.layout import CellFunction, Layout
from ..models.schemas import SimConfig

DEFAULT_SCALE = 2.0  # px per nm
DEFAULT_PADDING = 30.0
LEGEND_HEIGHT = 30.0

ZONE_COLORS = ("#8fd18f", "#d18fd1", "#8fd1d1", "#f2f2f2")
FUNCTION_STROKES = {
    CellFunction.NORMAL: "#333333",
    CellFunction.INPUT: "#1f5fbf",
    CellFunction.OUTPUT: "#d9a300",
    CellFunction.FIXED: "#c0392b",
}
NEGATIVE_COLOR = (0xC0, 0x39, 0x2B)
POSITIVE_COLOR = (0x1F, 0x5F, 0xBF)
NEUTRAL_COLOR = (0x80, 0x80, 0x80)

# dot order matches the engine: P = +1 occupies dots 0 and 2
DOT_SIGNS = ((1, -1), (1, 1), (-1, 1), (-1, -1))


def polarization_color(value: float) -> str:
    """Blend grey towards blue for +1 and towards red for -1."""
    value = max(-1.0, min(1.0, value))
    target = POSITIVE_COLOR if value >= 0 else NEGATIVE_COLOR
    weight = abs(value)
    rgb = [round(n + (t - n) * weight) for n, t in zip(NEUTRAL_COLOR, target)]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _occupied_dots(polarization: float) -> Sequence[int]:
    if polarization > 0:
        return (0, 2)
    if polarization < 0:
        return (1, 3)
    return ()


def render(
    layout: Layout,
    polarizations: Optional[Sequence[float]] = None,
    scale: float = DEFAULT_SCALE,
    padding: float = DEFAULT_PADDING,
    config: Optional[SimConfig] = None,
) -> str:
    """
    Render a layout to SVG markup. `polarizations` is one value per cell in layout order;
    cell size and dot placement come from `config`.
    """
    geometry = config or SimConfig()
    if len(layout) == 0:
        raise RenderError(f"cannot render empty layout '{layout.name}'")
    if polarizations is not None and len(polarizations) != len(layout):
        raise RenderError(
            f"got {len(polarizations)} polarizations for {len(layout)} cells"
        )

    half = geometry.cell_size / 2
    min_x = min(c.x_nm for c in layout.cells) - half
    min_y = min(c.y_nm for c in layout.cells) - half
    max_x = max(c.x_nm for c in layout.cells) + half
    max_y = max(c.y_nm for c in layout.cells) + half

    width = max((max_x - min_x) * scale + 2 * padding, 200)
    height = (max_y - min_y) * scale + 2 * padding + LEGEND_HEIGHT
    offset_x = padding - min_x * scale
    offset_y = padding + LEGEND_HEIGHT - min_y * scale

    size = geometry.cell_size * scale
    dot_r = DOT_DIAMETER_NM / 2 * scale
    elements: List[str] = []
    labels: List[str] = []

    for index, cell in enumerate(layout.cells):
        cx = cell.x_nm * scale + offset_x
        cy = cell.y_nm * scale + offset_y
        elements.append(
            f'<rect x="{cx - size / 2:.2f}" y="{cy - size / 2:.2f}" '
            f'width="{size:.2f}" height="{size:.2f}" fill="{ZONE_COLORS[cell.zone]}" '
            f'stroke="{FUNCTION_STROKES[cell.function]}" stroke-width="1.50"/>'
        )

        value = cell.polarization if polarizations is None else float(polarizations[index])
        occupied = _occupied_dots(value)
        fill = "#000000" if polarizations is None else polarization_color(value)
        for dot, (sx, sy) in enumerate(DOT_SIGNS):
            dx = cx + sx * geometry.dot_offset * scale
            dy = cy + sy * geometry.dot_offset * scale
            dot_fill = fill if dot in occupied else "none"
            elements.append(
                f'<circle cx="{dx:.2f}" cy="{dy:.2f}" r="{dot_r:.2f}" '
                f'fill="{dot_fill}" stroke="#000000" stroke-width="0.75"/>'
            )

        text = cell.label
        if cell.function is CellFunction.FIXED:
            text = f"{cell.fixed_polarization:+d}"
        if polarizations is not None and cell.function is not CellFunction.FIXED and cell.label:
            text = f"{cell.label}={value:+.2f}"
        if text:
            labels.append(
                f'<text x="{cx:.2f}" y="{cy + size / 2 + 11:.2f}" text-anchor="middle" '
                f'font-size="10" font-family="monospace" fill="#000000">{escape(text)}</text>'
            )

    legend = []
    for zone, color in enumerate(ZONE_COLORS):
        lx = padding + zone * 70
        legend.append(
            f'<rect x="{lx:.2f}" y="{padding / 2:.2f}" width="12" height="12" '
            f'fill="{color}" stroke="#333333" stroke-width="1"/>'
        )
        legend.append(
            f'<text x="{lx + 16:.2f}" y="{padding / 2 + 10:.2f}" font-size="10" '
            f'font-family="sans-serif" fill="#000000">zone {zone}</text>'
        )

    body = "\n".join("  " + e for e in legend + elements + labels)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">\n'
        f'  <title>{escape(layout.name)}</title>\n'
        '  <rect width="100%" height="100%" fill="#ffffff"/>\n'
        f"{body}\n"
        "</svg>\n"
    )


def render_sample(layout: Layout, frame: pd.DataFrame, sample: int, **options) -> str:
    """Render the polarizations recorded at one sample of a trace frame."""
    try:
        values = sample_polarizations(frame, sample, layout)
    except IndexError:
        raise RenderError(f"sample {sample} is out of range for this trace")
    except KeyError as e:
        raise RenderError(f"trace has no column {e} for layout '{layout.name}'")
    return render(layout, values, **options)


def write_svg(svg: str, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(svg)
