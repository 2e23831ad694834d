"""
Figure — Envelope tables (CSV) and envelope drawings (SVG).

The drawing joins (0,0) to the points (b_i, w_i) with a thin line and draws
the envelope (b_i, w̃_i) with a thick one. One unit of b or w is one
centimetre, rendered as ``units_per_cm`` SVG user units.
"""
import csv
import io
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List

import jinja2

from handlers.envelope import EnvelopeResult, WeightVectorData
from handlers.field import format_scalar
from utils.constants import DEFAULT_UNITS_PER_CM

TEMPLATE_DIR = Path(__file__).parent / "templates"
MARGIN_CM = Fraction(1)


def envelope_csv(data: WeightVectorData, env: EnvelopeResult, comments: Iterable[str] = ()) -> str:
    """
    ``#`` comment lines, then one exact row (b_i, w_i, w̃_i, Γ_i) per index.
    """
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["b", "w", "w_envelope", "gamma"])
    for (b, w), h, g in zip(data.points(), env.heights, env.gamma):
        writer.writerow([format_scalar(b), format_scalar(w), format_scalar(h), format_scalar(g)])
    return buf.getvalue()


def _create_env() -> jinja2.Environment:
    return jinja2.Environment(
        loader=jinja2.FileSystemLoader(str(TEMPLATE_DIR)),
        autoescape=jinja2.select_autoescape(["svg", "j2"]),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )


def _num(x: Fraction) -> str:
    text = f"{float(x):.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def envelope_svg(data: WeightVectorData, env: EnvelopeResult, title: str = "envelope",
                 units_per_cm: int = DEFAULT_UNITS_PER_CM) -> str:
    """Render the graph and its envelope as an SVG document."""
    graph = [(Fraction(0), Fraction(0))] + data.points()
    hull = [(Fraction(0), Fraction(0))] + [(b, h) for (b, _), h in zip(data.points(), env.heights)]
    ys = [y for _, y in graph + hull]
    y_top, y_bottom = max(ys), min(ys)
    x_right = graph[-1][0]
    scale = Fraction(units_per_cm)

    def to_svg(x: Fraction, y: Fraction) -> dict:
        return {"x": _num((x + MARGIN_CM) * scale), "y": _num((y_top - y + MARGIN_CM) * scale)}

    def polyline(points: List) -> str:
        return " ".join(f"{p['x']},{p['y']}" for p in (to_svg(x, y) for x, y in points))

    axis_y = to_svg(Fraction(0), Fraction(0))["y"]
    ticks = []
    for b, _ in data.points():
        p = to_svg(b, Fraction(0))
        ticks.append({
            "x": p["x"],
            "y1": _num((y_top + MARGIN_CM) * scale - 3),
            "y2": _num((y_top + MARGIN_CM) * scale + 3),
            "label_y": _num((y_top + MARGIN_CM) * scale + 12),
            "label": format_scalar(b),
        })

    template = _create_env().get_template("envelope.svg.j2")
    return template.render(
        title=title,
        width=_num((x_right + 2 * MARGIN_CM) * scale),
        height=_num((y_top - y_bottom + 2 * MARGIN_CM) * scale),
        axis={"x1": _num(MARGIN_CM * scale), "x2": _num((x_right + MARGIN_CM) * scale), "y": axis_y},
        ticks=ticks,
        graph=polyline(graph),
        envelope=polyline(hull),
        vertices=[to_svg(x, y) for x, y in graph],
    )


def write_svg(path: str, svg: str):
    Path(path).write_text(svg, encoding="utf-8")
