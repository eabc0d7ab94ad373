"""Common utilities for report rendering: brand colors, fonts, header/footer drawing.

Includes graceful fallbacks if ReportLab is not installed so the CLI still imports
(text and JSON output keep working) in partial environments.
"""
from typing import Any, Dict, List
import json
import os
import re

try:  # Attempt real ReportLab imports
    from reportlab.pdfgen import canvas as _canvas_mod
    from reportlab.lib import colors as _colors_mod
    from reportlab.lib.pagesizes import A4 as _A4
    from reportlab.pdfbase import pdfmetrics as _pdfmetrics_mod
    from reportlab.lib.units import inch, mm
    canvas = _canvas_mod  # type: ignore
    colors = _colors_mod  # type: ignore
    A4 = _A4  # type: ignore
    pdfmetrics = _pdfmetrics_mod  # type: ignore
    HAVE_REPORTLAB = True
except Exception:  # Fallback lightweight stubs
    HAVE_REPORTLAB = False

    class _StubColors:
        white = (1, 1, 1)
        def Color(self, r, g, b): return (r, g, b)
    colors = _StubColors()  # type: ignore
    A4 = (595.275590551, 841.88976378)  # type: ignore
    inch = 72.0  # type: ignore
    mm = 2.834645669  # type: ignore

    class _StubPdfMetrics:
        def stringWidth(self, text, font, size): return len(text) * size * 0.6
    pdfmetrics = _StubPdfMetrics()  # type: ignore

    class _StubText:
        def setFont(self, *a, **k): pass
        def setFillColor(self, *a, **k): pass
        def textLine(self, *a, **k): pass
        def setLeading(self, *a, **k): pass

    class _StubCanvas:
        def __init__(self, *a, **k): pass
        def setFillColor(self, *a, **k): pass
        def rect(self, *a, **k): pass
        def setFont(self, *a, **k): pass
        def drawString(self, *a, **k): pass
        def drawRightString(self, *a, **k): pass
        def showPage(self): pass
        def save(self): pass
        def setStrokeColor(self, *a, **k): pass
        def setLineWidth(self, *a, **k): pass
        def line(self, *a, **k): pass
        def beginText(self, *a, **k): return _StubText()
        def drawText(self, *a, **k): pass
        def getPageNumber(self): return 1

    class canvas:  # type: ignore
        Canvas = _StubCanvas

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
ASSETS_DIR = os.path.abspath(os.path.join(BASE_DIR, "..", "assets"))

MARGIN_LEFT = 1.0 * inch
MARGIN_RIGHT = 0.8 * inch
MARGIN_TOP = 1.0 * inch
BOTTOM_RESERVED = 1.0 * inch


def load_brand_colors() -> Dict[str, object]:
    """Load report colors from JSON; unknown or malformed entries are skipped."""
    path = os.path.abspath(os.path.join(ASSETS_DIR, "brand_colors.json"))
    data: Dict[str, Any] = {}
    if os.path.isfile(path):
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f) or {}

    hex_re = re.compile(r"^#([0-9a-fA-F]{6})$")

    def hex_to_color(h: str):
        h = h.strip()
        if not hex_re.match(h):
            raise ValueError(f"Invalid hex color: {h!r}")
        h = h.lstrip("#")
        r = int(h[0:2], 16) / 255.0
        g = int(h[2:4], 16) / 255.0
        b = int(h[4:6], 16) / 255.0
        return colors.Color(r, g, b)

    brand: Dict[str, object] = {}
    for k, v in data.items():
        if isinstance(v, str):
            try:
                brand[k] = hex_to_color(v)
            except ValueError:
                pass

    brand.setdefault("neutral_white", colors.white)
    brand.setdefault("indigo", hex_to_color("#1e3a5f"))
    brand.setdefault("cyan_turquoise", hex_to_color("#187f76"))
    brand.setdefault("aztec_gold", hex_to_color("#c48c52"))
    brand.setdefault("light_silver", hex_to_color("#d7d9db"))
    return brand


def font_name(bold: bool = False, mono: bool = False) -> str:
    if mono:
        return "Courier-Bold" if bold else "Courier"
    return "Helvetica-Bold" if bold else "Helvetica"


def _choose_font(c: Any, size: int = 10, bold: bool = False, mono: bool = False, text_object: Any = None):
    target = text_object if text_object is not None else c
    target.setFont(font_name(bold, mono), size)


def wrap_line(line: str, width: float, size: int, mono: bool = True) -> List[str]:
    """Split one line so each piece fits `width` points; long tokens are cut hard."""
    name = font_name(mono=mono)
    if pdfmetrics.stringWidth(line, name, size) <= width:
        return [line]
    indent = len(line) - len(line.lstrip())
    out: List[str] = []
    cur = ""
    for word in line.split(" "):
        test = f"{cur} {word}" if cur else word
        if pdfmetrics.stringWidth(test, name, size) <= width:
            cur = test
            continue
        if cur:
            out.append(cur)
        while pdfmetrics.stringWidth(word, name, size) > width and len(word) > 1:
            cut = max(1, int(len(word) * width / pdfmetrics.stringWidth(word, name, size)))
            out.append(word[:cut])
            word = word[cut:]
        cur = " " * (indent + 2) + word
    if cur.strip():
        out.append(cur)
    return out


def draw_report_header(c: Any, brand: Dict[str, Any], title: str, subtitle: str) -> float:
    """Accent bar, subtitle and title; returns the y coordinate where the body starts."""
    w, h = A4
    try:
        c.setFillColor(brand.get("cyan_turquoise"))
        c.rect(0, h - 8 * mm, w, 8 * mm, fill=1, stroke=0)
    except Exception:
        pass

    c.setFillColor(brand.get("indigo"))
    _choose_font(c, 9)
    c.drawString(MARGIN_LEFT, h - (MARGIN_TOP + 2 * mm), subtitle.upper())
    _choose_font(c, 22, bold=True)
    c.drawString(MARGIN_LEFT, h - (MARGIN_TOP + 12 * mm), title)

    try:
        c.setStrokeColor(brand.get("light_silver"))
        c.setLineWidth(0.5)
        c.line(MARGIN_LEFT, h - (MARGIN_TOP + 16 * mm), w - MARGIN_RIGHT, h - (MARGIN_TOP + 16 * mm))
    except Exception:
        pass
    return h - (MARGIN_TOP + 24 * mm)


def draw_footer_block(c: Any, brand: Dict[str, Any], left: str, right: str):
    """One footer line (left and right aligned) above a thin accent bar."""
    w, _ = A4
    try:
        c.setFillColor(brand.get("aztec_gold"))
        _choose_font(c, 8)
        c.drawString(MARGIN_LEFT, 0.6 * inch, left)
        c.drawRightString(w - MARGIN_RIGHT, 0.6 * inch, right)
        c.setFillColor(brand.get("cyan_turquoise"))
        c.rect(0, 0, w, 4 * mm, fill=1, stroke=0)
    except Exception:
        pass
