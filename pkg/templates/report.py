"""PDF rendering of task records."""
import os
from datetime import datetime, timezone
from typing import List, Optional

from pydantic import BaseModel

from templates.common import (
    A4,
    BOTTOM_RESERVED,
    MARGIN_LEFT,
    MARGIN_RIGHT,
    MARGIN_TOP,
    _choose_font,
    canvas,
    draw_footer_block,
    draw_report_header,
    load_brand_colors,
    wrap_line,
)

FONT_SIZE = 9
LEADING = 12


def generate(record: BaseModel, output_path: Optional[str] = None, title: Optional[str] = None,
             lines: Optional[List[str]] = None) -> str:
    """Render `lines` (or the record's JSON when none are given) into a paginated PDF."""
    brand = load_brand_colors()
    w, h = A4
    if output_path is None:
        output_path = os.path.join(os.path.dirname(os.path.dirname(__file__)), "output", "report.pdf")
    title = title or type(record).__name__
    if lines is None:
        lines = record.model_dump_json(indent=2, exclude_none=True).splitlines()
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M UTC")
    subtitle = "ospq exact invariants"
    width = w - MARGIN_LEFT - MARGIN_RIGHT

    c = canvas.Canvas(output_path, pagesize=A4)
    page = 1

    def start_page(first: bool):
        if first:
            y0 = draw_report_header(c, brand, title, subtitle)
        else:
            y0 = h - MARGIN_TOP
        text = c.beginText(MARGIN_LEFT, y0)
        _choose_font(c, FONT_SIZE, mono=True, text_object=text)
        text.setFillColor(brand["indigo"])  # type: ignore
        text.setLeading(LEADING)
        return text, y0

    def finish_page():
        c.drawText(text_obj)
        draw_footer_block(c, brand, f"{title}  |  generated {stamp}", f"page {page}")
        c.showPage()

    text_obj, y = start_page(first=True)
    for line in lines:
        for piece in wrap_line(line, width, FONT_SIZE):
            if y - LEADING < BOTTOM_RESERVED:
                finish_page()
                page += 1
                text_obj, y = start_page(first=False)
            text_obj.textLine(piece)
            y -= LEADING
    finish_page()
    c.save()
    return output_path
