"""Shared task helpers: input loading, exact/approximate value fields, and emission
in text, JSON or PDF form."""
from typing import Optional, Sequence, Tuple
import json
import logging
import math
import os

from pydantic import BaseModel, ValidationError

from ospq.config import Limits, load_limits
from ospq.cyclo import Scalar
from ospq.errors import ParseError
from ospq.invariant import FramedLink
from ospq.schemas import Approx, JobInput, JobSpec
from templates import report

log = logging.getLogger(__name__)

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
OUTPUT_DIR = os.path.abspath(os.path.join(BASE_DIR, "..", "output"))


def read_text(path: Optional[str], what: str) -> str:
    if not path:
        raise ParseError(f"this task needs an input {what} (-f/--file)")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as exc:
        raise ParseError(f"cannot read {what} {path}: {exc.strerror or exc}") from None


def parse_link_text(text: str) -> Tuple[JobInput, FramedLink]:
    """Decode and validate a link file; returns the raw input and the framed link."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    try:
        job_input = JobInput.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "<root>"
        raise ParseError(f"schema violation at {where}: {first['msg']}", details=str(exc)) from None
    return job_input, FramedLink.from_spec(job_input.link)


def parse_link_file(path: Optional[str]) -> Tuple[JobInput, FramedLink]:
    return parse_link_text(read_text(path, "link file"))


def approx(value: Scalar, limits: Optional[Limits] = None) -> Approx:
    limits = limits or load_limits()
    digits = max(1, round(-math.log10(limits.display_precision)))
    z = value.to_complex()
    re, im = round(z.real, digits), round(z.imag, digits)
    # -0.0 would break byte-identical output
    return Approx(re=re + 0.0, im=im + 0.0)


def format_scalar(value: Scalar, limits: Optional[Limits] = None) -> str:
    a = approx(value, limits)
    return f"{value}  ~ {a.re:+.12f} {a.im:+.12f}i"


def default_output(job: JobSpec, suffix: str) -> str:
    return os.path.join(OUTPUT_DIR, f"{job.task}.{suffix}")


def _write(path: Optional[str], payload: str) -> None:
    if path is None:
        print(payload, end="")
        return
    out_dir = os.path.dirname(os.path.abspath(path))
    os.makedirs(out_dir, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(payload)
    log.info("wrote %s", path)


def emit(job: JobSpec, record: BaseModel, lines: Sequence[str], title: str) -> None:
    """Write the record in the requested format; text and PDF share the same lines."""
    if job.format == "json":
        _write(job.output_path, record.model_dump_json(indent=2, exclude_none=True) + "\n")
    elif job.format == "pdf":
        path = job.output_path or default_output(job, "pdf")
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        report.generate(record, path, title=title, lines=list(lines))
        print(f"Generated {path}")
    else:
        _write(job.output_path, "\n".join(lines) + "\n")
