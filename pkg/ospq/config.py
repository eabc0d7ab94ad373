"""Computation caps: load assets/limits.json, apply the OSPQ_MAX_WIDTH override."""
from dataclasses import dataclass, field
from typing import Dict, Optional
import json
import logging
import os

from ospq.errors import ConfigError, UnsupportedRegime

log = logging.getLogger(__name__)

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
ASSETS_DIR = os.path.abspath(os.path.join(BASE_DIR, "..", "assets"))
WIDTH_ENV = "OSPQ_MAX_WIDTH"


@dataclass(frozen=True)
class Limits:
    max_rank: int = 4
    max_width: Dict[int, int] = field(default_factory=lambda: {1: 8, 2: 5, 3: 3, 4: 2})
    display_precision: float = 1e-12
    default_parallel: int = 1
    width_override: Optional[int] = None

    def width_cap(self, n: int) -> int:
        if self.width_override is not None:
            return self.width_override
        return self.max_width.get(n, 1)


def _positive_int(key: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(f"Invalid limit {key!r}: expected a positive integer, got {value!r}")
    return value


def load_limits(path: Optional[str] = None) -> Limits:
    """Load limits from JSON, falling back to defaults for missing keys."""
    path = path or os.path.join(ASSETS_DIR, "limits.json")
    data: Dict[str, object] = {}
    if os.path.isfile(path):
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f) or {}
    else:
        log.info("no limits file at %s, using defaults", path)

    data.setdefault("max_rank", 4)
    data.setdefault("max_width", {"1": 8, "2": 5, "3": 3, "4": 2})
    data.setdefault("display_precision", 1e-12)
    data.setdefault("default_parallel", 1)

    widths = {}
    raw_widths = data["max_width"]
    if not isinstance(raw_widths, dict):
        raise ConfigError("Invalid limit 'max_width': expected an object keyed by rank")
    for k, v in raw_widths.items():
        try:
            rank = int(k)
        except ValueError:
            raise ConfigError(f"Invalid rank key in max_width: {k!r}") from None
        widths[rank] = _positive_int(f"max_width[{k}]", v)

    precision = data["display_precision"]
    if not isinstance(precision, (int, float)) or not 0 < precision < 1:
        raise ConfigError(f"Invalid limit 'display_precision': {precision!r}")

    override = None
    env = os.environ.get(WIDTH_ENV)
    if env is not None and env.strip():
        try:
            override = _positive_int(WIDTH_ENV, int(env))
        except ValueError:
            raise ConfigError(f"{WIDTH_ENV} must be a positive integer, got {env!r}") from None
        log.info("width cap overridden to %d by %s", override, WIDTH_ENV)

    return Limits(
        max_rank=_positive_int("max_rank", data["max_rank"]),
        max_width=widths,
        display_precision=float(precision),
        default_parallel=_positive_int("default_parallel", data["default_parallel"]),
        width_override=override,
    )


def check_rank(n: int, limits: Optional[Limits] = None) -> None:
    limits = limits or load_limits()
    if n < 1 or n > limits.max_rank:
        raise UnsupportedRegime(f"rank n={n} outside the supported range 1..{limits.max_rank}")


def check_width(n: int, t: int, limits: Optional[Limits] = None) -> None:
    limits = limits or load_limits()
    cap = limits.width_cap(n)
    if t > cap:
        raise UnsupportedRegime(
            f"tensor width {t} exceeds the cap {cap} for rank {n}",
            details=f"raise it in assets/limits.json or with {WIDTH_ENV}",
        )
