from __future__ import annotations

import logging
import math
import sys
from typing import Any, Dict, Optional

import numpy as np

DEFAULT_SEED = 42

_LOG_FORMAT = "%(asctime)sZ %(levelname)s %(name)s event=%(message)s extra=%(extra)s"


class _ExtraDefault(logging.Filter):
    """Give records from plain loggers an empty ``extra`` so the format never breaks."""

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, "extra"):
            record.extra = {}
        return True


def setup_logging(level: str = "WARNING", force: bool = True) -> None:
    """Route records to stderr in the key/value format.

    With ``force=False`` an already configured root logger is left alone.
    """
    if not force and logging.getLogger().handlers:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.addFilter(_ExtraDefault())
    handler.setFormatter(logging.Formatter(_LOG_FORMAT, datefmt="%Y-%m-%dT%H:%M:%S"))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        handlers=[handler],
        force=force,
    )


class StructuredAdapter(logging.LoggerAdapter):
    def process(self, msg: str, kwargs: Dict[str, Any]):
        extra = kwargs.get("extra", {})
        kwargs["extra"] = {"extra": extra}
        return msg, kwargs


def get_logger(name: str) -> StructuredAdapter:
    return StructuredAdapter(logging.getLogger(name), {})


def fmt9(x: Optional[float]) -> str:
    """9 significant digits, locale independent; ``None`` renders as empty."""
    if x is None:
        return ""
    if x == 0:
        return "0"
    if math.isnan(x) or math.isinf(x):
        return repr(float(x))
    return format(float(x), ".9g")


def fmt_fixed9(x: float) -> str:
    return format(float(x), ".9f")


def make_rng(seed: int = DEFAULT_SEED) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_disk_points(rng: np.random.Generator, n: int, radius: float = 1.0) -> np.ndarray:
    """Uniform points in the closed disk of the given radius."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    return r * np.exp(1j * theta)


def random_circle_points(rng: np.random.Generator, n: int) -> np.ndarray:
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, n))
