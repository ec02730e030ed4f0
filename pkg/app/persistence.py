from __future__ import annotations

import csv
import io
import os
from typing import Any, Iterable, List, Sequence, Tuple

import numpy as np
import orjson

from .models import RegionSample, RegionTag, ThresholdRow
from .utils import fmt9

THRESHOLD_COLUMNS = ("P", "mu1", "mu2", "mu3m", "mu3p", "mu4")
REGION_COLUMNS = ("re", "im", "tag")

SVG_SIZE = 480
SVG_EXTENT = 1.25
_SVG_STYLE = {
    RegionTag.omega_boundary: ("polyline", "#1f5fbf"),
    RegionTag.cardioid: ("polyline", "#c0392b"),
    RegionTag.unit_circle: ("polyline", "#555555"),
    RegionTag.wp_cloud: ("points", "#2e8b57"),
}


def atomic_write_text(file_path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(file_path))
    os.makedirs(directory, exist_ok=True)
    tmp = file_path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    os.replace(tmp, file_path)


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def thresholds_csv(rows: Sequence[ThresholdRow]) -> str:
    return _csv_text(
        THRESHOLD_COLUMNS,
        ([fmt9(r.P), fmt9(r.mu1), fmt9(r.mu2), fmt9(r.mu3m), fmt9(r.mu3p), fmt9(r.mu4)] for r in rows),
    )


def region_csv(samples: Sequence[RegionSample]) -> str:
    def rows():
        for sample in samples:
            tag = RegionTag(sample.tag).value
            for z in np.asarray(sample.points, dtype=complex):
                yield fmt9(z.real), fmt9(z.imag), tag

    return _csv_text(REGION_COLUMNS, rows())


def read_region_csv(file_path: str) -> List[Tuple[complex, RegionTag]]:
    with open(file_path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        return [(complex(float(row["re"]), float(row["im"])), RegionTag(row["tag"])) for row in reader]


def _to_px(z: complex) -> Tuple[str, str]:
    scale = SVG_SIZE / (2.0 * SVG_EXTENT)
    x = (z.real + SVG_EXTENT) * scale
    y = (SVG_EXTENT - z.imag) * scale
    return format(x, ".2f"), format(y, ".2f")


def region_svg(samples: Sequence[RegionSample]) -> str:
    """Polylines for boundary traces (closed), dots for point clouds."""
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>',
    ]
    for sample in samples:
        kind, color = _SVG_STYLE[RegionTag(sample.tag)]
        pts = [_to_px(complex(z)) for z in np.asarray(sample.points, dtype=complex)]
        if kind == "polyline":
            coords = " ".join(f"{x},{y}" for x, y in pts + pts[:1])
            parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1" points="{coords}"/>')
        else:
            parts.append(f'<g fill="{color}">')
            parts.extend(f'<circle cx="{x}" cy="{y}" r="0.6"/>' for x, y in pts)
            parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _default(obj: Any) -> Any:
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"not serialisable: {type(obj).__name__}")


def dumps_json(data: Any) -> str:
    opts = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY
    return orjson.dumps(data, default=_default, option=opts).decode("utf-8")


def save_thresholds(file_path: str, rows: Sequence[ThresholdRow]) -> None:
    atomic_write_text(file_path, thresholds_csv(rows))


def save_region(file_path: str, samples: Sequence[RegionSample]) -> None:
    atomic_write_text(file_path, region_csv(samples))


def save_svg(file_path: str, samples: Sequence[RegionSample]) -> None:
    atomic_write_text(file_path, region_svg(samples))
