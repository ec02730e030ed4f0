import numpy as np
import orjson

from app.models import RegionSample, RegionTag, ThresholdRow
from app.persistence import (
    dumps_json,
    read_region_csv,
    region_csv,
    region_svg,
    save_region,
    save_svg,
    save_thresholds,
    thresholds_csv,
)


def _rows():
    return [
        ThresholdRow(P=2.5, mu1=0.366666667, mu2=0.7, mu3m=None, mu3p=None, mu4=0.95),
        ThresholdRow(P=3.0, mu1=7.0 / 18.0, mu2=11.0 / 14.0, mu3m=0.76, mu3p=0.94, mu4=0.97),
    ]


def test_thresholds_csv_blank_when_mu3_absent():
    lines = thresholds_csv(_rows()).splitlines()
    assert lines[0] == "P,mu1,mu2,mu3m,mu3p,mu4"
    assert lines[1] == "2.5,0.366666667,0.7,,,0.95"
    assert lines[2].startswith("3,0.388888889,0.785714286,0.76,0.94,")


def test_region_csv_round_trip(tmp_path):
    sample = RegionSample(points=np.array([0.5 + 0.25j, -1.0 + 0.0j]), tag=RegionTag.cardioid)
    text = region_csv([sample])
    assert text.splitlines()[0] == "re,im,tag"
    assert text.splitlines()[1] == "0.5,0.25,Cardioid"
    path = tmp_path / "out" / "region.csv"
    save_region(str(path), [sample])
    back = read_region_csv(str(path))
    assert back == [(0.5 + 0.25j, RegionTag.cardioid), (-1.0 + 0.0j, RegionTag.cardioid)]


def test_save_is_atomic(tmp_path):
    path = tmp_path / "thresholds.csv"
    save_thresholds(str(path), _rows())
    save_thresholds(str(path), _rows()[:1])
    assert path.read_text(encoding="utf-8").count("\n") == 2
    assert not (tmp_path / "thresholds.csv.tmp").exists()


def test_svg_layers(tmp_path):
    trace = RegionSample(points=np.exp(2j * np.pi * np.arange(16) / 16), tag=RegionTag.unit_circle)
    cloud = RegionSample(points=np.array([0.1 + 0.1j, -0.2j]), tag=RegionTag.wp_cloud)
    svg = region_svg([trace, cloud])
    assert svg.startswith("<svg")
    assert svg.count("<polyline") == 1
    assert svg.count("<circle") == 2
    # (0, 0) maps to the centre of the canvas
    assert region_svg([RegionSample(points=np.array([0j]), tag=RegionTag.wp_cloud)]).count('cx="240.00" cy="240.00"') == 1
    path = tmp_path / "fig.svg"
    save_svg(str(path), [trace])
    assert path.read_text(encoding="utf-8").rstrip().endswith("</svg>")


def test_json_handles_complex_and_numpy():
    text = dumps_json({"b": 1 + 2j, "a": np.array([1.0, 2.0])})
    assert text.index('"a"') < text.index('"b"')
    assert orjson.loads(text) == {"a": [1.0, 2.0], "b": [1.0, 2.0]}
