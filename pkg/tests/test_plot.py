import statistics
import xml.etree.ElementTree as ET

import pytest

from siegelscan.plot import PlotSpec, column_stats, column_values, render, write_plot
from siegelscan.scan import ScanConfig, scan_range


@pytest.fixture(scope="module")
def rows():
    return list(scan_range(ScanConfig(3, 2000)))


def test_spec_validation():
    with pytest.raises(ValueError):
        PlotSpec(kind="pie", column="c1")
    with pytest.raises(ValueError):
        PlotSpec(kind="scatter", column="L")
    with pytest.raises(ValueError):
        PlotSpec(kind="histogram", column="c1", bins=0)
    with pytest.raises(ValueError):
        PlotSpec(kind="scatter", column="c1", qmin=100, qmax=10)


def test_stats_match_statistics_module(rows):
    spec = PlotSpec(kind="histogram", column="c2", qmin=5, qmax=2000)
    qs, vals = column_values(rows, spec)
    st = column_stats(vals)
    ref = [r.c2 for r in rows if r.q >= 5]
    assert st.count == len(ref)
    assert st.mean == pytest.approx(statistics.fmean(ref), rel=1e-14)
    assert st.std == pytest.approx(statistics.stdev(ref), rel=1e-12)


def test_histogram_svg(rows, tmp_path):
    spec = PlotSpec(kind="histogram", column="c1", bins=40, output_path=tmp_path / "h.svg")
    path = write_plot(rows, spec)
    root = ET.parse(path).getroot()
    bars = [e for e in root.iter("{http://www.w3.org/2000/svg}rect") if e.get("fill") == "steelblue"]
    assert len(bars) == 40
    text = path.read_text()
    assert "mean = " in text and "standard deviation = " in text
    assert 'stroke="red"' in text and "stroke-dasharray" in text


def test_scatter_svg(rows):
    spec = PlotSpec(kind="scatter", column="lli", reference_lines=((1.0, "LLI = 1"),), log_x=True)
    svg = render(rows, spec)
    ET.fromstring(svg)
    assert "LLI = 1" in svg and "mean = " in svg
    assert render(rows, spec) == svg


def test_empty_range_writes_nothing(rows, tmp_path):
    out = tmp_path / "none.svg"
    spec = PlotSpec(kind="scatter", column="c1", qmin=5000, qmax=6000, output_path=out)
    with pytest.raises(ValueError):
        write_plot(rows, spec)
    assert not out.exists()
    with pytest.raises(ValueError):
        write_plot([], PlotSpec(kind="histogram", column="c1", output_path=out))
    assert not out.exists()
