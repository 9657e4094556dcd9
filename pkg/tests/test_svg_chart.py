"""Tests for the SVG correlation charts."""

import xml.etree.ElementTree as ET

import pytest

from dilaton_discord.config import Settings
from dilaton_discord.models.params import SweepConfig
from dilaton_discord.svg_chart import Series, SvgChart, write_correlation_charts
from dilaton_discord.sweep import compute_reports

SVG_NS = "{http://www.w3.org/2000/svg}"


def _polylines(path):
    root = ET.parse(path).getroot()
    return root.findall(f"{SVG_NS}polyline")


def _points(polyline):
    return [tuple(float(v) for v in pair.split(",")) for pair in polyline.get("points").split()]


@pytest.fixture(scope="module")
def charts(default_sweep, tmp_path_factory):
    reports = [r for r in default_sweep if r.params.alpha >= 0.5]
    stem = tmp_path_factory.mktemp("charts") / "dilaton"
    plot_config = Settings()._default_plot_config()
    return write_correlation_charts(reports, str(stem), plot_config), plot_config


class TestCorrelationCharts:
    def test_file_names(self, charts):
        (classical, quantum), _ = charts
        assert classical.name == "dilaton_classical.svg"
        assert quantum.name == "dilaton_quantum.svg"

    def test_one_polyline_per_series(self, charts):
        (classical, quantum), _ = charts
        assert [p.get("data-label") for p in _polylines(classical)] == ["C(B|A)", "C(A|B)"]
        assert [p.get("data-label") for p in _polylines(quantum)] == ["D(B|A)", "D(A|B)", "D(MID)"]

    def test_line_styles(self, charts):
        (classical, quantum), _ = charts
        solid, dashed = _polylines(classical)
        assert solid.get("stroke-dasharray") is None
        assert dashed.get("stroke-dasharray") == "8,4"
        assert _polylines(quantum)[2].get("stroke-dasharray") == "2,3"

    def test_series_inside_plot_area(self, charts):
        paths, config = charts
        top = config["margins"]["top"]
        bottom = config["canvas"]["height"] - config["margins"]["bottom"]
        for path in paths:
            for line in _polylines(path):
                for _, y in _points(line):
                    assert top <= y <= bottom

    def test_measuring_a_curve_stays_on_top(self, charts):
        (classical, _), _ = charts
        a, b = (_points(p) for p in _polylines(classical))
        # smaller y is higher on the canvas
        assert all(ya <= yb + 0.01 for (_, ya), (_, yb) in zip(a, b))
        assert a[-1][1] < b[-1][1] - 1.0

    def test_labels_and_legend(self, charts):
        (classical, _), _ = charts
        texts = [t.text for t in ET.parse(classical).getroot().iter(f"{SVG_NS}text")]
        assert "dilaton alpha" in texts
        assert "correlation (bits)" in texts
        assert "C(B|A)" in texts and "C(A|B)" in texts

    def test_suffix_stripped_from_stem(self, tmp_path):
        reports = compute_reports(SweepConfig(alpha_min=0.1, alpha_max=0.2, steps=2))
        classical, _ = write_correlation_charts(reports, str(tmp_path / "run.svg"), Settings()._default_plot_config())
        assert classical.name == "run_classical.svg"


class TestSvgChart:
    def test_labels_escaped(self):
        chart = SvgChart(Settings()._default_plot_config())
        svg = chart.render([Series("a<b & c", [0.0, 1.0], [0.5, 1.5])], "t", "x", "y")
        root = ET.fromstring(svg)
        assert root.find(f"{SVG_NS}polyline").get("data-label") == "a<b & c"
        assert "<!DOCTYPE" not in svg

    def test_values_clipped_to_axis_range(self):
        config = Settings()._default_plot_config()
        chart = SvgChart(config)
        svg = chart.render([Series("s", [0.0, 1.0], [-1.0, 3.0])], "t", "x", "y")
        ys = [p[1] for p in _points(ET.fromstring(svg).find(f"{SVG_NS}polyline"))]
        assert ys == [config["canvas"]["height"] - config["margins"]["bottom"], config["margins"]["top"]]
