import xml.etree.ElementTree as ET

from lacunary_ldp.figure import curves_csv, curves_svg
from lacunary_ldp.ratefn import PLUS_INFINITY, RateCurve, RateSample


def _curves():
    xs = [-0.5, 0.0, 0.5]
    return [RateCurve(name, tuple(RateSample(x, abs(x) * (i + 1), x) for x in xs))
            for i, name in enumerate(["I_tilde", "I_2", "I_3", "I_4"])]


def test_csv_layout():
    curves = _curves()
    curves[0] = RateCurve("I_tilde", curves[0].samples[:2] + (RateSample(0.5, PLUS_INFINITY, None),))
    lines = curves_csv(curves).splitlines()
    assert lines[0] == "x,I_tilde,I_2,I_3,I_4"
    assert lines[2].startswith("0.0,0.0")
    assert lines[3].split(",")[1] == "inf"


def test_svg_colors_and_labels():
    svg = curves_svg(_curves())
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    for color in ("#2ca02c", "#1f77b4", "#d62728", "#ff7f0e"):
        assert color in svg
    for label in ("I_tilde", "I_2", "I_3", "I_4"):
        assert f">{label}<" in svg
