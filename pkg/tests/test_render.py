import xml.etree.ElementTree as ET

import pytest

from rainbowcert.errors import LayoutFailure
from rainbowcert.render import interior_point, render_svg
from support import chekanov, twisted_example, torus

NS = "{http://www.w3.org/2000/svg}"


def _labels(svg):
    root = ET.fromstring(svg)
    return {t.get("data-label") for t in root.iter(NS + "text")}


def test_trefoil_labels():
    labels = _labels(render_svg(torus(2, 3)))
    assert {"α_1", "α_2", "r_{1,1}", "r_{1,2}", "r_{1,3}"} <= labels
    assert {"B_1", "B_2", "A_1", "A_2", "R_{1,1}", "R_{1,2}"} <= labels


@pytest.mark.parametrize("d", [torus(2, 3), twisted_example(), chekanov("left"), chekanov("right")], ids=repr)
def test_layers_and_determinism(d):
    svg = render_svg(d)
    assert svg == render_svg(d)
    root = ET.fromstring(svg)
    groups = [g.get("id") for g in root if g.tag == NS + "g"]
    assert groups == ["strands", "crossings", "labels"]
    assert len(root.find(NS + "g").findall(NS + "polyline")) == len(d.edges)


def test_twisted_example_block_structure():
    d = twisted_example()
    labels = _labels(render_svg(d))
    assert {"α_1", "α_2", "α_3", "α_4"} <= labels
    assert sum(1 for l in labels if l.startswith("r_")) == 15


def test_generic_labels():
    labels = _labels(render_svg(chekanov("left")))
    assert {f"a_{i}" for i in range(1, 10)} <= labels
    assert {"A_4", "B_6"} <= labels


def test_interior_point():
    L = [(0, 0), (4, 0), (4, 1), (1, 1), (1, 4), (0, 4)]
    x, y = interior_point(L)
    assert 0 < x < 4 and 0 < y < 4 and not (x > 1 and y > 1)


def test_nonplanar_rotation_fails():
    import networkx as nx

    from rainbowcert import render

    class Broken(nx.PlanarEmbedding):
        def check_structure(self):
            raise nx.NetworkXException("bad rotation")

    orig = render.nx.PlanarEmbedding
    render.nx.PlanarEmbedding = Broken
    try:
        with pytest.raises(LayoutFailure):
            render_svg(chekanov("left"))
    finally:
        render.nx.PlanarEmbedding = orig
