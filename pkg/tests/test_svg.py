import re
import xml.dom.minidom

from gridspan.arrangements import OrientedLine
from gridspan.projective import P, frame_configuration, von_staudt_extend
from gridspan.svg import render_arrangement, render_configuration, render_instance


def parse(text):
    doc = xml.dom.minidom.parseString(text.encode())
    root = doc.documentElement
    assert root.tagName == "svg" and root.getAttribute("version") == "1.1"
    return doc


def test_two_lines_four_chambers():
    text = render_arrangement([OrientedLine((1, 0), 0), OrientedLine((0, 1), 0)])
    doc = parse(text)
    assert len(doc.getElementsByTagName("line")) == 2
    labels = [t.firstChild.data for t in doc.getElementsByTagName("text") if t.getAttribute("class") == "chamber"]
    assert sorted(labels) == ["++", "+-", "-+", "--"]


def test_point_labels_are_sign_vectors():
    text = render_arrangement([OrientedLine((1, 0), 0), OrientedLine((0, 1), 0)], points=[(1, 0)], chambers=False)
    assert ">+0<" in text


def test_von_staudt_addition_figure():
    cfg = frame_configuration()
    a = cfg.extend(P(2), None, "P2")
    b = cfg.extend(P(3), None, "P3")
    cfg = von_staudt_extend(cfg, "add", a, b)
    doc = parse(render_configuration(cfg))
    labels = [t.firstChild.data for t in doc.getElementsByTagName("text")]
    # A2 lies on l(Pinf, Q), the line at infinity, so it is listed in the legend
    legend = next(s for s in labels if s.startswith("at infinity"))
    assert {"A1", "A3", "A4"} <= set(labels) and "A2" in legend


def test_udg_instance_circle_count(udg1, hp1):
    doc = parse(render_instance(udg1))
    assert len(doc.getElementsByTagName("circle")) == 2 * len(hp1.lines) + len(hp1.signs)


def test_seg_instance_segment_count(seg1):
    bundle, _ = seg1
    doc = parse(render_instance(bundle))
    assert len(doc.getElementsByTagName("line")) == len(bundle.segments)


def test_numbers_use_twelve_digits():
    text = render_arrangement([OrientedLine((3, 7), 1), OrientedLine((1, -11), 2), OrientedLine((5, 1), -3)])
    nums = re.findall(r'x1="([^"]+)"', text)
    assert nums and all(len(n.replace("-", "").replace(".", "").lstrip("0")) <= 12 for n in nums)
