import xml.etree.ElementTree as ET

import pytest

from simparr.arrangement import Arrangement
from simparr.families import gen_family
from simparr.projective import ProjLine
from simparr.render import VIEW, clip_line, picture, render_svg

NS = "{http://www.w3.org/2000/svg}"


def _tags(text):
    root = ET.fromstring(text)
    return [el.tag.removeprefix(NS) for el in root.iter()]


def test_triangle_arrangement_svg():
    text = render_svg(gen_family("R1", 3))
    tags = _tags(text)
    assert tags.count("line") == 6 and tags.count("circle") == 7


def test_chart_sends_a_line_to_infinity():
    A = gen_family("R1", 3)
    pic = picture(A, chart=0)
    assert len(pic.segments) == 5
    assert all(i != 0 for i, _, _ in pic.segments)


def test_chart_out_of_range():
    with pytest.raises(ValueError):
        picture(gen_family("R1", 3), chart=6)


def test_empty_arrangement():
    with pytest.raises(ValueError):
        picture(Arrangement(()))


def test_two_lines_draw_their_crossing():
    pic = picture(Arrangement((ProjLine(1, 0, 0), ProjLine(0, 1, 0))))
    assert len(pic.segments) == 2 and [d[2] for d in pic.dots] == [(0.0, 0.0)]


def test_output_is_deterministic():
    A = gen_family("R2", 6)
    assert render_svg(A) == render_svg(A)


def test_clip_line():
    (x0, y0), (x1, y1) = clip_line(1.0, 0.0, -1.0)
    assert x0 == x1 == 1.0 and {y0, y1} == {-VIEW, VIEW}
    assert clip_line(1.0, 0.0, -10.0) is None
    assert clip_line(0.0, 0.0, 1.0) is None
