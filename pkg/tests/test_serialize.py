from .util import P, SHIPPED_SYSTEMS, segment_shift, shipped, systems, triangle
from rotset.errors import ParseError
from rotset.polygon import convex_hull, decompose, rotation_polygon
from rotset.serialize import (
    chart_from_dict,
    chart_to_dict,
    dumps,
    jsonable,
    lift_from_dict,
    lift_to_dict,
    load_file,
    loads,
    polygon_from_dict,
    polygon_to_dict,
    system_from_dict,
    system_to_dict,
    write_cloud_csv,
)
from rotset.sft import power_system
from rotset.torus import demo_chart
from fractions import Fraction
from hypothesis import given
import io
import json
import numpy as np
import pytest


def test_polygon_json_segment():
    d = polygon_to_dict(rotation_polygon(shipped("full_2_shift")))
    assert d == {"tag": "segment", "vertices": [["0/1", "0/1"], ["1/1", "0/1"]]}


def test_polygon_json_triangle():
    d = polygon_to_dict(rotation_polygon(shipped("triangle")))
    assert d["tag"] == "polygon"
    assert len(d["vertices"]) == 3


def test_fractions_are_reduced():
    assert jsonable(Fraction(6, 4)) == "3/2"
    assert jsonable(Fraction(-2, 4)) == "-1/2"
    assert jsonable(Fraction(0)) == "0/1"


def test_big_integers_are_strings():
    assert jsonable(2 ** 53) == str(2 ** 53)
    assert jsonable(2 ** 53 - 1) == 2 ** 53 - 1
    assert jsonable(-(2 ** 60)) == str(-(2 ** 60))


def test_numpy_values():
    assert jsonable(np.int64(3)) == 3
    assert jsonable(np.bool_(True)) is True
    assert jsonable(np.array([0.5, 1.0])) == [0.5, 1.0]


def test_sets_are_sorted():
    assert jsonable({P(1, 0), P(0, 0)}) == [["0/1", "0/1"], ["1/1", "0/1"]]


def test_unknown_type():
    with pytest.raises(TypeError):
        jsonable(object())


def test_dumps_is_deterministic():
    doc = {"b": Fraction(1, 3), "a": [P(1, 2)]}
    text = dumps(doc)
    assert text.endswith("\n")
    assert text == dumps(dict(reversed(list(doc.items()))))
    assert json.loads(text) == {"a": [["1/1", "2/1"]], "b": "1/3"}


def test_decomposition_json():
    dec = decompose(triangle(), (0, 1, 2, 0, 1))
    assert jsonable(dec) == {
        "cycles": [[0, 1, 2]],
        "remainder": [0, 1],
        "source_length": 5,
    }


@pytest.mark.parametrize("name", SHIPPED_SYSTEMS)
def test_shipped_system_round_trip(name):
    sys = shipped(name)
    assert system_from_dict(system_to_dict(sys)) == sys


@given(systems())
def test_system_round_trip(sys):
    assert system_from_dict(json.loads(dumps(system_to_dict(sys)))) == sys


def test_labels_survive():
    block = power_system(segment_shift(), 2)
    d = system_to_dict(block)
    assert d["labels"] == ["00", "01", "10", "11"]
    assert system_from_dict(d) == block


def test_polygon_round_trip():
    for poly in (
        rotation_polygon(triangle()),
        convex_hull([(0, 0), ("1/3", "2/7")]),
        convex_hull([("5/2", -1)]),
    ):
        assert polygon_from_dict(json.loads(dumps(poly))) == poly


def test_polygon_must_be_canonical():
    d = {"tag": "segment", "vertices": [["1/1", "0/1"], ["0/1", "0/1"]]}
    with pytest.raises(ParseError):
        polygon_from_dict(d)
    with pytest.raises(ParseError):
        polygon_from_dict({"tag": "point", "vertices": []})


def test_chart_round_trip():
    chart = demo_chart()
    assert chart_from_dict(json.loads(dumps(chart_to_dict(chart)))) == chart


def test_lift_round_trip():
    lift = lift_from_dict({"family": "standard", "params": {"a": "1/10", "b": 0}})
    again = lift_from_dict(lift_to_dict(lift))
    assert again == lift
    assert again.bound == pytest.approx(0.1)


@pytest.mark.parametrize(
    "text",
    [
        "{",
        '{"alphabet": 2}',
        '{"alphabet": "two", "transitions": [], "displacements": []}',
        '{"alphabet": 1, "transitions": [[0]], "displacements": [[1]]}',
        '{"alphabet": 1, "transitions": [0], "displacements": [[1, 0]]}',
        '{"alphabet": true, "transitions": [[0]], "displacements": [[1, 0]]}',
        "[]",
    ],
)
def test_malformed_systems(text):
    with pytest.raises(ParseError) as e:
        system_from_dict(loads(text))
    assert e.value.exit_code == 2


def test_malformed_lift():
    with pytest.raises(ParseError):
        lift_from_dict({"family": "translation", "params": {"v": ["1/0", 0]}})
    with pytest.raises(ParseError):
        lift_from_dict({"family": "translation", "params": []})


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_file(str(tmp_path / "nothing.json"))


def test_cloud_csv():
    buf = io.StringIO()
    write_cloud_csv(buf, np.array([[0.0, 0.5]]), np.array([[0.25, -1.0]]))
    lines = buf.getvalue().splitlines()
    assert lines == ["x,y,phi_x,phi_y", "0.0,0.5,0.25,-1.0"]
