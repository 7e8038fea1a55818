import math
from fractions import Fraction

import pytest
from hypothesis import given

from dcx import Box, DiscreteFunction, DiscreteSet, io
from dcx.catalog import catalog
from dcx.descriptions import IntervalBounds

from strategies import discrete_functions, discrete_sets


def test_malformed_json_position():
    with pytest.raises(io.ParseError) as e:
        io.loads('{"dim": 2,\n "points": [[0, 0],, ]}')
    assert e.value.line == 2 and e.value.col is not None
    assert str(e.value).startswith("line 2 column")


@pytest.mark.parametrize("data,path", [
    ({"dim": 2, "points": [[0, 0], [1]]}, "$.points[1]"),
    ({"dim": 2, "points": [[0, 0], [1, "a"]]}, "$.points[1][1]"),
    ({"dim": 2, "points": []}, "$.points"),
    ({"dim": 0, "points": [[]]}, "$.dim"),
    ({"dim": 1, "entries": [{"x": [0], "v": "1/0"}]}, "$.entries[0].v"),
    ({"dim": 1, "entries": [{"x": [0], "v": 1}, {"x": [0], "v": 2}]}, "$.entries[1].x"),
    ({"dim": 1, "entries": [{"x": [0]}]}, "$.entries[0]"),
    ({"size": 3}, "$"),
])
def test_schema_errors_name_the_path(data, path):
    with pytest.raises(io.ParseError) as e:
        io.object_from_json(data)
    assert e.value.path == path


def test_scale_guard():
    with pytest.raises(io.ScaleGuardError):
        io.object_from_json({"dim": 9, "points": [[0] * 9]})
    assert io.object_from_json({"dim": 9, "points": [[0] * 9]}, max_dim=9).dim == 9


@given(discrete_sets())
def test_set_round_trip(S):
    assert io.object_from_json(io.loads(io.dumps(io.object_to_json(S)))) == S


@given(discrete_functions())
def test_function_round_trip(f):
    assert io.object_from_json(io.loads(io.dumps(io.object_to_json(f)))) == f


def test_windowed_function_round_trip():
    w = Box.cube(2, 1)
    f = DiscreteFunction(2, {(0, 0): Fraction(1, 3)}, w)
    assert io.object_from_json(io.object_to_json(f)) == f


def test_catalog_entries_serialize_and_feed_classify():
    for e in catalog().values():
        data = io.loads(io.dumps(e.to_json()))
        obj, certs = io.classify_input_from_json(data)
        assert obj == e.object and set(certs) == set(e.certificates)


def test_bad_certificate_class():
    data = {"object": {"dim": 1, "points": [[0]]}, "certificates": {"Lnat": {"kind": "minkowski", "parts": []}}}
    with pytest.raises(io.ParseError) as e:
        io.classify_input_from_json(data)
    assert e.value.path == "$.certificates.Lnat"


def test_bad_certificate_kind():
    part = {"dim": 1, "points": [[0]]}
    data = {"object": part, "certificates": {"L2nat": {"kind": "glue", "parts": [part, part]}}}
    with pytest.raises(io.ParseError) as e:
        io.classify_input_from_json(data)
    assert e.value.path == "$.certificates.L2nat.kind"


def test_infinite_values_serialize():
    b = IntervalBounds(2, {(1, 1): (0, math.inf), (1, 2): (-math.inf, 3), (2, 2): (0, 1)})
    text = io.dumps(io.description_to_json(b))
    assert "Infinity" not in text and '"+inf"' in text
    back = io.interval_bounds_from_json(io.loads(text))
    assert back == b


def test_description_errors():
    with pytest.raises(io.ParseError):
        io.rank_from_json({"n": 2, "r": [{"a": 1, "b": 1, "v": 0}]})
    with pytest.raises(io.ParseError) as e:
        io.interval_bounds_from_json({"n": 2, "bounds": [{"a": 2, "b": 3, "lo": 0, "hi": 1}]})
    assert e.value.path == "$.bounds[0]"
