import json

import pytest

from ghlab.errors import ParseError, TriangleViolation
from ghlab.io import load_space, parse_csv, parse_json, save_space, space_to_json
from ghlab.metric import from_condensed


def test_parse_json_matrix_and_rho_agree():
    a = parse_json('{"matrix": [[0, 3, 4], [3, 0, 5], [4, 5, 0]]}')
    b = parse_json('{"n": 3, "rho": [3, 4, 5]}')
    assert a == b


def test_parse_json_labels():
    X = parse_json('{"labels": ["p", "q"], "matrix": [[0, 2], [2, 0]]}')
    assert X.labels == ("p", "q") or list(X.labels) == ["p", "q"]


@pytest.mark.parametrize("text", [
    "{not json",
    "[1, 2]",
    '{"matrix": [[0, NaN], [NaN, 0]]}',
    '{"rho": [Infinity]}',
    '{"rho": ["a"]}',
    '{"other": 1}',
    '{"n": 0, "rho": []}',
])
def test_parse_json_rejects(text):
    with pytest.raises(ParseError):
        parse_json(text)


def test_parse_json_metric_error_passes_through():
    with pytest.raises(TriangleViolation):
        parse_json('{"n": 3, "rho": [3, 8, 4]}')


def test_parse_csv():
    X = parse_csv("0,3,4\n3,0,5\n4,5,0\n")
    assert X.rho == (3.0, 4.0, 5.0)
    with pytest.raises(ParseError):
        parse_csv("0,x\nx,0\n")
    with pytest.raises(ParseError):
        parse_csv("")


@pytest.mark.parametrize("name, form", [("a.json", "condensed"), ("b.json", "matrix"), ("c.csv", None)])
def test_save_load_roundtrip(tmp_path, name, form):
    X = from_condensed([0.1, 0.30000000000000004, 0.25])
    path = tmp_path / name
    if form:
        save_space(X, path, form)
    else:
        save_space(X, path)
    assert load_space(path) == X


def test_space_to_json_is_serializable():
    X = from_condensed([1, 2, 2])
    assert json.loads(json.dumps(space_to_json(X))) == {"n": 3, "rho": [1.0, 2.0, 2.0]}
    with pytest.raises(ValueError):
        space_to_json(X, "yaml")
