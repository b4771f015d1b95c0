import io

import jsonschema
import pytest
from hypothesis import given

from hamvc.configs import find_fist, witness_from_config
from hamvc.core import HammingParams, PointSet
from hamvc.formats import SCHEMA_NAMES, FormatError, format_point_set, load_schema, parse_point_set, read_point_set
from hamvc.shatter import vc_dimension

from conftest import point_sets


def parse(text):
    return parse_point_set(io.StringIO(text))


def test_parse_with_comments_and_blanks():
    U = parse("# header\n\n2 3 1\n0 0  # origin\n\n2 1\n")
    assert U.params == HammingParams(2, 3, 1)
    assert U.points == ((0, 0), (2, 1))


def test_empty_body_is_empty_set():
    assert parse("2 4 1\n").size == 0


@pytest.mark.parametrize(
    "text,line,msg",
    [
        ("2 3 1\n0 0\n1 1\n0 0\n", 4, "duplicate"),
        ("2 3 1\n0 3\n", 2, "outside"),
        ("2 3 1\n0 -1\n", 2, "outside"),
        ("2 3 1\n0 0 0\n", 2, "coordinates"),
        ("2 3\n", 1, "header"),
        ("2 3 1\n0 x\n", 2, "integers"),
        ("0 3 1\n", 1, "d >= 1"),
    ],
)
def test_parse_errors_name_the_line(text, line, msg):
    with pytest.raises(FormatError, match=msg) as e:
        parse(text)
    assert e.value.line == line


def test_missing_header():
    with pytest.raises(FormatError, match="header"):
        parse("# only comments\n")


@given(point_sets())
def test_text_round_trip(U):
    assert parse(format_point_set(U, ["a comment"])) == U


def test_read_from_path(tmp_path):
    f = tmp_path / "u.pts"
    f.write_text("2 4 1\n1 1\n")
    assert read_point_set(f).points == ((1, 1),)


def test_schemas_load_and_validate():
    for name in SCHEMA_NAMES:
        jsonschema.Draft202012Validator.check_schema(load_schema(name))
    U = PointSet.full(HammingParams(2, 4))
    res = vc_dimension(U)
    jsonschema.validate(res.to_json(), load_schema("vc_result"))
    jsonschema.validate(res.witness.to_json(), load_schema("witness"))
    c = find_fist(U)
    obj = c.to_json()
    obj["witness"] = witness_from_config(c, U).to_json()
    jsonschema.validate(obj, load_schema("configuration"))
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"W": [], "assignments": [{"S": []}]}, load_schema("witness"))
