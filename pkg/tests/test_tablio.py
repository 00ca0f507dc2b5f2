import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from psl2rc import cyclo
from psl2rc.chartab import build_char_table
from psl2rc.cyclo import Cyc, root_of_unity
from psl2rc.rational import rc_census
from psl2rc.tablio import (
    RaggedTable, SchemaError, TableSyntaxError, TablioError, census_file,
    cyc_to_json, parse, serialize,
)


def c3_bytes(data_dir):
    return (data_dir / "c3.ctbl.json").read_bytes()


@pytest.mark.parametrize("q", [2, 5, 7, 9, 16])
def test_round_trip_bytes(q):
    b = serialize(build_char_table(q))
    assert serialize(parse(b)) == b
    assert b.endswith(b"\n")


def test_census_matches(data_dir):
    r = census_file(serialize(build_char_table(13)))
    c = rc_census(13, use_oracle=False)
    assert (r.n_rational_classes, r.n_rational_characters) == (c.n_rational_classes, c.n_rational_characters)
    assert r.rational_class_labels == c.rational_class_labels
    assert not r.discrepancies


def test_c3_fixture(data_dir):
    b = c3_bytes(data_dir)
    assert serialize(parse(b)) == b
    r = census_file(b)
    assert (r.n_rational_classes, r.n_rational_characters) == (1, 1)
    assert not r.discrepancies


def test_cyc_json_forms():
    assert cyc_to_json(Cyc.rational(-3) / 4) == "-3/4"
    assert cyc_to_json(root_of_unity(3, 2)) == {"coeffs": {"0": "-1", "1": "-1"}, "n": 3}


def _c3_doc(data_dir):
    return json.loads(c3_bytes(data_dir))


def _dump(doc):
    return json.dumps(doc).encode()


def test_syntax_errors_have_positions():
    with pytest.raises(TableSyntaxError) as e:
        parse(b'{\n "a": [1,\n')
    assert e.value.line >= 2
    with pytest.raises(TableSyntaxError):
        parse(b'{"a": 1.5}')
    with pytest.raises(TableSyntaxError):
        parse(b'{"a": NaN}')
    with pytest.raises(TableSyntaxError):
        parse(b'{"a": 1, "a": 2}')
    with pytest.raises(TableSyntaxError) as e:
        parse(b'{\n"\xff"}')
    assert (e.value.line, e.value.col) == (2, 2)


def test_schema_errors(data_dir):
    doc = _c3_doc(data_dir)
    doc["characters"][1]["values"].pop()
    with pytest.raises(RaggedTable):
        parse(_dump(doc))

    doc = _c3_doc(data_dir)
    doc["classes"][0]["size"] = 1
    with pytest.raises(SchemaError) as e:
        parse(_dump(doc))
    assert e.value.path == "$.classes[0].size"

    doc = _c3_doc(data_dir)
    doc["format_version"] = "2"
    with pytest.raises(SchemaError):
        parse(_dump(doc))

    doc = _c3_doc(data_dir)
    doc["classes"][0]["size"] = "0"
    with pytest.raises(SchemaError):
        parse(_dump(doc))

    doc = _c3_doc(data_dir)
    doc["characters"][1]["values"][1]["n"] = 10 ** 9
    with pytest.raises(SchemaError):
        parse(_dump(doc))

    doc = _c3_doc(data_dir)
    doc["classes"][0]["size"] = "9" * 5000
    with pytest.raises(SchemaError):
        parse(_dump(doc))


def test_lenient_mode_collects_warnings(data_dir):
    doc = _c3_doc(data_dir)
    doc["extra"] = "x"
    doc["characters"][0]["values"][0] = "2/2"
    doc["characters"][1]["values"][1] = {"coeffs": {"3": "1"}, "n": 3}
    b = _dump(doc)
    with pytest.raises(SchemaError):
        parse(b)
    d = parse(b, strict=False)
    assert len(d.warnings) == 3
    r = census_file(b, strict=False)
    assert len(r.notes) == 3


def test_strict_rejects_rational_object(data_dir):
    doc = _c3_doc(data_dir)
    doc["characters"][0]["values"][0] = {"coeffs": {"0": "1"}, "n": 1}
    with pytest.raises(SchemaError):
        parse(_dump(doc))
    assert parse(_dump(doc), strict=False).characters[0].values[0] == 1


def test_conductor_cap_is_live(data_dir):
    old = cyclo.CONDUCTOR_CAP
    try:
        cyclo.set_conductor_cap(2)
        with pytest.raises(SchemaError):
            parse(c3_bytes(data_dir))
    finally:
        cyclo.set_conductor_cap(old)


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=200))
def test_random_bytes_give_structured_errors(b):
    try:
        parse(b)
    except TablioError:
        pass


def test_mutation_fuzz(data_dir):
    base = c3_bytes(data_dir)
    rng = random.Random(7)
    for _ in range(3000):
        b = bytearray(base)
        for _ in range(rng.randint(1, 4)):
            i = rng.randrange(len(b))
            b[i] = rng.randrange(256)
        try:
            census_file(bytes(b), strict=rng.random() < 0.5)
        except TablioError:
            pass
