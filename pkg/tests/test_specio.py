import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hochdual.core import complex_from_dims
from hochdual.dg import square_zero
from hochdual.specio import (CORPUS_NAMES, SpecError, corpus_builders, corpus_dir, dumps, from_dict, load,
                             loads, to_dict)


def test_shipped_corpus_matches_builders():
    builders = corpus_builders()
    assert sorted(builders) == sorted(CORPUS_NAMES)
    for name, build in builders.items():
        assert (corpus_dir() / f"{name}.json").read_text() == dumps(build())


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_round_trip_is_idempotent(name):
    text = (corpus_dir() / f"{name}.json").read_text()
    a = loads(text)
    assert dumps(a) == text
    assert dumps(loads(dumps(a))) == text


@settings(max_examples=20, deadline=None)
@given(st.dictionaries(st.integers(0, 3), st.integers(1, 3), min_size=1, max_size=3))
def test_square_zero_round_trip(dims):
    a = square_zero(complex_from_dims(dims, prefix="m"), name="sqz")
    b = loads(dumps(a))
    assert b.labels == a.labels and b.degrees == a.degrees and b.mult == a.mult and b.augmented


def test_coefficients_are_exact_strings():
    d = json.loads((corpus_dir() / "x3.json").read_text())
    d["mult"].append([d["basis"][1]["label"], d["basis"][1]["label"], []])
    with pytest.raises(SpecError):
        from_dict(d)   # duplicate product entry
    d = to_dict(loads((corpus_dir() / "sqz_2.json").read_text()))
    assert all(isinstance(t["coeff"], str) and "/" in t["coeff"] for _, _, out in d["mult"] for t in out)


def base_spec():
    return {"name": "t", "field": "Q", "basis": [{"label": "1", "degree": 0}, {"label": "x", "degree": 0}],
            "unit": "1", "mult": [["x", "x", [{"k": "x", "coeff": "1/2"}]]], "diff": []}


def test_rational_coefficient_parsed():
    d = base_spec()
    d["mult"] = [["x", "x", [{"k": "x", "coeff": "1/1"}]]]
    a = from_dict(d)
    assert a.mul(1, 1) == {1: Fraction(1)}


def test_associativity_violation_is_named():
    d = base_spec()
    d["basis"].append({"label": "y", "degree": 0})
    d["mult"] = [["x", "x", [{"k": "y", "coeff": "1/1"}]], ["x", "y", [{"k": "x", "coeff": "1/1"}]]]
    with pytest.raises(SpecError) as e:
        from_dict(d)
    assert "assoc" in str(e.value).lower()
    assert e.value.violations


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(field="F2"),
    lambda d: d.update(unit="z"),
    lambda d: d["basis"].append({"label": "x", "degree": 0}),
    lambda d: d.update(mult=[["x", "q", []]]),
    lambda d: d.update(mult=[["x", "x", [{"k": "x", "coeff": 0.5}]]]),
    lambda d: d.update(mult=[["x", "x", [{"k": "x", "coeff": "1/0"}]]]),
    lambda d: d.update(aug=[{"label": "x", "coeff": "1/1"}]),
    lambda d: d.pop("basis"),
])
def test_bad_specs_rejected(mutate):
    d = base_spec()
    mutate(d)
    with pytest.raises(SpecError):
        from_dict(d)


def test_non_object_json_rejected(tmp_path):
    with pytest.raises(SpecError):
        loads("[1, 2]")
    with pytest.raises(SpecError):
        loads("{not json")
    p = tmp_path / "a.json"
    p.write_text(json.dumps(base_spec()).replace('"1/2"', '"1/1"'))
    assert load(p).dim == 2
