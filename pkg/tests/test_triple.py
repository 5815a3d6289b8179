from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shc.linalg import Field
from shc.triple import (BUILTIN_NAMES, TripleError, builtin, dump_json, load_json, multiply,
                        noncentral_fixture, validate)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtins_validate(name):
    assert validate(builtin(name)).ok
    assert validate(builtin(name, Field.Fp(101))).ok


def test_builtin_shapes():
    t = builtin("T_dual")
    assert (t.dA, t.dB) == (2, 1)
    u = builtin("T_u2")
    assert u.dA == 3 and not u.A.is_commutative()
    assert builtin("T_full").dB == 2
    with pytest.raises(KeyError):
        builtin("T_bogus")


def test_multiply_examples():
    dual = builtin("T_dual").A
    assert multiply(dual, [0, 1], [0, 1]) == [0, 0]
    assert multiply(dual, [1, 0], [3, 5]) == [3, 5]
    u2 = builtin("T_u2").A  # basis E11, E22, E12
    assert multiply(u2, [1, 0, 0], [0, 0, 1]) == [0, 0, 1]
    assert multiply(u2, [0, 0, 1], [1, 0, 0]) == [0, 0, 0]
    with pytest.raises(ValueError):
        multiply(u2, [1, 0], [1, 0, 0])


def test_noncentral_fixture_fails_centrality_only():
    t = load_json((FIXTURES / "noncentral.json").read_text())
    assert t == noncentral_fixture()
    report = validate(t)
    assert [c.name for c in report.failures] == ["eps.central"]
    # witness: b = x (eps(x) = E12) against a = E11
    assert report.failures[0].witness == (1, 0)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_json_round_trip(name):
    t = builtin(name)
    assert load_json(dump_json(t)) == t
    tp = builtin(name, Field.Fp(7))
    assert load_json(dump_json(tp)) == tp


def _doc():
    return json.loads(dump_json(builtin("T_dual")))


def test_schema_errors():
    doc = _doc()
    del doc["A"]["unit"]
    with pytest.raises(TripleError, match="unit"):
        load_json(json.dumps(doc))
    doc = _doc()
    doc["field"] = {"type": "Fp", "p": 15}
    with pytest.raises(TripleError, match="not prime"):
        load_json(json.dumps(doc))
    doc = _doc()
    doc["A"]["unit"][0] = "1/x"
    with pytest.raises(TripleError, match="rational"):
        load_json(json.dumps(doc))
    doc = _doc()
    doc["epsilon"] = [["1/1"]]
    with pytest.raises(TripleError, match="epsilon"):
        load_json(json.dumps(doc))
    with pytest.raises(TripleError):
        load_json("{not json")


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_eps_is_multiplicative_as_matrices(name):
    t = builtin(name)
    for i in range(t.dB):
        for j in range(t.dB):
            lhs = t.eps_of(t.B.mul({i: 1}, {j: 1}))
            rhs = t.A.mul(t.eps_of({i: 1}), t.eps_of({j: 1}))
            assert {k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}


scalars = st.integers(-5, 5)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(BUILTIN_NAMES), scalars, scalars, st.data())
def test_multiply_bilinear(name, alpha, beta, data):
    A = builtin(name).A
    vec = st.lists(scalars, min_size=A.dim, max_size=A.dim)
    x, y, z = data.draw(vec), data.draw(vec), data.draw(vec)
    lhs = multiply(A, [alpha * a + beta * b for a, b in zip(x, y)], z)
    xz, yz = multiply(A, x, z), multiply(A, y, z)
    assert lhs == [alpha * a + beta * b for a, b in zip(xz, yz)]
