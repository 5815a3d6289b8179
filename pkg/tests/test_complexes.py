from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shc import cyclic
from shc.complexes import (BudgetError, ChainVector, Cochain, TriangleIndex, chain_dim,
                           chain_space, cochain_dim, extract_subtriangle, get_budget,
                           lift_basis_map, pair_position, label_row, set_budget)
from shc.linalg import Mat
from shc.triple import BUILTIN_NAMES, builtin


def test_chain_dim_examples(T):
    assert chain_dim(T("T_dual"), 3) == 16
    assert chain_dim(T("T_full"), 2) == 64
    for name in BUILTIN_NAMES:
        assert chain_dim(T(name), 0) == T(name).dA


def test_cochain_dim_examples(T):
    assert cochain_dim(T("T_full"), 2) == 16
    assert cochain_dim(T("T_dual"), 3) == 16
    for name in BUILTIN_NAMES:
        assert cochain_dim(T(name), 0) == T(name).dA


def test_budget_error_names_dimension(T):
    with pytest.raises(BudgetError) as err:
        chain_dim(T("T_full"), 9)
    assert "2^10·2^45" in str(err.value)
    assert err.value.dim == 2 ** 55
    old = get_budget()
    try:
        set_budget(10)
        with pytest.raises(BudgetError):
            chain_space(builtin("T_dual"), 3)
    finally:
        set_budget(old)


def test_pair_positions_are_lexicographic():
    r = 4
    order = [(s, t) for s in range(r) for t in range(s + 1, r)]
    assert [pair_position(r, s, t) for s, t in order] == list(range(len(order)))


@pytest.mark.parametrize("name", ["T_dual", "T_full", "T_u2"])
def test_pack_unpack_round_trip(T, name):
    t = T(name)
    for p in range(0, 5):
        if chain_dim(t, p) > 40000:
            continue
        sp = chain_space(t, p)
        for idx in range(sp.dim):
            a, b = sp.unpack(idx)
            assert sp.pack(a, b) == idx
            assert sp.index(sp.triangle(idx)) == idx


def test_enumeration_order_a0_fastest(T):
    sp = chain_space(T("T_full"), 1)
    assert [sp.unpack(i) for i in range(4)] == [((0, 0), (0,)), ((1, 0), (0,)),
                                                 ((0, 1), (0,)), ((1, 1), (0,))]
    assert sp.unpack(4) == ((0, 0), (1,))


def test_extract_examples():
    x = TriangleIndex((0, 1, 0), (1, 0, 1))
    assert extract_subtriangle(x, 0, 2) == x
    assert extract_subtriangle(x, 1, 1) == TriangleIndex((1,), ())
    assert extract_subtriangle(x, 1, 2) == TriangleIndex((1, 0), (1,))
    with pytest.raises(IndexError):
        extract_subtriangle(x, 1, 3)


triangles = st.integers(1, 5).flatmap(lambda r: st.tuples(
    st.lists(st.integers(0, 2), min_size=r, max_size=r),
    st.lists(st.integers(0, 2), min_size=r * (r - 1) // 2, max_size=r * (r - 1) // 2)))


@settings(max_examples=100, deadline=None)
@given(triangles, st.data())
def test_extract_coherence(tri, data):
    a, b = tri
    x = TriangleIndex(tuple(a), tuple(b))
    r = len(a)
    i = data.draw(st.integers(0, r - 1))
    k = data.draw(st.integers(i, r - 1))
    j = data.draw(st.integers(i, k))
    inner = extract_subtriangle(x, i, k)
    assert extract_subtriangle(inner, 0, j - i) == extract_subtriangle(x, i, j)
    sub = extract_subtriangle(x, i, k)
    for s in range(i, k + 1):
        for t in range(s + 1, k + 1):
            assert sub.entry(s - i, t - i) == x.entry(s, t)


def test_label_row():
    assert label_row("chain", 0) == 0
    assert label_row("cochain", 1) == 0
    with pytest.raises(ValueError):
        label_row("other", 0)


def test_lift_basis_map_examples(T):
    t = T("T_dual")
    ident = lift_basis_map(t, 2, 2, lambda j: {j: 1})
    assert ident == Mat.identity(8, t.field)
    assert lift_basis_map(t, 2, 2, lambda j: {}).is_zero()
    tm = cyclic.t_matrix(t, 1)
    assert tm != Mat.identity(4, t.field)
    assert tm @ tm == Mat.identity(4, t.field)
    assert all(len(tm.column(j)) == 1 and list(tm.column(j).values()) == [1] for j in range(4))
    with pytest.raises(ValueError):
        lift_basis_map(t, 1, 1, lambda j: ChainVector.basis(t, 2, 0))


def test_chain_vector_json_round_trip(T):
    t = T("T_full")
    v = ChainVector(t, 2, {0: 1, 5: -3, 63: 2})
    doc = v.to_json_obj()
    assert doc["degree"] == 2 and len(doc["coords"]) == 3
    assert doc["coords"][0] == {"a": [0, 0, 0], "b": [0, 0, 0], "c": "1/1"}
    assert ChainVector.from_json_obj(t, doc) == v
    with pytest.raises(ValueError):
        ChainVector.from_json_obj(t, {"coords": []})


def test_cochain_json_round_trip(T):
    t = T("T_u2")
    f = Cochain(t, 1, {0: {0: 1}, 2: {1: -2, 2: 5}})
    doc = f.to_json_obj()
    assert len(doc["matrix"]) == t.dA and len(doc["matrix"][0]) == 3
    assert Cochain.from_json_obj(t, doc) == f
    assert Cochain.from_vector(t, 1, f.to_vector()) == f
    e = Cochain(t, 0, {0: {1: 1}})
    assert e.input_dim() == 1
