from __future__ import annotations

import pytest

from shc import calculus, cyclic, mutation, operad
from shc.complexes import ChainVector, FormalCochain, chain_space
from shc.linalg import Mat
from shc.triple import BUILTIN_NAMES


def chain(t, a, b, c=1):
    sp = chain_space(t, len(a) - 1)
    return ChainVector(t, len(a) - 1, {sp.pack(tuple(a), tuple(b)): c})


def test_boundary_degree_one_formula(T):
    # d(a0 (x) b (x) a1) = eps(b) (a0 a1 - a1 a0), checked on every basis element
    for name in ("T_u2", "T_full"):
        t = T(name)
        for j in range(chain_space(t, 1).dim):
            (a0, a1), (b,) = chain_space(t, 1).unpack(j)
            e = t.eps_of({b: 1})
            want = {}
            for k, c in t.A.mul(e, t.A.mul({a0: 1}, {a1: 1})).items():
                want[k] = want.get(k, 0) + c
            for k, c in t.A.mul(e, t.A.mul({a1: 1}, {a0: 1})).items():
                want[k] = want.get(k, 0) - c
            got = cyclic.boundary(ChainVector.basis(t, 1, j))
            assert got == ChainVector(t, 0, want)


def test_boundary_dual_example(T):
    t = T("T_dual")
    assert cyclic.boundary(chain(t, [1, 1], [0])).is_zero()


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_boundary_squared_zero(T, name):
    t = T(name)
    top = 3 if name == "T_full" else 4
    for p in range(2, top + 1):
        assert (cyclic.boundary_matrix(t, p - 1) @ cyclic.boundary_matrix(t, p)).is_zero()


def test_bullet_examples(T):
    t = T("T_full")
    one, mu, e = operad.one(t), operad.mu(t), operad.e0(t)
    for j in range(chain_space(t, 2).dim):
        x = ChainVector.basis(t, 2, j)
        for i in range(3):
            assert cyclic.bullet(one, i, x) == x
        # mu .1 on (a0, a1, a2; b01, b02, b12) = a0 (x) b01 b02 (x) eps(b12) a1 a2 (dual numbers)
        (a0, a1, a2), (b01, b02, b12) = chain_space(t, 2).unpack(j)
        got = cyclic.bullet(mu, 1, x)
        diag, bb = a1 + a2 + b12, b01 + b02
        want = chain(t, [a0, diag], [bb]) if diag <= 1 and bb <= 1 else ChainVector(t, 1, {})
        assert got == want
    a = ChainVector.basis(t, 0, 1)
    assert cyclic.bullet(e, 0, a) == chain(t, [0, 1], [0])


def test_bullet_out_of_range_is_zero(T):
    t = T("T_dual")
    x = ChainVector.basis(t, 1, 3)
    f3 = FormalCochain(t, 3, "f")
    assert cyclic.bullet(f3, 1, x).is_zero()
    assert cyclic.bullet(operad.mu(t), 2, x).is_zero()
    # x (x) x multiplies to x^2 = 0, while 1 (x) 1 survives
    assert cyclic.bullet(operad.mu(t), 0, x).is_zero()
    assert not cyclic.bullet(operad.mu(t), 0, ChainVector.basis(t, 1, 0)).is_zero()


def test_t_degree_one(T):
    t = T("T_full")
    for j in range(chain_space(t, 1).dim):
        (a0, a1), (b,) = chain_space(t, 1).unpack(j)
        assert cyclic.cyclic_t(ChainVector.basis(t, 1, j)) == chain(t, [a1, a0], [b])


@pytest.mark.parametrize("name,top", [("T_dual", 4), ("T_full", 3), ("T_u2", 3)])
def test_t_order(T, name, top):
    t = T(name)
    for p in range(0, top + 1):
        tm = cyclic.t_matrix(t, p)
        power = Mat.identity(tm.rows, t.field)
        for _ in range(p + 1):
            power = tm @ power
        assert power == Mat.identity(tm.rows, t.field)


def test_faces_degree_one(T):
    t = T("T_u2")
    for j in range(chain_space(t, 1).dim):
        (a0, a1), (b,) = chain_space(t, 1).unpack(j)
        x = ChainVector.basis(t, 1, j)
        e = t.eps_of({b: 1})
        assert cyclic.face(0, x) == ChainVector(t, 0, t.A.mul(e, t.A.mul({a0: 1}, {a1: 1})))
        assert cyclic.face(1, x) == ChainVector(t, 0, t.A.mul(e, t.A.mul({a1: 1}, {a0: 1})))
    with pytest.raises(IndexError):
        cyclic.face(2, ChainVector.basis(t, 1, 0))


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_face_sum_equals_boundary(T, name):
    t = T(name)
    for p in range(1, 4):
        assert cyclic.face_sum_matrix(t, p) == cyclic.boundary_matrix(t, p)


def test_connes_B_degree_zero(T):
    t = T("T_full")
    for k in range(t.dA):
        a = ChainVector.basis(t, 0, k)
        assert cyclic.connes_B_full(a) == chain(t, [0, k], [0])


@pytest.mark.parametrize("name", ["T_dual", "T_full", "T_u2"])
def test_B_identities_normalized(T, name):
    t = T(name)
    for p in range(0, 2):
        assert (cyclic.connes_B_matrix(t, p + 1) @ cyclic.connes_B_matrix(t, p)).is_zero()
    for p in range(0, 3):
        lhs = cyclic.normalized_boundary_matrix(t, p + 1) @ cyclic.connes_B_matrix(t, p)
        if p:
            lhs = lhs + cyclic.connes_B_matrix(t, p - 1) @ cyclic.normalized_boundary_matrix(t, p)
        assert lhs.is_zero()


def test_normalized_examples(T):
    t = T("T_dual")
    assert cyclic.normalized_chains(t, 0).dim == 2
    assert cyclic.normalized_chains(T("T_triv"), 1).dim == 0
    N = cyclic.normalized_chains(t, 2)
    assert N.projection() @ N.inclusion() == Mat.identity(N.dim, t.field)
    degenerate = cyclic.degeneracy(0, ChainVector.basis(t, 1, 3))
    assert not N.project_vector(degenerate.coords)


@pytest.mark.parametrize("name", ["T_dual", "T_u2", "T_full"])
def test_normalized_homology_matches(T, name):
    t = T(name)
    top = 2 if name == "T_full" else 3
    assert calculus.normalized_homology(t, top).betti == calculus.homology(t, top).betti


def test_mutation_context_restores(T):
    t = T("T_dual")
    base = cyclic.boundary_matrix(t, 2)
    with mutation.mutate("boundary", 1):
        assert cyclic.boundary_matrix(t, 2) != base
        assert mutation.token() == (("boundary", 1),)
    assert cyclic.boundary_matrix(t, 2) == base
    assert mutation.token() == ()
    with pytest.raises(ValueError):
        with mutation.mutate("nonsense", 0):
            pass
