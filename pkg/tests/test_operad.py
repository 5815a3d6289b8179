from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shc import calculus, operad
from shc.complexes import Cochain, FormalCochain, input_space, linear_combination
from shc.symbolic import scalar_is_zero


def same(f, g) -> bool:
    """Exact equality of (possibly formal) cochains, column by column."""
    if f.degree != g.degree:
        return False
    F = f.triple.field
    for t in range(f.input_dim()):
        x, y = f.column(t), g.column(t)
        for k in set(x) | set(y):
            if not scalar_is_zero(F, x.get(k, 0) - y.get(k, 0)):
                return False
    return True


def random_cochain(t, n, rng):
    return Cochain(t, n, {c: {k: rng.randint(-3, 3) for k in range(t.dA)}
                          for c in range(input_space(t, n).dim)})


def test_mu_is_eps_b_a1_a2(T):
    for name in ("T_full", "T_u2"):
        t = T(name)
        mu = operad.mu(t)
        sp = input_space(t, 2)
        for idx in range(sp.dim):
            (a1, a2), (b,) = sp.unpack(idx)
            want = {}
            for i, e in enumerate(t.eps[k][b] for k in range(t.dA)):
                if not e:
                    continue
                for j in range(t.dA):
                    c = e * t.A.mult[i][a1][j]
                    for k in range(t.dA):
                        want[k] = want.get(k, 0) + c * t.A.mult[j][a2][k]
            assert mu.column(idx) == {k: v for k, v in want.items() if v}


def test_mu_associativity_matches_hand_expansion(T):
    t = T("T_full")
    lhs = operad.comp(operad.mu(t), 1, operad.mu(t))
    rhs = operad.comp(operad.mu(t), 2, operad.mu(t))
    sp = input_space(t, 3)
    for idx in range(sp.dim):
        (a1, a2, a3), (b12, b13, b23) = sp.unpack(idx)
        # dual numbers: basis {1, x}; eps = id; product of basis monomials adds exponents
        expo = a1 + a2 + a3 + b12 + b13 + b23
        want = {expo: 1} if expo <= 1 else {}
        assert lhs.column(idx) == want == rhs.column(idx)


@pytest.mark.parametrize("name", ["T_dual", "T_full", "T_u2"])
def test_multiplicativity(T, name):
    t = T(name)
    mu, one, e = operad.mu(t), operad.one(t), operad.e0(t)
    assert same(operad.comp(mu, 1, mu), operad.comp(mu, 2, mu))
    assert same(operad.comp(mu, 1, e), one)
    assert same(operad.comp(mu, 2, e), one)


def test_comp_out_of_range(T):
    t = T("T_dual")
    f, g = FormalCochain(t, 2, "f"), FormalCochain(t, 1, "g")
    assert operad.comp(f, 3, g).is_zero()
    assert operad.comp(operad.e0(t), 1, g).degree == 0
    assert operad.comp(operad.e0(t), 1, operad.mu(t)).is_zero()
    with pytest.raises(ValueError):
        operad.comp(f, 0, g)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_unitality(T, n):
    t = T("T_full")
    f = FormalCochain(t, n, "f")
    one = operad.one(t)
    for i in range(1, n + 1):
        assert same(operad.comp(f, i, one), f)
    assert same(operad.comp(one, 1, f), f)


def test_circle_and_bracket_examples(T):
    t = T("T_dual")
    mu, one = operad.mu(t), operad.one(t)
    g = FormalCochain(t, 2, "g")
    assert same(operad.circle(one, g), g)
    assert same(operad.circle(mu, one), linear_combination(t, 2, [(2, mu)]))
    assert operad.circle(mu, mu).is_zero()
    assert operad.bracket(mu, mu).is_zero()
    assert same(operad.bracket(one, mu), linear_combination(t, 2, [(-1, mu)]))
    assert same(operad.delta_mu(one), mu)
    assert operad.delta_mu(mu).is_zero()


def test_delta_on_degree_zero(T):
    # (delta a)(x) = x a - a x: zero for commutative A, not for T_u2
    for name in ("T_dual", "T_full", "T_z2"):
        t = T(name)
        assert operad.delta_matrix(t, 0).is_zero()
    t = T("T_u2")
    e12 = Cochain(t, 0, {0: {2: 1}})
    d = operad.delta_eps(e12).materialize()
    # x = E11: E11 E12 - E12 E11 = E12 ; x = E22: E22 E12 - E12 E22 = -E12
    assert d.column(0) == {2: 1} and d.column(1) == {2: -1} and d.column(2) == {}


def test_delta_of_identity_is_mu(T):
    t = T("T_full")
    assert same(operad.delta_eps(operad.one(t)), operad.mu(t))


@pytest.mark.parametrize("name", ["T_triv", "T_dual", "T_full", "T_u2", "T_z2"])
def test_delta_squared_zero(T, name):
    t = T(name)
    for n in range(0, 3):
        assert (operad.delta_matrix(t, n + 1) @ operad.delta_matrix(t, n)).is_zero()


@pytest.mark.parametrize("name", ["T_dual", "T_full", "T_u2"])
def test_delta_sign_calibration(T, name):
    """delta_eps = s_n delta_mu with s_n = (-1)^(n+1), and the opposite sign fails."""
    t = T(name)
    for n in range(0, 4):
        if n == 3 and name == "T_full":
            continue
        f = FormalCochain(t, n, "f")
        d = operad.delta_eps(f)
        s = operad.DELTA_SIGN(n)
        assert same(d, linear_combination(t, n + 1, [(s, operad.delta_mu(f))]))
        if not operad.delta_matrix(t, n).is_zero():
            assert not same(d, linear_combination(t, n + 1, [(-s, operad.delta_mu(f))]))


def test_cup_examples(T):
    t = T("T_full")
    f = FormalCochain(t, 2, "f")
    assert same(operad.cup(f, operad.e0(t)), f)
    assert same(operad.cup(operad.e0(t), f), f)
    assert same(operad.cup(operad.one(t), operad.one(t)), operad.mu(t))


@pytest.mark.parametrize("name", ["T_full", "T_u2"])
def test_cup_matches_closed_formula(T, name):
    t = T(name)
    for m, n in product(range(4), repeat=2):
        if m + n <= 3:
            f, g = FormalCochain(t, m, "f"), FormalCochain(t, n, "g")
            assert same(operad.cup(f, g), operad.cup_explicit(f, g))


def test_cup_order_first_block_is_left_factor(T):
    # T_u2 is noncommutative, so the factor order is observable
    t = T("T_u2")
    f = Cochain(t, 1, {0: {0: 1}, 1: {1: 1}, 2: {2: 1}})  # identity
    g = Cochain(t, 1, {c: {2: 1} for c in range(3)})      # constant E12
    fg = operad.cup(f, g).materialize()
    sp = input_space(t, 2)
    idx = sp.pack((1, 0), (0,))  # a1 = E22, a2 = E11: g(a1) f(a2) = E12 E11 = 0
    assert fg.column(idx) == {}
    idx = sp.pack((0, 1), (0,))  # a1 = E11, a2 = E22: E12 E22 = E12
    assert fg.column(idx) == {2: 1}


@pytest.mark.parametrize("name", ["T_dual", "T_u2"])
def test_coface_sum_and_cosimplicial(T, name):
    t = T(name)
    for p in range(0, 3):
        f = FormalCochain(t, p, "f")
        assert same(operad.coface_sum(f), operad.delta_eps(f))
        for j in range(p + 1):
            assert same(operad.codegeneracy(j, operad.coface(j, f)), f)
            assert same(operad.codegeneracy(j, operad.coface(j + 1, f)), f)
    with pytest.raises(IndexError):
        operad.coface(5, FormalCochain(t, 1, "f"))
    with pytest.raises(IndexError):
        operad.codegeneracy(1, FormalCochain(t, 1, "f"))


def test_conormalized_examples(T):
    t = T("T_dual")
    assert operad.conormalized_basis(t, 0).dim == 2
    # degree 1 still has the codegeneracy s^0 f = f(1_A): the kernel is {f : f(1) = 0}
    assert operad.conormalized_basis(t, 1).dim == 2
    # codimension equals rank of the stacked codegeneracies
    from functools import reduce
    from shc.linalg import Mat, rank
    stacked = reduce(Mat.vstack, [operad.codegeneracy_matrix(t, j, 2) for j in range(2)])
    assert 8 - operad.conormalized_basis(t, 2).dim == rank(stacked)
    assert operad.conormalized_basis(T("T_triv"), 2).dim == 0


@pytest.mark.parametrize("name", ["T_dual", "T_u2", "T_full"])
def test_conormalized_cohomology_matches(T, name):
    t = T(name)
    top = 2 if name == "T_full" else 3
    assert calculus.conormalized_cohomology(t, top).betti == calculus.cohomology(t, top).betti


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.tuples(*(st.integers(1, 2),) * 3))
def test_random_jacobi_u2(T, seed, degs):
    t = T("T_u2")
    rng = random.Random(seed)
    m, n, r = degs
    f, g, h = (random_cochain(t, d, rng) for d in degs)
    from shc.linalg import parity_sign as s
    jac = linear_combination(t, m + n + r - 2, [
        (s((m - 1) * (r - 1)), operad.bracket(f, operad.bracket(g, h))),
        (s((n - 1) * (m - 1)), operad.bracket(g, operad.bracket(h, f))),
        (s((r - 1) * (n - 1)), operad.bracket(h, operad.bracket(f, g)))])
    assert jac.is_zero()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_random_cup_associative(T, seed, m, n, r):
    t = T("T_u2")
    rng = random.Random(seed)
    f, g, h = (random_cochain(t, d, rng) for d in (m, n, r))
    lhs = operad.cup(operad.cup(f, g), h)
    rhs = operad.cup(f, operad.cup(g, h))
    assert lhs.materialize() == rhs.materialize()
