from __future__ import annotations

import pytest

from oracle import hochschild_betti, hochschild_cobetti
from shc import calculus, cyclic, operad
from shc.calculus import (CONVENTIONS, DEFAULT_CONVENTION, LieConvention, cap, field_consistency,
                          lie)
from shc.complexes import ChainVector, Cochain, FormalCochain, chain_space
from shc.linalg import Field

# frozen from the independent classical oracle in tests/oracle.py (B = k triples)
BETTI = {
    "T_triv": ([1, 0, 0, 0], [1, 0, 0, 0]),
    "T_dual": ([2, 1, 1, 1], [2, 1, 1, 1]),
    "T_z2": ([2, 0, 0, 0], [2, 0, 0, 0]),
    "T_u2": ([2, 0, 0, 0], [1, 0, 0, 0]),
}


@pytest.mark.parametrize("name", sorted(BETTI))
def test_frozen_values_match_oracle(T, name):
    mult = T(name).A.mult
    assert (hochschild_betti(mult, 3), hochschild_cobetti(mult, 3)) == BETTI[name]


@pytest.mark.parametrize("name", sorted(BETTI))
def test_engine_betti_numbers(T, name):
    t = T(name)
    hom, coh = BETTI[name]
    assert calculus.homology(t, 3).betti == hom
    assert calculus.cohomology(t, 3).betti == coh


def test_cohomology_degree_zero_is_center_dim(T):
    # H^0 = {a : eps(b) a = a eps(b)} ∩ Z(A) for B = k is the centre of A
    assert calculus.cohomology(T("T_u2"), 0).betti == [1]
    assert calculus.cohomology(T("T_dual"), 0).betti == [2]


def test_homology_report_shape(T):
    rep = calculus.homology(T("T_dual"), 2)
    d = rep.to_dict(T("T_dual").field)
    assert d["kind"] == "homology" and d["betti"] == [2, 1, 1]
    for deg in rep.degrees:
        assert deg.dim_ker - deg.rank_in == deg.betti == len(deg.representatives)


def test_cap_examples(T):
    t = T("T_dual")
    for j in range(chain_space(t, 1).dim):
        x = ChainVector.basis(t, 1, j)
        assert cap(operad.one(t), x) == cyclic.bullet(operad.mu(t), 0, x)
    # f in O^1 sending 1 -> x, x -> 0: cap(f, a0 (x) 1 (x) a1) = a0 f(a1)
    f = Cochain(t, 1, {0: {1: 1}})
    sp = chain_space(t, 1)
    assert cap(f, ChainVector(t, 1, {sp.pack((0, 0), (0,)): 1})) == ChainVector(t, 0, {1: 1})
    assert cap(f, ChainVector(t, 1, {sp.pack((1, 0), (0,)): 1})).is_zero()
    assert cap(f, ChainVector(t, 1, {sp.pack((0, 1), (0,)): 1})).is_zero()


def test_lie_top_case(T):
    # m = p + 1 = 2, p = 1: L_f T = -f .0 (T - tT); the overall sign (-1)^(m-1) is the
    # calibrated one (the opposite sign breaks the descend identity)
    t = T("T_full")
    f = FormalCochain(t, 2, "f")
    for j in range(chain_space(t, 1).dim):
        x = ChainVector.basis(t, 1, j)
        want = cyclic.bullet(f, 0, x).scale(-1)
        for k, c in cyclic.bullet(f, 0, cyclic.cyclic_t(x)).coords.items():
            want.coords[k] = want.coords.get(k, 0) + c
        assert calculus.chains_equal(t.field, lie(f, x), want)
    assert lie(FormalCochain(t, 3, "f"), ChainVector.basis(t, 1, 0)).is_zero()


def test_lie_of_identity_on_dual(T):
    # descend with f = one forces delta_mu(one) = mu, so L_one must commute with b up to L_mu
    t = T("T_dual")
    one = operad.one(t)
    for p in range(0, 3):
        for j in range(chain_space(t, p).dim):
            x = ChainVector.basis(t, p, j)
            r = calculus.descend_lie_residual(one, x)
            assert calculus.chains_equal(t.field, r, ChainVector(t, r.degree, {}))


def test_convention_family():
    assert len(CONVENTIONS) == 32
    assert DEFAULT_CONVENTION in CONVENTIONS
    assert len(set(c.label() for c in CONVENTIONS)) == 32


@pytest.mark.slow
def test_calibration_picks_unique_convention(T):
    survivors = calculus.calibrate_lie([T("T_dual"), T("T_u2")], 3, 2)
    assert survivors == [DEFAULT_CONVENTION]


def test_wrong_convention_fails(T):
    bad = LieConvention(sign2="mp")
    assert not calculus.lie_convention_passes(T("T_dual"), bad, 2, 2)


@pytest.mark.parametrize("name", ["T_dual", "T_full", "T_u2"])
def test_graded_cap_module_chain_level(T, name):
    t = T(name)
    for m in range(0, 2):
        for n in range(0, 2):
            f, g = FormalCochain(t, m, "f"), FormalCochain(t, n, "g")
            for p in range(m + n, 3):
                for j in range(chain_space(t, p).dim):
                    r = calculus.graded_cap_residual(f, g, ChainVector.basis(t, p, j))
                    assert calculus.chains_equal(t.field, r, ChainVector(t, r.degree, {}))


def test_cycle_and_cocycle_predicates(T):
    t = T("T_dual")
    assert calculus.is_cocycle(operad.mu(t))
    assert calculus.is_cycle(ChainVector.basis(t, 0, 0))
    # A is commutative, so every degree-1 chain of T_dual is a cycle; T_u2 is not
    assert calculus.is_cycle(ChainVector.basis(t, 1, 1))
    u = T("T_u2")
    sp = chain_space(u, 1)
    assert not calculus.is_cycle(ChainVector(u, 1, {sp.pack((0, 2), (0,)): 1}))
    assert calculus.is_boundary(ChainVector(t, 0, {}))
    assert calculus.is_coboundary(operad.mu(t)) == calculus.is_coboundary(operad.delta_eps(operad.one(t)))
    assert calculus.cocycle_witness(operad.mu(t)) is None
    e12 = Cochain(u, 0, {0: {2: 1}})
    assert calculus.cocycle_witness(e12) is not None


def test_mu_is_cocycle_everywhere(T):
    for name in ("T_triv", "T_dual", "T_full", "T_u2", "T_z2"):
        assert calculus.is_cocycle(operad.mu(T(name)))


def test_field_consistency(T):
    rep = field_consistency(T("T_dual"), 3)
    assert rep.agree and rep.prime == 101 and rep.unlucky == []
    assert rep.betti_q == {"homology": [2, 1, 1, 1], "cohomology": [2, 1, 1, 1]}
    assert rep.to_dict()["betti_Fp"] == rep.betti_q


def test_field_consistency_skips_unlucky_prime(T):
    # over F_2 the group algebra of Z/2 is not semisimple, so its Betti numbers jump
    rep = field_consistency(T("T_z2"), 1, primes=(2, 101))
    assert rep.unlucky == [2] and rep.prime == 101
    assert calculus.homology(T("T_z2").with_field(Field.Fp(2)), 1).betti != [2, 0]
