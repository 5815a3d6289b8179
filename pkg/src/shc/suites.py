"""Identity-verification suites.

Chain-level suites are exhaustive: cochain arguments are formal (one
variable per matrix entry), so a residual that vanishes as a polynomial
vanishes for every tuple of basis cochains at once.  A non-vanishing
residual is reported through one of its monomials, which names the basis
cochains involved.  Homology-level suites quantify over the stored
(co)cycle representatives and test membership in the image of the
(co)boundary.

Degree bounds: ``max_degree`` caps every chain degree that is met (and the
evaluation degree of cochain identities); ``max_cochain_degree`` caps the
degrees of the cochain arguments.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field

from . import calculus, cyclic, operad
from .complexes import (ChainVector, Cochain, FormalCochain, chain_space, input_space,
                        linear_combination)
from .linalg import Mat, parity_sign
from .symbolic import Poly
from .triple import TripleSpec

SUITES = ("differential", "operad", "compmodule", "cyclic", "simplicial", "descend",
          "gradedmodule", "precalculus", "cartan", "gerstenhaber")
# ``--suite all``: the dependency order of the calculus suites.  The
# differential suite is a prerequisite check that is run by name.
ALL_ORDER = SUITES[1:]
CHAIN_LEVEL = ("differential", "operad", "compmodule", "cyclic", "simplicial", "descend",
               "gradedmodule")
MAX_RECORDED = 20


class UnknownSuite(ValueError):
    pass


@dataclass
class Failure:
    operation: str
    inputs: dict
    expected: str
    got: str


@dataclass
class SuiteResult:
    suite: str
    triple: str
    field: str
    bounds: dict
    seed: int
    checks: int = 0
    failure_count: int = 0
    failures: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


# -- recording helpers ------------------------------------------------------------

class _Run:
    def __init__(self, suite, triple: TripleSpec, max_degree, max_cochain_degree, seed):
        self.t = triple
        self.F = triple.field
        self.D = max_degree
        self.C = max_cochain_degree
        self.seed = seed
        self.result = SuiteResult(suite, triple.name, triple.field.name,
                                  {"max_degree": max_degree,
                                   "max_cochain_degree": max_cochain_degree}, seed)
        self.formal_degrees: dict = {}

    def formal(self, name, degree) -> FormalCochain:
        self.formal_degrees[name] = degree
        return FormalCochain(self.t, degree, name)

    def _fail(self, operation, inputs, expected, got):
        r = self.result
        r.failure_count += 1
        if len(r.failures) < MAX_RECORDED:
            r.failures.append(Failure(operation, inputs, expected, got))

    def chain_label(self, degree, idx) -> dict:
        a, b = chain_space(self.t, degree).unpack(idx)
        return {"degree": degree, "a": list(a), "b": list(b)}

    def input_label(self, degree, idx) -> dict:
        a, b = input_space(self.t, degree).unpack(idx)
        return {"a": list(a), "b": list(b)}

    def _scalar(self, c):
        """None if the (possibly formal) scalar vanishes, else (value, monomial basis)."""
        if isinstance(c, Poly):
            for mono, x in sorted(c.terms.items(), key=repr):
                if self.F(x):
                    basis = [{"cochain": name, "degree": self.formal_degrees.get(name),
                              "output": k, "input": self.input_label(
                                  self.formal_degrees.get(name, 0), t)}
                             for name, k, t in mono]
                    return str(self.F.format(self.F(x))), basis
            return None
        if not self.F(c):
            return None
        return str(self.F.format(self.F(c))), []

    def chain_zero(self, operation, vec: ChainVector, inputs: dict):
        """Record one check that ``vec`` vanishes."""
        self.result.checks += 1
        for k in sorted(vec.coords):
            found = self._scalar(vec.coords[k])
            if found is not None:
                val, basis = found
                got = {"coefficient": val, "at": self.chain_label(vec.degree, k)}
                if basis:
                    got["basis_cochains"] = basis
                self._fail(operation, inputs, "0", _fmt(got))
                return False
        return True

    def cochain_equal(self, operation, lhs: Cochain, rhs: Cochain, inputs: dict):
        self.result.checks += 1
        if lhs.degree != rhs.degree:
            self._fail(operation, inputs, f"degree {lhs.degree}", f"degree {rhs.degree}")
            return False
        for t in range(lhs.input_dim()):
            x, y = lhs.column(t), rhs.column(t)
            for k in sorted(set(x) | set(y)):
                found = self._scalar(x.get(k, 0) - y.get(k, 0))
                if found is not None:
                    val, basis = found
                    got = {"difference": val, "output": k,
                           "input": self.input_label(lhs.degree, t)}
                    if basis:
                        got["basis_cochains"] = basis
                    self._fail(operation, inputs, "0", _fmt(got))
                    return False
        return True

    def mat_equal(self, operation, lhs: Mat, rhs: Mat, inputs: dict, src_kind="chain",
                  src_degree=None):
        self.result.checks += 1
        if lhs.shape != rhs.shape:
            self._fail(operation, inputs, f"shape {rhs.shape}", f"shape {lhs.shape}")
            return False
        if lhs == rhs:
            return True
        for j in range(lhs.cols):
            x, y = lhs.column(j), rhs.column(j)
            if x != y:
                row = min(k for k in set(x) | set(y) if x.get(k, 0) != y.get(k, 0))
                where = {"column": j, "row": row}
                if src_kind == "chain" and src_degree is not None:
                    where["input"] = self.chain_label(src_degree, j)
                self._fail(operation, inputs, str(self.F.format(y.get(row, 0))),
                           _fmt({"value": str(self.F.format(x.get(row, 0))), **where}))
                return False
        return True

    def mat_zero(self, operation, m: Mat, inputs: dict, src_degree=None):
        return self.mat_equal(operation, m, Mat.zero(m.rows, m.cols, m.field), inputs,
                              src_degree=src_degree)

    def in_image(self, operation, basis, vec: dict, inputs: dict):
        self.result.checks += 1
        if basis.in_span({k: v for k, v in vec.items() if self.F(v)}):
            return True
        got = sorted((k, str(self.F.format(self.F(v)))) for k, v in vec.items() if self.F(v))[:3]
        self._fail(operation, inputs, "in image of the differential", _fmt(got))
        return False


def _fmt(obj) -> str:
    import json
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _combine(triple, degree, terms) -> ChainVector:
    out: dict = {}
    for c, v in terms:
        for k, x in v.coords.items():
            out[k] = out.get(k, 0) + c * x
    return ChainVector(triple, degree, {k: x for k, x in out.items() if x})


def _basis_chains(t, p):
    for j in range(chain_space(t, p).dim):
        yield j, ChainVector.basis(t, p, j)


# -- differential ---------------------------------------------------------------------

def _suite_differential(run: _Run):
    t = run.t
    for p in range(2, run.D + 1):
        run.mat_zero("boundary o boundary", cyclic.boundary_matrix(t, p - 1) @
                     cyclic.boundary_matrix(t, p), {"degree": p}, src_degree=p)
    for n in range(0, min(run.D, 3)):
        run.mat_zero("delta_eps o delta_eps",
                     operad.delta_matrix(t, n + 1) @ operad.delta_matrix(t, n),
                     {"degree": n}, src_degree=None)


# -- operad ---------------------------------------------------------------------------

def _law_rhs(f, g, h, i, j):
    m, p = g.degree, h.degree
    if j < i:
        return operad.comp(operad.comp(f, j, h), i + p - 1, g), 1
    if j < m + i:
        return operad.comp(f, i, operad.comp(g, j - i + 1, h)), 2
    return operad.comp(operad.comp(f, j - m + 1, h), i, g), 3


def _suite_operad(run: _Run):
    t = run.t
    E = run.D
    mu, one, e = operad.mu(t), operad.one(t), operad.e0(t)
    run.cochain_equal("mu o1 mu = mu o2 mu", operad.comp(mu, 1, mu), operad.comp(mu, 2, mu), {})
    run.cochain_equal("mu o1 e = 1", operad.comp(mu, 1, e), one, {})
    run.cochain_equal("mu o2 e = 1", operad.comp(mu, 2, e), one, {})
    for n in range(0, E + 1):
        f = run.formal("f", n)
        for i in range(1, n + 1):
            run.cochain_equal("f o_i 1 = f", operad.comp(f, i, one), f, {"n": n, "i": i})
        run.cochain_equal("1 o_1 f = f", operad.comp(one, 1, f), f, {"n": n})
    for n in range(1, E + 1):
        for m in range(0, E + 1):
            for p in range(0, E + 1):
                if n + m - 1 > E or n + m + p - 2 > E or n + m + p - 2 < 0:
                    continue
                f, g, h = run.formal("f", n), run.formal("g", m), run.formal("h", p)
                for i in range(1, n + 1):
                    fg = operad.comp(f, i, g)
                    for j in range(1, n + m):
                        rhs, case = _law_rhs(f, g, h, i, j)
                        run.cochain_equal(f"composition law case {case}",
                                          operad.comp(fg, j, h), rhs,
                                          {"n": n, "m": m, "p": p, "i": i, "j": j})
    # cup: operadic versus closed formula
    for m in range(0, E + 1):
        for n in range(0, E + 1 - m):
            f, g = run.formal("f", m), run.formal("g", n)
            run.cochain_equal("cup = closed cup formula", operad.cup(f, g),
                              operad.cup_explicit(f, g), {"deg f": m, "deg g": n})
    # coboundary: closed formula, coface sum and the bracket with mu
    for n in range(0, E):
        f = run.formal("f", n)
        d = operad.delta_eps(f)
        run.cochain_equal("delta_eps = alternating coface sum", d, operad.coface_sum(f),
                          {"n": n})
        run.cochain_equal("delta_eps = s_n delta_mu", d,
                          linear_combination(t, n + 1, [(operad.DELTA_SIGN(n),
                                                         operad.delta_mu(f))]), {"n": n})
    # cosimplicial identities
    for p in range(0, E + 1):
        f = run.formal("f", p)
        for j in range(0, p + 1):
            if p + 1 <= E:
                run.cochain_equal("s^j d^j = id", operad.codegeneracy(j, operad.coface(j, f)),
                                  f, {"p": p, "j": j})
                run.cochain_equal("s^j d^{j+1} = id",
                                  operad.codegeneracy(j, operad.coface(j + 1, f)), f,
                                  {"p": p, "j": j})
        if p + 2 <= E:
            for j in range(0, p + 3):
                for i in range(0, j):
                    run.cochain_equal("d^j d^i = d^i d^{j-1}",
                                      operad.coface(j, operad.coface(i, f)),
                                      operad.coface(i, operad.coface(j - 1, f)),
                                      {"p": p, "i": i, "j": j})
        if p >= 2:
            for j in range(0, p - 1):
                for i in range(0, j + 1):
                    run.cochain_equal("s^j s^i = s^i s^{j+1}",
                                      operad.codegeneracy(j, operad.codegeneracy(i, f)),
                                      operad.codegeneracy(i, operad.codegeneracy(j + 1, f)),
                                      {"p": p, "i": i, "j": j})
    # conormalized cohomology agrees with the full cohomology
    top = min(E - 1, 3)
    if top >= 0:
        full = calculus.cohomology(t, top).betti
        norm = calculus.conormalized_cohomology(t, top).betti
        for n in range(top + 1):
            run.result.checks += 1
            if full[n] != norm[n]:
                run._fail("conormalized cohomology dimension", {"n": n}, str(full[n]),
                          str(norm[n]))


# -- comp module and cyclic operator ---------------------------------------------

def _in_range(m, i, p) -> bool:
    """Whether f (degree m) .i acts non-trivially on degree-p chains."""
    if i < 0 or m < 0:
        return False
    if i == 0:
        return m <= p + 1
    return m <= p and i <= p - m + 1


def _relation_rhs(f, g, i, j, T):
    m, n = f.degree, g.degree
    if j < i:
        return cyclic.bullet(g, j, cyclic.bullet(f, i + n - 1, T)), 1
    if j - m < i <= j:
        return cyclic.bullet(operad.comp(f, j - i + 1, g), i, T), 2
    return cyclic.bullet(g, j - m + 1, cyclic.bullet(f, i, T)), 3


def _relation_rhs_degrees(m, n, i, j, p):
    if j < i:
        return (p - m + 1,)
    if j - m < i <= j:
        return ()
    return (p - m + 1,)


def _suite_compmodule(run: _Run):
    t = run.t
    one = operad.one(t)
    for p in range(0, run.D + 1):
        ident = Mat.identity(chain_space(t, p).dim, t.field)
        for i in range(0, p + 1):
            run.mat_equal("1 ._i x = x", cyclic.bullet_matrix(t, one, i, p, key="one"), ident,
                          {"p": p, "i": i}, src_degree=p)
    for m in range(0, run.C + 1):
        for n in range(0, run.C + 1):
            f, g = run.formal("f", m), run.formal("g", n)
            for p in range(0, run.D + 1):
                q = p - n + 1
                if not 0 <= q <= run.D or p - m - n + 2 < 0 or p - m - n + 2 > run.D:
                    continue
                for j in range(0, q + 1):
                    if not _in_range(n, j, p):
                        continue
                    for i in range(0, q - m + 2):
                        if not _in_range(m, i, q):
                            continue
                        if any(not 0 <= d <= run.D for d in _relation_rhs_degrees(m, n, i, j, p)):
                            continue
                        for idx, T in _basis_chains(t, p):
                            lhs = cyclic.bullet(f, i, cyclic.bullet(g, j, T))
                            rhs, case = _relation_rhs(f, g, i, j, T)
                            run.chain_zero(f"comp-module relation case {case}",
                                           _combine(t, lhs.degree, [(1, lhs), (-1, rhs)]),
                                           {"m": m, "n": n, "p": p, "i": i, "j": j,
                                            "chain": run.chain_label(p, idx)})


def _suite_cyclic(run: _Run):
    t = run.t
    for p in range(1, run.D + 1):
        tm = cyclic.t_matrix(t, p)
        power = tm
        for _ in range(p):
            power = power @ tm
        run.mat_equal("t^{p+1} = Id", power, Mat.identity(tm.rows, t.field), {"p": p},
                      src_degree=p)
    for m in range(0, run.C + 1):
        f = run.formal("f", m)
        for p in range(0, run.D + 1):
            deg = p - m + 1
            if not 1 <= deg <= run.D:
                continue
            for i in range(0, p - m + 1):
                for idx, T in _basis_chains(t, p):
                    lhs = cyclic.cyclic_t(cyclic.bullet(f, i, T))
                    rhs = cyclic.bullet(f, i + 1, cyclic.cyclic_t(T))
                    run.chain_zero("t(f ._i x) = f ._{i+1} t(x)",
                                   _combine(t, deg, [(1, lhs), (-1, rhs)]),
                                   {"m": m, "p": p, "i": i, "chain": run.chain_label(p, idx)})


# -- simplicial and cyclic k-module -------------------------------------------------

def _suite_simplicial(run: _Run):
    t = run.t
    D = run.D
    d = lambda i, p: cyclic.face_matrix(t, i, p)  # noqa: E731
    s = lambda j, p: cyclic.degeneracy_matrix(t, j, p)  # noqa: E731
    tt = lambda p: cyclic.t_matrix(t, p)  # noqa: E731
    for p in range(1, D + 1):
        run.mat_equal("face sum = boundary formula", cyclic.face_sum_matrix(t, p),
                      cyclic.boundary_matrix(t, p), {"p": p}, src_degree=p)
    for p in range(2, D + 1):
        for j in range(p + 1):
            for i in range(j):
                run.mat_equal("d_i d_j = d_{j-1} d_i", d(i, p - 1) @ d(j, p),
                              d(j - 1, p - 1) @ d(i, p), {"p": p, "i": i, "j": j}, src_degree=p)
    for p in range(1, D):
        for j in range(p + 1):
            for i in range(p + 2):
                lhs = d(i, p + 1) @ s(j, p)
                if i < j:
                    rhs, name = s(j - 1, p - 1) @ d(i, p), "d_i s_j = s_{j-1} d_i"
                elif i in (j, j + 1):
                    rhs, name = Mat.identity(lhs.rows, t.field), "d_i s_j = id"
                else:
                    rhs, name = s(j, p - 1) @ d(i - 1, p), "d_i s_j = s_j d_{i-1}"
                run.mat_equal(name, lhs, rhs, {"p": p, "i": i, "j": j}, src_degree=p)
    for p in range(0, D - 1):
        for j in range(p + 1):
            for i in range(j + 1):
                run.mat_equal("s_i s_j = s_{j+1} s_i", s(i, p + 1) @ s(j, p),
                              s(j + 1, p + 1) @ s(i, p), {"p": p, "i": i, "j": j}, src_degree=p)
    for p in range(1, D + 1):
        for i in range(1, p + 1):
            run.mat_equal("d_i t = t d_{i-1}", d(i, p) @ tt(p), tt(p - 1) @ d(i - 1, p)
                          if p >= 2 else d(i - 1, p), {"p": p, "i": i}, src_degree=p)
        run.mat_equal("d_0 t = d_p", d(0, p) @ tt(p), d(p, p), {"p": p}, src_degree=p)
    for p in range(0, D):
        for i in range(1, p + 1):
            run.mat_equal("s_i t = t s_{i-1}", s(i, p) @ tt(p), tt(p + 1) @ s(i - 1, p),
                          {"p": p, "i": i}, src_degree=p)
        if p >= 1:
            run.mat_equal("s_0 t = t^2 s_p", s(0, p) @ tt(p), tt(p + 1) @ tt(p + 1) @ s(p, p),
                          {"p": p}, src_degree=p)
        run.mat_equal("s_{-1} = t s_p", cyclic.extra_degeneracy_matrix(t, p),
                      tt(p + 1) @ s(p, p), {"p": p}, src_degree=p)
    for p in range(0, D - 1):
        run.mat_zero("B B = 0 (normalized)",
                     cyclic.connes_B_matrix(t, p + 1) @ cyclic.connes_B_matrix(t, p), {"p": p})
    for p in range(0, D):
        lhs = cyclic.normalized_boundary_matrix(t, p + 1) @ cyclic.connes_B_matrix(t, p)
        if p >= 1:
            lhs = lhs + cyclic.connes_B_matrix(t, p - 1) @ cyclic.normalized_boundary_matrix(t, p)
        run.mat_zero("b B + B b = 0 (normalized)", lhs, {"p": p})
    top = D - 1
    if top >= 0:
        full = calculus.homology(t, top).betti
        norm = calculus.normalized_homology(t, top).betti
        for p in range(top + 1):
            run.result.checks += 1
            if full[p] != norm[p]:
                run._fail("normalized homology dimension", {"p": p}, str(full[p]), str(norm[p]))


# -- calculus, chain level ------------------------------------------------------------

def _suite_descend(run: _Run):
    t = run.t
    for m in range(0, run.C + 1):
        f = run.formal("f", m)
        for p in range(0, run.D + 1):
            if p - m - 1 >= -1:
                for idx, T in _basis_chains(t, p):
                    run.chain_zero("i_{delta_mu f} = b i_f - (-1)^m i_f b",
                                   calculus.descend_cap_residual(f, T),
                                   {"m": m, "p": p, "chain": run.chain_label(p, idx)})
            if 0 <= p - m + 1 <= run.D:
                for idx, T in _basis_chains(t, p):
                    run.chain_zero("[b, L_f] + L_{delta_mu f} = 0",
                                   calculus.descend_lie_residual(f, T),
                                   {"m": m, "p": p, "chain": run.chain_label(p, idx)})


def _suite_gradedmodule(run: _Run):
    t = run.t
    for m in range(0, run.C + 1):
        for n in range(0, run.C + 1):
            f, g = run.formal("f", m), run.formal("g", n)
            for p in range(0, run.D + 1):
                if p - m - n >= 0:
                    for idx, T in _basis_chains(t, p):
                        run.chain_zero("i_f i_g = i_{f cup g}",
                                       calculus.graded_cap_residual(f, g, T),
                                       {"m": m, "n": n, "p": p, "chain": run.chain_label(p, idx)})
                if calculus.lie_pair_in_range(p, m, n, run.D):
                    for idx, T in _basis_chains(t, p):
                        run.chain_zero("[L_f, L_g] = L_{[f,g]}",
                                       calculus.graded_lie_residual(f, g, T),
                                       {"m": m, "n": n, "p": p, "chain": run.chain_label(p, idx)})


# -- calculus, homology level -----------------------------------------------------

def _cocycles(run: _Run, normalized=False):
    t = run.t
    rep = (calculus.conormalized_cohomology if normalized else calculus.cohomology)(t, run.C)
    out = []
    for d in rep.degrees:
        for q, v in enumerate(d.representatives):
            out.append((d.degree, q, Cochain.from_vector(t, d.degree, v)))
    return out


def _cycles(run: _Run):
    rep = calculus.homology(run.t, run.D)
    return [(d.degree, q, ChainVector(run.t, d.degree, dict(v)))
            for d in rep.degrees for q, v in enumerate(d.representatives)]


def _suite_precalculus(run: _Run):
    t = run.t
    cocycles = _cocycles(run)
    cycles = _cycles(run)
    for m, qf, f in cocycles:
        for n, qg, g in cocycles:
            br = operad.bracket(f, g).materialize() if m + n >= 1 else None
            for p, qx, x in cycles:
                deg = p - n + 1 - m
                if not (0 <= deg and 0 <= p - n + 1 <= run.D and 0 <= p - m <= run.D):
                    continue
                terms = [(1, calculus.cap(f, calculus.lie(g, x))),
                         (-parity_sign(m * (n - 1)), calculus.lie(g, calculus.cap(f, x)))]
                if br is not None:
                    terms.append((-1, calculus.cap(br, x)))
                res = _combine(t, deg, terms)
                run.in_image("[i_f, L_g] = i_{[f,g]} on homology",
                             calculus.boundary_image(t, deg), res.normalized().coords,
                             {"f": [m, qf], "g": [n, qg], "x": [p, qx]})


def _suite_cartan(run: _Run):
    t = run.t
    cocycles = _cocycles(run, normalized=True)
    nh = calculus.normalized_homology(t, run.D)
    for p_rep in nh.degrees:
        p = p_rep.degree
        Np = cyclic.normalized_chains(t, p)
        for qx, xv in enumerate(p_rep.representatives):
            y = ChainVector(t, p, Np.include_vector(xv))
            for m, qf, f in cocycles:
                deg = p - m + 1
                if not (0 <= deg <= run.D and p + 1 <= run.D):
                    continue
                Nd = cyclic.normalized_chains(t, deg)
                lie = Nd.project_vector(calculus.lie(f, y).coords)
                bi: dict = {}
                if p - m >= 0:
                    Nc = cyclic.normalized_chains(t, p - m)
                    cap = Nc.project_vector(calculus.cap(f, y).coords)
                    bi = cyclic.connes_B_matrix(t, p - m).apply(cap)
                Bx = cyclic.connes_B_matrix(t, p).apply(xv)
                Nb = cyclic.normalized_chains(t, p + 1)
                yb = ChainVector(t, p + 1, Nb.include_vector(Bx))
                ib = Nd.project_vector(calculus.cap(f, yb).coords)
                res: dict = {}
                for c, vec in ((1, lie), (-1, bi), (parity_sign(m), ib)):
                    for k, v in vec.items():
                        res[k] = res.get(k, 0) + c * v
                image = calculus_normalized_image(t, deg)
                run.in_image("L_f = B i_f - (-1)^m i_f B on homology", image, res,
                             {"f": [m, qf], "x": [p, qx]})


def calculus_normalized_image(t: TripleSpec, p: int):
    from .linalg import column_space_basis
    from . import mutation
    return t.cache(("normalized_image", p, mutation.token()),
                   lambda: column_space_basis(cyclic.normalized_boundary_matrix(t, p + 1)))


def _random_cochain(t, degree, rng) -> Cochain:
    cols = {}
    for c in range(input_space(t, degree).dim):
        v = {k: rng.randint(-3, 3) for k in range(t.dA)}
        cols[c] = {k: x for k, x in v.items() if x}
    return Cochain(t, degree, cols)


def _suite_gerstenhaber(run: _Run):
    t = run.t
    cocycles = _cocycles(run)
    top = run.D
    for m, qf, f in cocycles:
        for n, qg, g in cocycles:
            tag = {"f": [m, qf], "g": [n, qg]}
            if m + n <= top:
                fg = operad.cup(f, g).materialize()
                run.result.checks += 1
                if not calculus.is_cocycle(fg):
                    run._fail("cup of cocycles is a cocycle", tag, "cocycle",
                              _fmt(calculus.cocycle_witness(fg)))
                gf = operad.cup(g, f).materialize()
                diff = linear_combination(t, m + n, [(1, fg), (-parity_sign(m * n), gf)])
                run.in_image("f cup g = (-1)^{mn} g cup f mod coboundaries",
                             calculus.coboundary_image(t, m + n),
                             diff.materialize().to_vector(), tag)
            if 0 <= m + n - 1 <= top:
                br = operad.bracket(f, g).materialize()
                run.result.checks += 1
                if not calculus.is_cocycle(br):
                    run._fail("bracket of cocycles is a cocycle", tag, "cocycle",
                              _fmt(calculus.cocycle_witness(br)))
                sym = linear_combination(t, m + n - 1, [
                    (1, br), (parity_sign((m - 1) * (n - 1)), operad.bracket(g, f))])
                run.cochain_equal("[f,g] = -(-1)^{(m-1)(n-1)} [g,f]", sym.materialize(),
                                  Cochain.zero(t, m + n - 1), tag)
            for r, qh, h in cocycles:
                tag3 = {**tag, "h": [r, qh]}
                if m + n + r <= top:
                    lhs = operad.cup(operad.cup(f, g), h).materialize()
                    rhs = operad.cup(f, operad.cup(g, h)).materialize()
                    run.in_image("cup associative mod coboundaries",
                                 calculus.coboundary_image(t, m + n + r),
                                 (lhs - rhs).materialize().to_vector(), tag3)
                if 0 <= m + n + r - 2 <= top and m + n - 1 >= 0 and n + r - 1 >= 0 \
                        and m + r - 1 >= 0:
                    jac = linear_combination(t, m + n + r - 2, [
                        (parity_sign((m - 1) * (r - 1)), operad.bracket(f, operad.bracket(g, h))),
                        (parity_sign((n - 1) * (m - 1)), operad.bracket(g, operad.bracket(h, f))),
                        (parity_sign((r - 1) * (n - 1)), operad.bracket(h, operad.bracket(f, g)))])
                    run.in_image("graded Jacobi mod coboundaries",
                                 calculus.coboundary_image(t, m + n + r - 2),
                                 jac.materialize().to_vector(), tag3)
                if 0 <= m + n + r - 1 <= top and m + n - 1 >= 0 and m + r - 1 >= 0:
                    lhs = operad.bracket(f, operad.cup(g, h))
                    rhs = linear_combination(t, m + n + r - 1, [
                        (1, operad.cup(operad.bracket(f, g), h)),
                        (parity_sign((m - 1) * n), operad.cup(g, operad.bracket(f, h)))])
                    run.in_image("Leibniz mod coboundaries",
                                 calculus.coboundary_image(t, m + n + r - 1),
                                 (lhs.materialize() - rhs.materialize()).materialize().to_vector(),
                                 tag3)
    # chain-level Jacobi and cup associativity on seeded random cochains
    rng = random.Random(run.seed)
    degs = [d for d in range(1, min(run.C, 2) + 1)]
    for _ in range(3 if degs else 0):
        m, n, r = (rng.choice(degs) for _ in range(3))
        if m + n + r - 2 > top:
            continue
        f, g, h = (_random_cochain(t, d, rng) for d in (m, n, r))
        jac = linear_combination(t, m + n + r - 2, [
            (parity_sign((m - 1) * (r - 1)), operad.bracket(f, operad.bracket(g, h))),
            (parity_sign((n - 1) * (m - 1)), operad.bracket(g, operad.bracket(h, f))),
            (parity_sign((r - 1) * (n - 1)), operad.bracket(h, operad.bracket(f, g)))])
        run.cochain_equal("graded Jacobi (cochain level, random)", jac.materialize(),
                          Cochain.zero(t, m + n + r - 2), {"degrees": [m, n, r]})


_SUITE_FUNCS = {
    "differential": _suite_differential,
    "operad": _suite_operad,
    "compmodule": _suite_compmodule,
    "cyclic": _suite_cyclic,
    "simplicial": _suite_simplicial,
    "descend": _suite_descend,
    "gradedmodule": _suite_gradedmodule,
    "precalculus": _suite_precalculus,
    "cartan": _suite_cartan,
    "gerstenhaber": _suite_gerstenhaber,
}


def default_cochain_degree(suite: str, max_degree: int) -> int:
    if suite in CHAIN_LEVEL:
        return min(max_degree, 2)
    return min(max_degree, 3)


def verify(suite: str, t: TripleSpec, max_degree: int, seed: int = 0,
           max_cochain_degree: int | None = None) -> SuiteResult:
    if suite not in _SUITE_FUNCS:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    if max_cochain_degree is None:
        max_cochain_degree = default_cochain_degree(suite, max_degree)
    run = _Run(suite, t, max_degree, max_cochain_degree, seed)
    try:
        _SUITE_FUNCS[suite](run)
    except ArithmeticError as exc:
        # raised when a (co)homology computation finds d o d != 0
        run.result.checks += 1
        run._fail("(co)homology computation", {}, "a complex", str(exc))
    return run.result
