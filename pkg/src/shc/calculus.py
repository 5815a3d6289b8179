"""Cap product, Lie derivative and (co)homology.

The Lie derivative of f (degree m) on a degree-p chain is

    L_f = sum_{i=1}^{p-m+1} (-1)^{(m-1)(i-1)} f .i x
          + sum_{i=1}^{m} (-1)^{p(i-1)+m-1} f .0 t^{i-1} x      (m < p + 1)
    L_f = (-1)^{m-1} f .0 N x                                      (m = p + 1)
    L_f = 0                                                        (m > p + 1)

The printed formula admits several readings of its index letters.
:data:`CONVENTIONS` enumerates them and :func:`calibrate_lie` keeps those
satisfying ``[b, L_f] + L_{delta_mu f} = 0`` and ``[L_f, L_g] = L_{[f,g]}``
exhaustively; the reading above is the unique survivor and is frozen as
:data:`DEFAULT_CONVENTION`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import cyclic, operad
from .complexes import ChainVector, Cochain, FormalCochain, chain_space, cochain_dim
from .linalg import (DEFAULT_PRIMES, Echelon, Field, FieldError, Mat, SubspaceBasis, column_space_basis, nullspace_basis,
                     parity_sign)
from .symbolic import scalar_is_zero
from .triple import TripleSpec


def cap(f: Cochain, T: ChainVector) -> ChainVector:
    """i_f T = (mu o_2 f) .0 T."""
    return cyclic.bullet(operad.comp(operad.mu(f.triple), 2, f), 0, T)


@dataclass(frozen=True)
class LieConvention:
    """One reading of the printed Lie-derivative formula.

    ``first_upper``: upper limit of the f .i sum ("p-m+1" or "p-m").
    ``sign1``: exponent (m-1)(i-1) ("m") or (p-1)(i-1) ("p").
    ``second_upper``: upper limit of the f .0 t^{i-1} sum ("m" or "p").
    ``sign2``: exponent p(i-1)+m-1 ("pm") or m(i-1)+p-1 ("mp").
    ``top``: sign of the m = p+1 case, (-1)^{m-1} ("m") or (-1)^{p-1} ("p").
    """

    first_upper: str = "p-m+1"
    sign1: str = "m"
    second_upper: str = "m"
    sign2: str = "pm"
    top: str = "m"

    def label(self) -> str:
        return (f"upper1={self.first_upper},sign1={self.sign1},upper2={self.second_upper},"
                f"sign2={self.sign2},top={self.top}")


CONVENTIONS = tuple(LieConvention(*c) for c in product(
    ("p-m+1", "p-m"), ("m", "p"), ("m", "p"), ("pm", "mp"), ("m", "p")))

DEFAULT_CONVENTION = LieConvention()


def _combine(triple, degree, terms) -> ChainVector:
    out: dict = {}
    for c, v in terms:
        for k, x in v.coords.items():
            out[k] = out.get(k, 0) + c * x
    return ChainVector(triple, degree, {k: x for k, x in out.items() if x})


def lie(f: Cochain, T: ChainVector, conv: LieConvention = DEFAULT_CONVENTION) -> ChainVector:
    triple = T.triple
    m, p = f.degree, T.degree
    deg = p - m + 1
    if m > p + 1:
        return ChainVector(triple, deg, {})
    if m == p + 1:
        e = m - 1 if conv.top == "m" else p - 1
        return cyclic.bullet(f, 0, cyclic.norm(T)).scale(parity_sign(e))
    terms = []
    up1 = p - m + 1 if conv.first_upper == "p-m+1" else p - m
    for i in range(1, up1 + 1):
        e = (m - 1) * (i - 1) if conv.sign1 == "m" else (p - 1) * (i - 1)
        terms.append((parity_sign(e), cyclic.bullet(f, i, T)))
    up2 = m if conv.second_upper == "m" else p
    cur = T
    for i in range(1, up2 + 1):
        e = p * (i - 1) + m - 1 if conv.sign2 == "pm" else m * (i - 1) + p - 1
        terms.append((parity_sign(e), cyclic.bullet(f, 0, cur)))
        cur = cyclic.cyclic_t(cur)
    return _combine(triple, deg, terms)


# -- exhaustive identity checks over formal cochains ---------------------------

def chains_equal(F, x: ChainVector, y: ChainVector) -> bool:
    if x.degree != y.degree:
        return not x.coords and not y.coords
    keys = set(x.coords) | set(y.coords)
    return all(scalar_is_zero(F, x.coords.get(k, 0) - y.coords.get(k, 0)) for k in keys)


def descend_lie_residual(f, T, conv=DEFAULT_CONVENTION) -> ChainVector:
    """[b, L_f] T + L_{delta_mu f} T  (should vanish)."""
    m = f.degree
    bL = cyclic.boundary(lie(f, T, conv))
    Lb = lie(f, cyclic.boundary(T), conv) if T.degree >= 1 else None
    terms = [(1, bL), (1, lie(operad.delta_mu(f), T, conv))]
    if Lb is not None:
        terms.append((-parity_sign(m - 1), Lb))
    return _combine(T.triple, T.degree - m, terms)


def graded_lie_residual(f, g, T, conv=DEFAULT_CONVENTION) -> ChainVector:
    """[L_f, L_g] T - L_{[f,g]} T."""
    m, n = f.degree, g.degree
    deg = T.degree - m - n + 2
    terms = [(1, lie(f, lie(g, T, conv), conv)),
             (-parity_sign((m - 1) * (n - 1)), lie(g, lie(f, T, conv), conv)),
             (-1, lie(operad.bracket(f, g), T, conv))]
    return _combine(T.triple, deg, terms)


def descend_cap_residual(f, T) -> ChainVector:
    """i_{delta_mu f} T - (b i_f T - (-1)^m i_f b T)."""
    m = f.degree
    terms = [(1, cap(operad.delta_mu(f), T)), (-1, cyclic.boundary(cap(f, T)))]
    if T.degree >= 1:
        terms.append((parity_sign(m), cap(f, cyclic.boundary(T))))
    return _combine(T.triple, T.degree - m - 1, terms)


def graded_cap_residual(f, g, T) -> ChainVector:
    """i_f i_g T - i_{f cup g} T."""
    return _combine(T.triple, T.degree - f.degree - g.degree,
                    [(1, cap(f, cap(g, T))), (-1, cap(operad.cup(f, g), T))])


def _all_zero(triple, vectors) -> bool:
    F = triple.field
    return all(not v.coords or chains_equal(F, v, ChainVector(triple, v.degree, {}))
               for v in vectors)


def lie_convention_passes(triple: TripleSpec, conv: LieConvention, max_p: int,
                          max_m: int = 2) -> bool:
    """Exhaustive descend + graded-module check of one Lie convention."""
    for m in range(0, max_m + 1):
        f = FormalCochain(triple, m, "f")
        for p in range(0, max_p + 1):
            if not 0 <= p - m + 1 <= max_p:
                continue
            for j in range(chain_space(triple, p).dim):
                T = ChainVector.basis(triple, p, j)
                if not _all_zero(triple, [descend_lie_residual(f, T, conv)]):
                    return False
    for m in range(0, max_m + 1):
        for n in range(0, max_m + 1):
            f, g = FormalCochain(triple, m, "f"), FormalCochain(triple, n, "g")
            for p in range(0, max_p + 1):
                if not lie_pair_in_range(p, m, n, max_p):
                    continue
                for j in range(chain_space(triple, p).dim):
                    T = ChainVector.basis(triple, p, j)
                    if not _all_zero(triple, [graded_lie_residual(f, g, T, conv)]):
                        return False
    return True


def lie_pair_in_range(p: int, m: int, n: int, max_p: int) -> bool:
    """Every chain degree met while evaluating [L_f, L_g] on degree p is in 0..max_p."""
    degs = (p - n + 1, p - m + 1, p - m - n + 2)
    return all(0 <= d <= max_p for d in degs)


def calibrate_lie(triples, max_p: int = 3, max_m: int = 2) -> list:
    """All conventions passing on every given triple."""
    return [c for c in CONVENTIONS
            if all(lie_convention_passes(t, c, max_p, max_m) for t in triples)]


# -- homology ---------------------------------------------------------------------

@dataclass
class DegreeReport:
    degree: int
    dim: int
    rank_out: int
    dim_ker: int
    rank_in: int
    betti: int
    representatives: list = field(default_factory=list)

    def to_dict(self, F) -> dict:
        return {"degree": self.degree, "dim": self.dim, "rank_out": self.rank_out,
                "dim_ker": self.dim_ker, "rank_in": self.rank_in, "betti": self.betti,
                "representatives": [[[k, F.format(x)] for k, x in sorted(v.items())]
                                    for v in self.representatives]}


@dataclass
class HomologyReport:
    triple_name: str
    field_name: str
    kind: str
    degrees: list

    @property
    def betti(self) -> list:
        return [d.betti for d in self.degrees]

    def to_dict(self, F) -> dict:
        return {"triple": self.triple_name, "field": self.field_name, "kind": self.kind,
                "betti": self.betti, "degrees": [d.to_dict(F) for d in self.degrees]}


CohomologyReport = HomologyReport


def _degree_report(F, degree, dim, d_out: Mat | None, d_in: Mat | None) -> DegreeReport:
    """Homology at a space with outgoing map d_out and incoming map d_in."""
    if d_out is None or d_out.rows == 0:
        ker = SubspaceBasis(dim, tuple({i: 1} for i in range(dim)), F)
        r_out = 0
    else:
        ker = nullspace_basis(d_out)
        r_out = dim - ker.dim
    ech = Echelon(F, dim)
    r_in = 0
    if d_in is not None:
        for j in range(d_in.cols):
            col = d_in.data.get(j)
            if col and ech.add(col):
                r_in += 1
    reps = [v for v in ker.vectors if ech.add(v)]
    betti = ker.dim - r_in
    if len(reps) != betti:
        raise ArithmeticError("image is not contained in the kernel")
    return DegreeReport(degree, dim, r_out, ker.dim, r_in, betti, reps)


def homology(t: TripleSpec, max_p: int) -> HomologyReport:
    degrees = []
    for p in range(max_p + 1):
        dim = chain_space(t, p).dim
        d_out = cyclic.boundary_matrix(t, p) if p >= 1 else None
        d_in = cyclic.boundary_matrix(t, p + 1)
        degrees.append(_degree_report(t.field, p, dim, d_out, d_in))
    return HomologyReport(t.name, t.field.name, "homology", degrees)


def cohomology(t: TripleSpec, max_n: int) -> CohomologyReport:
    degrees = []
    for n in range(max_n + 1):
        dim = cochain_dim(t, n)
        d_out = operad.delta_matrix(t, n)
        d_in = operad.delta_matrix(t, n - 1) if n >= 1 else None
        degrees.append(_degree_report(t.field, n, dim, d_out, d_in))
    return HomologyReport(t.name, t.field.name, "cohomology", degrees)


def normalized_homology(t: TripleSpec, max_p: int) -> HomologyReport:
    """Homology of the normalized quotient (coordinates of the chosen section)."""
    degrees = []
    for p in range(max_p + 1):
        dim = cyclic.normalized_chains(t, p).dim
        d_out = cyclic.normalized_boundary_matrix(t, p) if p >= 1 else None
        d_in = cyclic.normalized_boundary_matrix(t, p + 1)
        degrees.append(_degree_report(t.field, p, dim, d_out, d_in))
    return HomologyReport(t.name, t.field.name, "normalized homology", degrees)


def _restricted_delta(t: TripleSpec, n: int) -> Mat:
    """delta_eps on the conormalized basis of C^n, valued in C^{n+1} coordinates."""
    K = operad.conormalized_basis(t, n)
    D = operad.delta_matrix(t, n)
    return Mat(D.rows, K.dim, t.field, {j: D.apply(v) for j, v in enumerate(K.vectors)})


def conormalized_cohomology(t: TripleSpec, max_n: int) -> CohomologyReport:
    """Cohomology of the conormalized complex; representatives in C^n coordinates."""
    degrees = []
    F = t.field
    for n in range(max_n + 1):
        K = operad.conormalized_basis(t, n)
        dim = cochain_dim(t, n)
        ker = nullspace_basis(_restricted_delta(t, n))
        cocycles = []
        for c in ker.vectors:
            v: dict = {}
            for j, x in c.items():
                for k, y in K.vectors[j].items():
                    v[k] = v.get(k, 0) + x * y
            cocycles.append({k: F(x) for k, x in v.items() if F(x)})
        ech = Echelon(F, dim)
        r_in = 0
        if n >= 1:
            R = _restricted_delta(t, n - 1)
            for j in range(R.cols):
                col = R.data.get(j)
                if col and ech.add(col):
                    r_in += 1
        reps = [v for v in cocycles if ech.add(v)]
        degrees.append(DegreeReport(n, K.dim, K.dim - ker.dim, ker.dim, r_in,
                                    ker.dim - r_in, reps))
    return HomologyReport(t.name, F.name, "conormalized cohomology", degrees)


def boundary_image(t: TripleSpec, p: int) -> SubspaceBasis:
    """im(boundary: C_{p+1} -> C_p)."""
    return t.cache(("boundary_image", p, _token()),
                   lambda: column_space_basis(cyclic.boundary_matrix(t, p + 1)))


def coboundary_image(t: TripleSpec, n: int) -> SubspaceBasis:
    """im(delta_eps: C^{n-1} -> C^n)."""
    def build():
        if n == 0:
            return SubspaceBasis(cochain_dim(t, 0), (), t.field)
        return column_space_basis(operad.delta_matrix(t, n - 1))
    return t.cache(("coboundary_image", n, _token()), build)


def _token():
    from . import mutation
    return mutation.token()


def is_boundary(T: ChainVector) -> bool:
    return boundary_image(T.triple, T.degree).in_span(T.normalized().coords)


def is_coboundary(f: Cochain) -> bool:
    return coboundary_image(f.triple, f.degree).in_span(f.materialize().normalized().to_vector())


def is_cycle(T: ChainVector) -> bool:
    return T.degree == 0 or cyclic.boundary(T).is_zero()


def is_cocycle(f: Cochain) -> bool:
    return operad.delta_eps(f).is_zero()


def cocycle_witness(f: Cochain):
    """First (output index, input index) where delta_eps f is nonzero, or None."""
    F = f.triple.field
    d = operad.delta_eps(f)
    for t in range(d.input_dim()):
        for k, x in sorted(d.column(t).items()):
            if F(x):
                return (k, t)
    return None



@dataclass
class FieldConsistency:
    """Betti numbers over Q against the first prime of a list that is not unlucky."""

    triple_name: str
    max_degree: int
    betti_q: dict
    prime: int | None
    betti_p: dict | None
    unlucky: list

    @property
    def agree(self) -> bool:
        return self.prime is not None

    def to_dict(self) -> dict:
        return {"triple": self.triple_name, "max_degree": self.max_degree,
                "betti_Q": self.betti_q, "prime": self.prime, "betti_Fp": self.betti_p,
                "unlucky_primes": self.unlucky, "agree": self.agree}


def field_consistency(t: TripleSpec, max_degree: int,
                      primes=DEFAULT_PRIMES) -> FieldConsistency:
    """Compare homology and cohomology Betti numbers over Q and over F_p.

    A prime giving different numbers (or unable to represent the structure
    constants) is recorded as unlucky and the next prime is tried.
    """
    tq = t.with_field(Field.Q())
    q = {"homology": homology(tq, max_degree).betti,
         "cohomology": cohomology(tq, max_degree).betti}
    unlucky = []
    for p in primes:
        try:
            tp = t.with_field(Field.Fp(p))
        except FieldError:
            unlucky.append(p)
            continue
        b = {"homology": homology(tp, max_degree).betti,
             "cohomology": cohomology(tp, max_degree).betti}
        if b == q:
            return FieldConsistency(t.name, max_degree, q, p, b, unlucky)
        unlucky.append(p)
    return FieldConsistency(t.name, max_degree, q, None, None, unlucky)
