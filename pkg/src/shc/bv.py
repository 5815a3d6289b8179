"""BV probe: test whether a cycle c turns the cohomology into a BV algebra.

Given a cycle c of degree k, the probe checks that B[c] = 0, assembles
Theta_m : H^m -> H_{k-m}, [f] -> [i_f c], and reports per-degree
bijectivity.  When every computed Theta_m is bijective it builds
Delta = Theta^{-1} B Theta on cohomology, checks Delta^2 = 0 and the
generating identity

    [f, g] = -(-1)^m (Delta(f cup g) - Delta f cup g - (-1)^m f cup Delta g)

on cocycle representatives modulo coboundaries.  Homology is taken in the
normalized complex, where B is defined; the projection from the full
complex is a quasi-isomorphism, so the Theta_m are unaffected.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from . import calculus, cyclic, operad
from .complexes import ChainVector, Cochain, linear_combination
from .linalg import Mat, SubspaceBasis, column_space_basis, parity_sign, rank
from .triple import TripleSpec


class NotACycle(ValueError):
    """The probed chain is not a cycle; ``witness`` is a nonzero entry of its boundary."""

    def __init__(self, witness: dict):
        self.witness = witness
        super().__init__(f"chain is not a cycle: boundary has coefficient "
                         f"{witness['coefficient']} at basis index {witness['index']}")


@dataclass
class ThetaDegree:
    degree: int
    cohomology_dim: int
    homology_degree: int
    homology_dim: int
    rank: int
    bijective: bool


@dataclass
class BVReport:
    triple: str
    field: str
    chain_degree: int
    max_degree: int
    B_class_zero: bool
    theta: list
    status: str
    reason: str
    delta_zero: bool | None = None
    delta_squared_zero: bool | None = None
    identity_checks: int = 0
    identity_failures: list = field(default_factory=list)

    @property
    def applicable(self) -> bool:
        return self.status != "not applicable"

    def summary(self) -> str:
        if self.status == "not applicable":
            return f"not applicable: {self.reason}"
        parts = ["applicable", "Δ=0" if self.delta_zero else "Δ≠0"]
        if self.status == "applicable":
            parts.append("identity holds")
        else:
            parts.append(f"IDENTITY FAILS ({len(self.identity_failures)} failures)")
        return ", ".join(parts)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["summary"] = self.summary()
        return d


def unit_class(t: TripleSpec) -> ChainVector:
    """The degree-0 chain 1_A."""
    return ChainVector(t, 0, dict(t.A.unit_vec))


class _Classes:
    """Coordinates of (co)homology classes: reduce against image + representatives."""

    def __init__(self, image: SubspaceBasis, reps: list):
        self.offset = image.dim
        self.dim = len(reps)
        self.reps = reps
        self.basis = SubspaceBasis(image.ambient_dim, tuple(image.vectors) + tuple(reps),
                                   image.field)
        self.F = image.field

    def coords(self, v: dict) -> list:
        co = self.basis.echelon().coefficients({k: x for k, x in v.items() if self.F(x)})
        if co is None:
            raise ArithmeticError("vector is not a (co)cycle")
        return [co.get(self.offset + q, 0) for q in range(self.dim)]


def _homology_classes(t, p) -> _Classes:
    image = _normalized_image(t, p)
    rep = calculus.normalized_homology(t, p).degrees[p]
    return _Classes(image, list(rep.representatives))


def _normalized_image(t, p):
    return column_space_basis(cyclic.normalized_boundary_matrix(t, p + 1))


def _solve(M: Mat, rhs: list, F) -> list:
    """x with M x = rhs for an invertible square matrix M."""
    basis = SubspaceBasis(M.rows, tuple(M.column(j) for j in range(M.cols)), F)
    co = basis.echelon().coefficients({i: x for i, x in enumerate(rhs) if F(x)})
    return [co.get(j, 0) for j in range(M.cols)]


def bv_probe(t: TripleSpec, c: ChainVector, max_degree: int | None = None) -> BVReport:
    F = t.field
    k = c.degree
    if max_degree is None:
        max_degree = k + 1
    if k >= 1:
        d = cyclic.boundary(c).normalized()
        if not d.is_zero():
            idx = min(d.coords)
            raise NotACycle({"index": idx, "coefficient": str(F.format(d.coords[idx]))})
    Nk = cyclic.normalized_chains(t, k)
    c_norm = Nk.project_vector(c.coords)
    # (1) B[c] = 0
    Bc = cyclic.connes_B_matrix(t, k).apply(c_norm)
    B_zero = _normalized_image(t, k + 1).in_span(Bc)
    coh = calculus.cohomology(t, max_degree)
    cocycles = {d.degree: [Cochain.from_vector(t, d.degree, v) for v in d.representatives]
                for d in coh.degrees}
    coclasses = {d.degree: _Classes(calculus.coboundary_image(t, d.degree), list(d.representatives))
                 for d in coh.degrees}
    # (2)-(3) Theta_m
    thetas, theta_mats = [], {}
    for m in range(max_degree + 1):
        q = k - m
        if q < 0:
            hom_dim = 0
            M = Mat.zero(0, len(cocycles[m]), F)
        else:
            hc = _homology_classes(t, q)
            Nq = cyclic.normalized_chains(t, q)
            cols = {}
            for j, f in enumerate(cocycles[m]):
                img = Nq.project_vector(calculus.cap(f, c).coords)
                cols[j] = {i: x for i, x in enumerate(hc.coords(img)) if F(x)}
            hom_dim = hc.dim
            M = Mat(hom_dim, len(cocycles[m]), F, cols)
        r = rank(M)
        ok = hom_dim == len(cocycles[m]) == r
        thetas.append(ThetaDegree(m, len(cocycles[m]), q, hom_dim, r, ok))
        theta_mats[m] = M
    report = BVReport(t.name, F.name, k, max_degree, B_zero, [asdict(x) for x in thetas],
                      "applicable", "")
    if not B_zero:
        report.status, report.reason = "not applicable", "B[c] is not zero in homology"
        return report
    bad = [x.degree for x in thetas if not x.bijective]
    if bad:
        report.status = "not applicable"
        report.reason = f"Θ{_sup(bad[0])} not bijective"
        return report
    # (4) Delta = Theta^{-1} B Theta : H^m -> H^{m-1}
    delta = {}
    for m in range(1, max_degree + 1):
        cols = {}
        if cocycles[m]:
            q = k - m
            hc, hc_up = _homology_classes(t, q), _homology_classes(t, q + 1)
            for j in range(len(cocycles[m])):
                chain = _combine_reps(hc, theta_mats[m].column(j))
                y = hc_up.coords(cyclic.connes_B_matrix(t, q).apply(chain))
                x = _solve(theta_mats[m - 1], y, F)
                cols[j] = {i: v for i, v in enumerate(x) if F(v)}
        delta[m] = Mat(len(cocycles[m - 1]), len(cocycles[m]), F, cols)
    report.delta_zero = all(D.is_zero() for D in delta.values())
    report.delta_squared_zero = all((delta[m - 1] @ delta[m]).is_zero()
                                    for m in range(2, max_degree + 1))

    def delta_cochain(m, coords):
        """Representative cochain of Delta applied to the class with these coordinates."""
        if m == 0:
            return Cochain.zero(t, -1)
        out = delta[m].apply({i: x for i, x in enumerate(coords) if F(x)})
        return _rep_cochain(t, m - 1, cocycles[m - 1], out)

    # generating identity on pairs of representatives
    for m, fs in cocycles.items():
        for n, gs in cocycles.items():
            if m + n > max_degree or m + n - 1 < 0:
                continue
            for a, f in enumerate(fs):
                for b, g in enumerate(gs):
                    report.identity_checks += 1
                    fg = operad.cup(f, g).materialize()
                    lhs = operad.bracket(f, g).materialize()
                    terms = [delta_cochain(m + n, coclasses[m + n].coords(fg.to_vector()))]
                    df = delta_cochain(m, [1 if i == a else 0 for i in range(len(fs))])
                    dg = delta_cochain(n, [1 if i == b else 0 for i in range(len(gs))])
                    rhs_terms = [(1, terms[0])]
                    if m >= 1:
                        rhs_terms.append((-1, operad.cup(df, g)))
                    if n >= 1:
                        rhs_terms.append((-parity_sign(m), operad.cup(f, dg)))
                    inner = linear_combination(t, m + n - 1, rhs_terms)
                    diff = linear_combination(t, m + n - 1,
                                              [(1, lhs), (parity_sign(m), inner)]).materialize()
                    if not calculus.coboundary_image(t, m + n - 1).in_span(diff.to_vector()):
                        report.identity_failures.append({"f": [m, a], "g": [n, b]})
    if report.identity_failures or not report.delta_squared_zero:
        report.status = "applicable but identity fails"
    return report


def _combine_reps(classes: _Classes, coords: dict) -> dict:
    out: dict = {}
    for q, x in coords.items():
        for i, y in classes.reps[q].items():
            out[i] = out.get(i, 0) + x * y
    return out


def _rep_cochain(t, degree, reps: list, coords: dict) -> Cochain:
    if not reps:
        return Cochain.zero(t, degree)
    terms = [(x, reps[q]) for q, x in coords.items()]
    if not terms:
        return Cochain.zero(t, degree)
    return linear_combination(t, degree, terms).materialize()


_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _sup(n: int) -> str:
    return str(n).translate(_SUPERSCRIPTS)
