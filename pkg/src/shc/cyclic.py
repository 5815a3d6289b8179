"""Chain side: the comp-module actions, the cyclic operator and the boundary.

Chains of degree p are triangles of size p + 1 with rows 0..p.  The action
``bullet(f, i, T)`` replaces rows i..i+m-1 of T by the single row f(block),
for f of degree m; when m = 0 it inserts a row holding f() at position i
with all new b-entries equal to 1_B.  The same contraction template drives
the operad composition, which is what makes the comp-module relations
checkable.

``boundary`` is an independent implementation of the closed boundary
formula; the alternating face sum must agree with it exactly.
"""

from __future__ import annotations

from . import mutation
from .complexes import (ChainVector, Cochain, chain_space, contract_vector,
                        lift_basis_map, merge_adjacent, pair_position, space)
from .linalg import Echelon, Mat, SubspaceBasis, parity_sign
from .operad import e0, mu
from .triple import TripleSpec


def _zero(triple, degree):
    return ChainVector(triple, degree, {})


def bullet(f: Cochain, i: int, T: ChainVector) -> ChainVector:
    """f acting on rows i..i+m-1 of T (zero outside the admissible range)."""
    triple = T.triple
    p, m = T.degree, f.degree
    deg = p - m + 1
    if m < 0 or i < 0 or (i >= 1 and m > p) or (i == 0 and m > p + 1) or i > p - m + 1:
        return _zero(triple, deg)
    coords = contract_vector(triple, p + 1, i, m, T.coords, f.column)
    return ChainVector(triple, deg, coords)


def _rotate(triple, p, z):
    sp = space(triple, p + 1)
    a, b = sp.unpack(z)
    r = p + 1

    def bb(s, t):
        return b[pair_position(r, s, t)]

    na = (a[p],) + a[:p]
    nb = []
    for s in range(r):
        for t in range(s + 1, r):
            nb.append(bb(t - 1, p) if s == 0 else bb(s - 1, t - 1))
    return sp.pack(na, nb)


def cyclic_t(T: ChainVector) -> ChainVector:
    """Move the last row to the top: diagonal (a_p, a_0, ..., a_{p-1})."""
    p = T.degree
    if p == 0:
        return ChainVector(T.triple, 0, dict(T.coords))
    sgn = mutation.sign("t", p)
    out: dict = {}
    for z, c in T.coords.items():
        k = _rotate(T.triple, p, z)
        out[k] = out.get(k, 0) + sgn * c
    return ChainVector(T.triple, p, out)


def cyclic_power(T: ChainVector, k: int) -> ChainVector:
    for _ in range(k):
        T = cyclic_t(T)
    return T


def face(i: int, T: ChainVector) -> ChainVector:
    p = T.degree
    if not 0 <= i <= p or p == 0:
        raise IndexError(f"face index {i} outside 0..{p} (degree {p})")
    m = mu(T.triple)
    if i < p:
        return bullet(m, i, T)
    return bullet(m, 0, cyclic_t(T))


def degeneracy(j: int, T: ChainVector) -> ChainVector:
    p = T.degree
    if not 0 <= j <= p:
        raise IndexError(f"degeneracy index {j} outside 0..{p}")
    return bullet(e0(T.triple), j + 1, T)


def extra_degeneracy(T: ChainVector) -> ChainVector:
    return bullet(e0(T.triple), 0, T)


def _combine(triple, degree, terms) -> ChainVector:
    out: dict = {}
    for c, v in terms:
        for k, x in v.coords.items():
            out[k] = out.get(k, 0) + c * x
    return ChainVector(triple, degree, {k: x for k, x in out.items() if x})


def face_sum(T: ChainVector) -> ChainVector:
    p = T.degree
    if p == 0:
        return _zero(T.triple, -1)
    return _combine(T.triple, p - 1, [(parity_sign(i), face(i, T)) for i in range(p + 1)])


def norm(T: ChainVector) -> ChainVector:
    p = T.degree
    terms, cur = [], T
    for i in range(p + 1):
        terms.append((parity_sign(i * p), cur))
        cur = cyclic_t(cur)
    return _combine(T.triple, p, terms)


def connes_B_full(T: ChainVector) -> ChainVector:
    """Sum_i (-1)^{ip} e0 .0 t^i(T) in the full complex (before projection)."""
    return extra_degeneracy(norm(T))


def boundary(T: ChainVector) -> ChainVector:
    """The closed boundary formula (independent of the face maps)."""
    triple = T.triple
    n = T.degree
    if n == 0:
        return _zero(triple, -1)
    out: dict = {}
    for z, c in T.coords.items():
        for i in range(n):
            sgn = parity_sign(i) * mutation.sign("boundary", i)
            for idx, x in merge_adjacent(triple, n + 1, i, z):
                out[idx] = out.get(idx, 0) + sgn * c * x
        sgn = parity_sign(n) * mutation.sign("boundary", n)
        for idx, x in _wrap(triple, n, z):
            out[idx] = out.get(idx, 0) + sgn * c * x
    return ChainVector(triple, n - 1, {k: v for k, v in out.items() if v})


def _wrap(triple, n, z):
    """Last boundary term: row 0 becomes eps(b_{0,n}) a_n a_0, b'_{0,j} = b_{j,n} b_{0,j}."""
    memo = triple.cache(("wrap", n), dict)
    try:
        return memo[z]
    except KeyError:
        pass
    src, dst = space(triple, n + 1), space(triple, n)
    a, b = src.unpack(z)
    A, Bm = triple.A, triple.B

    def bb(s, t):
        return b[pair_position(n + 1, s, t)]

    terms = {}
    diag = A.mul(A.mul(triple.eps_of({bb(0, n): 1}), {a[n]: 1}), {a[0]: 1})
    for d, c in diag.items():
        terms[(d,) + tuple(a[1:n])] = c
    entries = []
    for s in range(n):
        for t in range(s + 1, n):
            entries.append(Bm.mul({bb(t, n): 1}, {bb(0, t): 1}) if s == 0 else {bb(s, t): 1})
    results = [(tuple(k), (), c) for k, c in terms.items()]
    for vec in entries:
        results = [(ka, kb + (d,), c * x) for ka, kb, c in results for d, x in vec.items()]
    out: dict = {}
    for ka, kb, c in results:
        if c:
            idx = dst.pack(ka, kb)
            out[idx] = out.get(idx, 0) + c
    res = sorted((k, v) for k, v in out.items() if v)
    memo[z] = res
    return res


# -- matrices ------------------------------------------------------------------

def _lift(triple, src, dst, fn, key):
    return lift_basis_map(triple, src, dst,
                          lambda j: fn(ChainVector.basis(triple, src, j)), cache_key=key)


def boundary_matrix(triple: TripleSpec, p: int) -> Mat:
    """Matrix of the boundary C_p -> C_{p-1} (p >= 1)."""
    return _lift(triple, p, p - 1, boundary, "boundary")


def face_sum_matrix(triple: TripleSpec, p: int) -> Mat:
    return _lift(triple, p, p - 1, face_sum, "face_sum")


def t_matrix(triple: TripleSpec, p: int) -> Mat:
    return _lift(triple, p, p, cyclic_t, "t")


def face_matrix(triple: TripleSpec, i: int, p: int) -> Mat:
    return _lift(triple, p, p - 1, lambda T: face(i, T), ("face", i))


def degeneracy_matrix(triple: TripleSpec, j: int, p: int) -> Mat:
    return _lift(triple, p, p + 1, lambda T: degeneracy(j, T), ("degeneracy", j))


def norm_matrix(triple: TripleSpec, p: int) -> Mat:
    return _lift(triple, p, p, norm, "norm")


def extra_degeneracy_matrix(triple: TripleSpec, p: int) -> Mat:
    return _lift(triple, p, p + 1, extra_degeneracy, "extra_degeneracy")


def connes_B_full_matrix(triple: TripleSpec, p: int) -> Mat:
    return _lift(triple, p, p + 1, connes_B_full, "connes_B_full")


def bullet_matrix(triple: TripleSpec, f: Cochain, i: int, p: int, key=None) -> Mat:
    deg = p - f.degree + 1
    return lift_basis_map(triple, p, deg,
                          lambda j: bullet(f, i, ChainVector.basis(triple, p, j)),
                          cache_key=None if key is None else ("bullet", key, i))


# -- normalized complex --------------------------------------------------------

class NormalizedChains:
    """The quotient C_p / D_p with D_p spanned by the degeneracy images.

    The section is the span of the coordinate vectors that are not pivots of
    a deterministic echelon basis of D_p.  ``project`` reduces modulo D_p and
    reads the remaining coordinates; ``include`` is the coordinate inclusion.
    """

    def __init__(self, triple: TripleSpec, p: int):
        self.triple = triple
        self.p = p
        dim = chain_space(triple, p).dim
        ech = Echelon(triple.field, dim)
        if p >= 1:
            for j in range(p):
                S = degeneracy_matrix(triple, j, p - 1)
                for c in range(S.cols):
                    col = S.data.get(c)
                    if col:
                        ech.add(col)
        self.degenerate = ech
        pivots = set(ech.pivot_rows)
        self.coords = [k for k in range(dim) if k not in pivots]
        self.position = {k: q for q, k in enumerate(self.coords)}
        self.dim = len(self.coords)
        self.ambient_dim = dim

    def project_vector(self, v) -> dict:
        rem, _ = self.degenerate.reduce(v)
        return {self.position[k]: x for k, x in rem.items()}

    def include_vector(self, v) -> dict:
        return {self.coords[q]: x for q, x in v.items()}

    def projection(self) -> Mat:
        return Mat(self.dim, self.ambient_dim, self.triple.field,
                   {j: self.project_vector({j: 1}) for j in range(self.ambient_dim)})

    def inclusion(self) -> Mat:
        return Mat(self.ambient_dim, self.dim, self.triple.field,
                   {q: {k: 1} for q, k in enumerate(self.coords)}, normalized=True)

    def basis(self) -> SubspaceBasis:
        return SubspaceBasis(self.ambient_dim, tuple({k: 1} for k in self.coords), self.triple.field)


def normalized_chains(triple: TripleSpec, p: int) -> NormalizedChains:
    return triple.cache(("normalized_chains", p, mutation.token()),
                        lambda: NormalizedChains(triple, p))


def normalized_chain_basis(triple: TripleSpec, p: int) -> SubspaceBasis:
    return normalized_chains(triple, p).basis()


def _normalized_map(triple, src, dst, op, key) -> Mat:
    """pi_dst . op . iota_src as a matrix on the normalized coordinates."""
    def build():
        Ns, Nd = normalized_chains(triple, src), normalized_chains(triple, dst)
        data = {}
        for q, k in enumerate(Ns.coords):
            img = op(ChainVector.basis(triple, src, k))
            col = Nd.project_vector(img.coords)
            if col:
                data[q] = col
        return Mat(Nd.dim, Ns.dim, triple.field, data)
    return triple.cache(("normalized_map", key, src, dst, mutation.token()), build)


def normalized_boundary_matrix(triple: TripleSpec, p: int) -> Mat:
    return _normalized_map(triple, p, p - 1, boundary, "boundary")


def connes_B_matrix(triple: TripleSpec, p: int) -> Mat:
    """Connes' B : N_p -> N_{p+1} on the normalized complex."""
    return _normalized_map(triple, p, p + 1, connes_B_full, "B")


def connes_B(T: ChainVector) -> ChainVector:
    """B on a coset representative; the result is the normalized representative."""
    triple, p = T.triple, T.degree
    Nd = normalized_chains(triple, p + 1)
    img = connes_B_full(T)
    return ChainVector(triple, p + 1, Nd.include_vector(Nd.project_vector(img.coords)))
