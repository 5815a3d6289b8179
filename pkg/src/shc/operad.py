"""The operad O^n = C^n((A,B,eps);A) of secondary Hochschild cochains.

Operations take cochains (concrete, lazy or formal) and return lazy
cochains, so the same code evaluates on numbers and on formal variables.

Conventions fixed here (each is exercised by the test-suite):

* ``comp(f, i, g)`` lets g consume the input rows i..i+m-1 (1-based slot i,
  internal start row i-1); rows above the block see products of their
  entries over the block's columns, columns to the right see products over
  the block's rows.  A degree-0 g inserts a row whose new b-entries are 1_B.
* ``cup(f, g) = (mu o_2 f) o_1 g``: g reads the first deg(g) rows and its
  value is the left factor.  :func:`cup_explicit` is the closed formula.
* codegeneracy j inserts e0 in slot j + 1.
* ``delta_eps`` is the closed coboundary formula.  It agrees with the
  alternating coface sum, and ``delta_eps = (-1)**(n+1) * delta_mu`` on
  cochains of degree n (see :data:`DELTA_SIGN`).
"""

from __future__ import annotations

from functools import reduce

from . import mutation
from .complexes import (Cochain, LazyCochain, bprod, contraction, cochain_dim,
                        extract_subtriangle, input_space, linear_combination,
                        merge_adjacent, operator_matrix, pair_position)
from .linalg import Mat, SubspaceBasis, nullspace_basis, parity_sign
from .triple import TripleSpec


def mu(triple: TripleSpec) -> Cochain:
    def build():
        A = triple.A
        sp = input_space(triple, 2)
        cols = {}
        for t in range(sp.dim):
            (a1, a2), (b,) = sp.unpack(t)
            cols[t] = A.mul(triple.eps_of({b: 1}), A.mul_basis(a1, a2))
        return Cochain(triple, 2, cols)
    return triple.cache("mu", build)


def one(triple: TripleSpec) -> Cochain:
    return triple.cache("one", lambda: Cochain(triple, 1, {k: {k: 1} for k in range(triple.dA)}))


def e0(triple: TripleSpec) -> Cochain:
    return triple.cache("e0", lambda: Cochain(triple, 0, {0: dict(triple.A.unit_vec)}))


def _zero(triple, degree):
    return Cochain(triple, degree, {})


def comp(f: Cochain, i: int, g: Cochain) -> Cochain:
    triple = f.triple
    n, m = f.degree, g.degree
    if i < 1:
        raise ValueError(f"composition slot must be >= 1, got {i}")
    if n == 0 or i > n:
        return _zero(triple, n + m - 1)
    r = n + m - 1
    s = i - 1
    sgn = mutation.sign("comp", i)

    def col(t):
        sub, entries, stride = contraction(triple, r, s, m, t)
        gv = g.column(sub)
        out: dict = {}
        for e, bc in entries:
            for k, x in gv.items():
                w = bc * x
                for kk, y in f.column(e + stride * k).items():
                    out[kk] = out.get(kk, 0) + w * y
        if sgn < 0:
            return {k: -v for k, v in out.items() if v}
        return {k: v for k, v in out.items() if v}

    return LazyCochain(triple, r, col, formal=f.is_formal or g.is_formal)


def circle(f: Cochain, g: Cochain) -> Cochain:
    n, m = f.degree, g.degree
    deg = n + m - 1
    terms = [(parity_sign((i - 1) * (m - 1)), comp(f, i, g)) for i in range(1, n + 1)]
    if not terms:
        return _zero(f.triple, deg)
    return linear_combination(f.triple, deg, terms)


def bracket(f: Cochain, g: Cochain) -> Cochain:
    n, m = f.degree, g.degree
    return linear_combination(f.triple, n + m - 1,
                              [(1, circle(f, g)), (-parity_sign((n - 1) * (m - 1)), circle(g, f))])


def cup(f: Cochain, g: Cochain) -> Cochain:
    return comp(comp(mu(f.triple), 2, f), 1, g)


def cup_explicit(f: Cochain, g: Cochain) -> Cochain:
    """Closed cup formula: eps(prod of cross entries) * g(first block) * f(rest)."""
    triple = f.triple
    m, n = g.degree, f.degree
    r = m + n
    sp = input_space(triple, r)
    gsp, fsp = input_space(triple, m), input_space(triple, n)
    A = triple.A

    def col(t):
        tri = sp.triangle(t)
        first = extract_subtriangle(tri, 0, m - 1)
        rest = extract_subtriangle(tri, m, r - 1)
        cross = tuple(tri.b[pair_position(r, s, w)] for s in range(m) for w in range(m, r))
        left = A.mul(triple.eps_of(bprod(triple, cross)), g.column(gsp.index(first)))
        return A.mul(left, f.column(fsp.index(rest)))

    return LazyCochain(triple, r, col, formal=f.is_formal or g.is_formal)


def delta_eps(f: Cochain) -> Cochain:
    """Secondary Hochschild coboundary, written from the closed formula."""
    triple = f.triple
    n = f.degree + 1
    A = triple.A
    sp = input_space(triple, n)
    tail = input_space(triple, n - 1)

    def col(t):
        tri = sp.triangle(t)
        a, b = tri.a, tri.b
        out: dict = {}

        def add(c, vec):
            for k, x in vec.items():
                out[k] = out.get(k, 0) + c * x

        # a_1 eps(b_{1,2} ... b_{1,n}) f(rows 2..n)
        top = tuple(b[pair_position(n, 0, j)] for j in range(1, n))
        rest = tail.index(extract_subtriangle(tri, 1, n - 1))
        add(1, A.mul(A.mul({a[0]: 1}, triple.eps_of(bprod(triple, top))), f.column(rest)))
        for i in range(1, n):
            sgn = parity_sign(i)
            for idx, c in merge_adjacent(triple, n, i - 1, t):
                add(sgn * c, f.column(idx))
        # (-1)^n f(rows 1..n-1) eps(b_{1,n} ... b_{n-1,n}) a_n
        last = tuple(b[pair_position(n, j, n - 1)] for j in range(n - 1))
        head = tail.index(extract_subtriangle(tri, 0, n - 2))
        add(parity_sign(n), A.mul(A.mul(f.column(head), triple.eps_of(bprod(triple, last))),
                             {a[n - 1]: 1}))
        return {k: v for k, v in out.items() if v}

    return LazyCochain(triple, n, col, formal=f.is_formal)


def DELTA_SIGN(n: int) -> int:
    """s_n with delta_eps = s_n * delta_mu on cochains of degree n."""
    return parity_sign(n + 1)


def delta_mu(f: Cochain) -> Cochain:
    return bracket(mu(f.triple), f)


def coface(i: int, f: Cochain) -> Cochain:
    p = f.degree
    if not 0 <= i <= p + 1:
        raise IndexError(f"coface index {i} outside 0..{p + 1}")
    m = mu(f.triple)
    if i == 0:
        return comp(m, 2, f)
    if i == p + 1:
        return comp(m, 1, f)
    return comp(f, i, m)


def codegeneracy(j: int, f: Cochain) -> Cochain:
    p = f.degree
    if not 0 <= j <= p - 1:
        raise IndexError(f"codegeneracy index {j} outside 0..{p - 1}")
    return comp(f, j + 1, e0(f.triple))


def coface_sum(f: Cochain) -> Cochain:
    p = f.degree
    return linear_combination(f.triple, p + 1,
                              [(parity_sign(i), coface(i, f)) for i in range(p + 2)])


# -- matrices ------------------------------------------------------------------

def delta_matrix(triple: TripleSpec, n: int) -> Mat:
    """Matrix of delta_eps: C^n -> C^{n+1}."""
    return operator_matrix(triple, n, n + 1, delta_eps, cache_key="delta_eps")


def codegeneracy_matrix(triple: TripleSpec, j: int, n: int) -> Mat:
    return operator_matrix(triple, n, n - 1, lambda f: codegeneracy(j, f),
                           cache_key=("codegeneracy", j))


def conormalized_basis(triple: TripleSpec, n: int) -> SubspaceBasis:
    """Joint kernel of the codegeneracies s^0..s^{n-1} on C^n."""
    def build():
        dim = cochain_dim(triple, n)
        if n == 0:
            stacked = Mat.zero(0, dim, triple.field)
        else:
            mats = [codegeneracy_matrix(triple, j, n) for j in range(n)]
            stacked = reduce(Mat.vstack, mats)
        return nullspace_basis(stacked)
    return triple.cache(("conormalized", n, mutation.token()), build)
