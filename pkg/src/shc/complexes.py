"""Triangle tensors: bases of chain spaces and cochain input spaces.

A triangle of size r has diagonal entries a_0..a_{r-1} (A-basis indices) and
upper entries b_{s,t}, 0 <= s < t < r (B-basis indices), stored in
row-major (s, t)-lexicographic order.  Chains of degree p are triangles of
size p + 1; inputs of a degree-n cochain are triangles of size n.

Basis enumeration order (the documented contract): the packed integer id of
a triangle is the mixed-radix number whose least significant digits are
a_0, a_1, ..., a_{r-1} (radix dim A) followed by the b-entries in
(s, t)-lex order (radix dim B).  So a_0 varies fastest.

Rows are 0-based everywhere.  The cochain row the literature labels a_1 is
internal row 0; :func:`label_row` is the only place that offset lives.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from . import mutation
from .linalg import Mat, normalize_vector
from .symbolic import Poly
from .triple import TripleSpec

DEFAULT_BUDGET = 10**6


class BudgetError(RuntimeError):
    def __init__(self, what: str, dim: int, formula: str, budget: int):
        self.dim = dim
        self.formula = formula
        self.budget = budget
        super().__init__(f"{what}: dim = {formula} = {dim} exceeds basis budget {budget}")


_budget_lock = threading.Lock()
_budget = [int(os.environ.get("SHC_BUDGET", DEFAULT_BUDGET))]


def get_budget() -> int:
    return _budget[0]


def set_budget(n: int) -> None:
    if n < 1:
        raise ValueError("budget must be positive")
    with _budget_lock:
        _budget[0] = n


def label_row(kind: str, row: int) -> int:
    """Internal 0-based row for a row label as printed in the formulas.

    Chains are labelled a_0..a_p, cochain inputs a_1..a_n.
    """
    if kind == "chain":
        return row
    if kind == "cochain":
        return row - 1
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class TriangleIndex:
    a: tuple
    b: tuple

    @property
    def size(self) -> int:
        return len(self.a)

    @property
    def chain_degree(self) -> int:
        return len(self.a) - 1

    def __post_init__(self):
        r = len(self.a)
        if len(self.b) != r * (r - 1) // 2:
            raise ValueError(f"triangle of size {r} needs {r * (r - 1) // 2} b-entries, "
                             f"got {len(self.b)}")

    def entry(self, s: int, t: int) -> int:
        return self.b[pair_position(len(self.a), s, t)]


def pairs(r: int) -> list:
    return [(s, t) for s in range(r) for t in range(s + 1, r)]


def pair_position(r: int, s: int, t: int) -> int:
    if not 0 <= s < t < r:
        raise IndexError(f"pair ({s}, {t}) outside triangle of size {r}")
    return s * r - s * (s + 1) // 2 + (t - s - 1)


def extract_subtriangle(x: TriangleIndex, i: int, k: int) -> TriangleIndex:
    """Rows i..k (inclusive) of ``x`` with the b-entries among them."""
    r = len(x.a)
    if not (0 <= i and k < r and i <= k + 1):
        raise IndexError(f"rows {i}..{k} not inside a triangle of size {r}")
    rows = range(i, k + 1)
    b = tuple(x.b[pair_position(r, s, t)] for s in rows for t in range(s + 1, k + 1))
    return TriangleIndex(tuple(x.a[i:k + 1]), b)


class TriangleSpace:
    """Basis of A^{(x) r} (x) B^{(x) r(r-1)/2} with the packing above."""

    def __init__(self, triple: TripleSpec, r: int):
        self.triple = triple
        self.r = r
        self.dA = dA = triple.dA
        self.dB = dB = triple.dB
        self.pairs = pairs(r)
        self.npairs = len(self.pairs)
        self.a_strides = [dA ** i for i in range(r)]
        self.b_offset = dA ** r
        self.b_strides = [self.b_offset * dB ** q for q in range(self.npairs)]
        self.dim = dA ** r * dB ** self.npairs

    def pack(self, a, b) -> int:
        idx = 0
        for x, s in zip(a, self.a_strides):
            idx += x * s
        for x, s in zip(b, self.b_strides):
            idx += x * s
        return idx

    def unpack(self, idx: int) -> tuple:
        if not 0 <= idx < self.dim:
            raise IndexError(f"index {idx} outside basis of size {self.dim}")
        dA, dB = self.dA, self.dB
        a = []
        for _ in range(self.r):
            idx, x = divmod(idx, dA)
            a.append(x)
        b = []
        for _ in range(self.npairs):
            idx, x = divmod(idx, dB)
            b.append(x)
        return tuple(a), tuple(b)

    def index(self, t: TriangleIndex) -> int:
        if len(t.a) != self.r:
            raise ValueError(f"expected a triangle of size {self.r}")
        return self.pack(t.a, t.b)

    def triangle(self, idx: int) -> TriangleIndex:
        return TriangleIndex(*self.unpack(idx))

    def __iter__(self) -> Iterator[TriangleIndex]:
        for idx in range(self.dim):
            yield self.triangle(idx)


def _formula(triple: TripleSpec, r: int) -> str:
    return f"{triple.dA}^{r}·{triple.dB}^{r * (r - 1) // 2}"


def space(triple: TripleSpec, r: int, check_budget: bool = True) -> TriangleSpace:
    if r < 0:
        raise ValueError("negative triangle size")
    if check_budget:
        dim = triple.dA ** r * triple.dB ** (r * (r - 1) // 2)
        if dim > get_budget():
            raise BudgetError(f"triangle space of size {r}", dim, _formula(triple, r),
                              get_budget())
    return triple.cache(("space", r), lambda: TriangleSpace(triple, r))


def chain_space(triple: TripleSpec, p: int) -> TriangleSpace:
    return space(triple, p + 1)


def input_space(triple: TripleSpec, n: int) -> TriangleSpace:
    return space(triple, n)


def chain_dim(t: TripleSpec, p: int, budget: int | None = None) -> int:
    if p < 0:
        raise ValueError("degree must be non-negative")
    dim = t.dA ** (p + 1) * t.dB ** (p * (p + 1) // 2)
    budget = get_budget() if budget is None else budget
    if dim > budget:
        raise BudgetError(f"chain space of degree {p}", dim, _formula(t, p + 1), budget)
    return dim


def cochain_dim(t: TripleSpec, n: int, budget: int | None = None) -> int:
    if n < 0:
        raise ValueError("degree must be non-negative")
    inputs = t.dA ** n * t.dB ** (n * (n - 1) // 2)
    dim = inputs * t.dA
    budget = get_budget() if budget is None else budget
    if dim > budget:
        raise BudgetError(f"cochain space of degree {n}", dim,
                          f"{_formula(t, n)}·{t.dA}", budget)
    return dim


# -- B products and contraction templates -------------------------------------

def bprod(triple: TripleSpec, idxs: tuple) -> dict:
    """Product of B-basis elements, left to right; the empty product is 1_B."""
    memo = triple.cache("bprod", dict)
    try:
        return memo[idxs]
    except KeyError:
        pass
    if not idxs:
        out = dict(triple.B.unit_vec)
    else:
        out = {idxs[0]: 1}
        for j in idxs[1:]:
            out = triple.B.mul(out, {j: 1})
    memo[idxs] = out
    return out


def _expand(base: int, fixed: list) -> list:
    """Multiply out ``[(stride, {digit: coeff})]`` factors over a base id."""
    entries = [(base, 1)]
    for stride, vec in fixed:
        if len(vec) == 1:
            (d, c), = vec.items()
            if c == 1:
                entries = [(e + d * stride, x) for e, x in entries]
            else:
                entries = [(e + d * stride, x * c) for e, x in entries]
        else:
            entries = [(e + d * stride, x * c) for e, x in entries for d, c in vec.items()]
    return entries


def contraction(triple: TripleSpec, r: int, s: int, m: int, z: int) -> tuple:
    """Template for replacing rows s..s+m-1 of basis triangle ``z`` by one row.

    Returns ``(sub, entries, stride)``: ``sub`` is the id of the removed block
    in the size-m space; the result of placing an A-vector ``v`` on the new
    diagonal entry is ``sum_{(e, c) in entries} sum_k c * v[k] * basis(e + stride*k)``
    in the size ``r - m + 1`` space.  Entries above the new row collapse to
    prod_j b_{u,j}, entries right of it to prod_j b_{j,w}, over the block
    rows j; for m = 0 both products are empty, i.e. 1_B.
    """
    key = (r, s, m)
    memo = triple.cache(("contraction", key), dict)
    try:
        return memo[z]
    except KeyError:
        pass
    src = space(triple, r)
    dst = space(triple, r - m + 1)
    sub_sp = space(triple, m)
    a, b = src.unpack(z)
    pos = {pr: q for q, pr in enumerate(src.pairs)}
    blk = range(s, s + m)
    # removed block
    sub = 0
    for x, st in zip(a[s:s + m], sub_sp.a_strides):
        sub += x * st
    q = 0
    for u in blk:
        for w in range(u + 1, s + m):
            sub += b[pos[u, w]] * sub_sp.b_strides[q]
            q += 1

    def old(u):
        return u if u < s else u + m - 1

    base = 0
    for u in range(dst.r):
        if u != s:
            base += a[old(u)] * dst.a_strides[u]
    fixed = []
    for qn, (u, w) in enumerate(dst.pairs):
        stride = dst.b_strides[qn]
        if u != s and w != s:
            base += b[pos[old(u), old(w)]] * stride
        elif w == s:
            fixed.append((stride, bprod(triple, tuple(b[pos[u, j]] for j in blk))))
        else:
            ow = old(w)
            fixed.append((stride, bprod(triple, tuple(b[pos[j, ow]] for j in blk))))
    entries = _expand(base, fixed)
    result = (sub, entries, dst.a_strides[s] if s < dst.r else 0)
    memo[z] = result
    return result


def contract_vector(triple: TripleSpec, r: int, s: int, m: int, vec: Mapping,
                    value: Callable[[int], Mapping]) -> dict:
    """Apply the contraction at rows s..s+m-1 to every term of ``vec``.

    ``value(sub)`` supplies the A-vector placed on the new diagonal entry
    for a removed block with id ``sub``.
    """
    out: dict = {}
    for z, c in vec.items():
        if not c:
            continue
        sub, entries, stride = contraction(triple, r, s, m, z)
        val = value(sub)
        if not val:
            continue
        for e, bc in entries:
            cb = c * bc
            for k, x in val.items():
                key = e + stride * k
                out[key] = out.get(key, 0) + cb * x
    return {k: v for k, v in out.items() if v}


def merge_adjacent(triple: TripleSpec, r: int, i: int, z: int) -> list:
    """Rows i and i+1 of basis triangle ``z`` (size r) merged into one row.

    The new diagonal entry is eps(b_{i,i+1}) a_i a_{i+1}; the entries above
    it are b_{u,i} b_{u,i+1} and those to its right b_{i,w} b_{i+1,w}.
    Returns ``[(id, coeff)]`` in the size r - 1 space.  This is written
    directly from the boundary formula and deliberately shares no code with
    :func:`contraction`, so comparing the two is a real cross-check.
    """
    memo = triple.cache(("merge", r, i), dict)
    try:
        return memo[z]
    except KeyError:
        pass
    src = space(triple, r)
    dst = space(triple, r - 1)
    a, b = src.unpack(z)
    A, Bm = triple.A, triple.B

    def bb(s, t):
        return b[pair_position(r, s, t)]

    diag = A.mul(A.mul(triple.eps_of({bb(i, i + 1): 1}), {a[i]: 1}), {a[i + 1]: 1})
    rows = list(range(i)) + [None] + list(range(i + 2, r))
    digits = []  # one sparse vector per digit position of the target
    for u in range(r - 1):
        digits.append(diag if rows[u] is None else {a[rows[u]]: 1})
    for u in range(r - 1):
        for w in range(u + 1, r - 1):
            ou, ow = rows[u], rows[w]
            if ou is None:
                digits.append(Bm.mul({bb(i, ow): 1}, {bb(i + 1, ow): 1}))
            elif ow is None:
                digits.append(Bm.mul({bb(ou, i): 1}, {bb(ou, i + 1): 1}))
            else:
                digits.append({bb(ou, ow): 1})
    radix = [dst.dA] * (r - 1) + [dst.dB] * (len(digits) - (r - 1))
    terms = {0: 1}
    weight = 1
    for vec, base in zip(digits, radix):
        nxt: dict = {}
        for idx, c in terms.items():
            for d, x in vec.items():
                key = idx + d * weight
                nxt[key] = nxt.get(key, 0) + c * x
        terms = {k: v for k, v in nxt.items() if v}
        weight *= base
    out = sorted(terms.items())
    memo[z] = out
    return out


# -- chains and cochains ------------------------------------------------------

@dataclass(eq=False)
class ChainVector:
    """Finite combination of degree-p basis triangles (coords keyed by packed id)."""

    triple: TripleSpec
    degree: int
    coords: dict = field(default_factory=dict)

    @classmethod
    def basis(cls, triple, degree, idx) -> "ChainVector":
        return cls(triple, degree, {idx: 1})

    @classmethod
    def from_triangles(cls, triple, degree, items) -> "ChainVector":
        sp = chain_space(triple, degree)
        coords: dict = {}
        for tri, c in items:
            if len(tri.a) != degree + 1:
                raise ValueError("triangle degree mismatch")
            i = sp.index(tri)
            coords[i] = coords.get(i, 0) + c
        return cls(triple, degree, coords)

    def normalized(self) -> "ChainVector":
        return ChainVector(self.triple, self.degree, normalize_vector(self.triple.field, self.coords))

    def __eq__(self, other):
        if not isinstance(other, ChainVector):
            return NotImplemented
        if self.degree != other.degree:
            return not self.normalized().coords and not other.normalized().coords
        F = self.triple.field
        keys = set(self.coords) | set(other.coords)
        return all(not F(self.coords.get(k, 0) - other.coords.get(k, 0)) for k in keys)

    def __add__(self, other):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        out = dict(self.coords)
        for k, c in other.coords.items():
            out[k] = out.get(k, 0) + c
        return ChainVector(self.triple, self.degree, out)

    def __neg__(self):
        return ChainVector(self.triple, self.degree, {k: -c for k, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "ChainVector":
        return ChainVector(self.triple, self.degree, {k: a * c for k, c in self.coords.items()})

    def is_zero(self) -> bool:
        return not self.normalized().coords

    def to_json_obj(self) -> dict:
        F = self.triple.field
        sp = chain_space(self.triple, self.degree)
        coords = []
        for k, c in sorted(normalize_vector(F, self.coords).items()):
            a, b = sp.unpack(k)
            coords.append({"a": list(a), "b": list(b), "c": F.format(c)})
        return {"degree": self.degree, "coords": coords}

    @classmethod
    def from_json_obj(cls, triple, obj) -> "ChainVector":
        try:
            p = obj["degree"]
            items = [(TriangleIndex(tuple(e["a"]), tuple(e["b"])), triple.field.parse(e["c"]))
                     for e in obj["coords"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed chain vector document: {exc}") from exc
        return cls.from_triangles(triple, p, items)


class Cochain:
    """Linear map from the degree-n input space to A.

    ``cols`` maps input ids to sparse A-vectors.  Entry (k, t) is cochain
    basis element ``k + dim(A) * t`` in the flattened coordinates used for
    cochain-space matrices.
    """

    is_formal = False

    def __init__(self, triple: TripleSpec, degree: int, cols: Mapping | None = None):
        self.triple = triple
        self.degree = degree
        self.cols = {t: dict(v) for t, v in (cols or {}).items() if v}

    def column(self, t: int) -> dict:
        return self.cols.get(t, {})

    def input_dim(self) -> int:
        if self.degree < 0:
            return 0
        return input_space(self.triple, self.degree).dim

    def materialize(self) -> "Cochain":
        return self

    def to_vector(self) -> dict:
        dA = self.triple.dA
        out = {}
        for t in range(self.input_dim()):
            for k, c in self.column(t).items():
                if c:
                    out[k + dA * t] = c
        return out

    @classmethod
    def from_vector(cls, triple, degree, vec: Mapping) -> "Cochain":
        dA = triple.dA
        cols: dict = {}
        for idx, c in vec.items():
            t, k = divmod(idx, dA)
            cols.setdefault(t, {})[k] = c
        return cls(triple, degree, cols)

    @classmethod
    def basis(cls, triple, degree, k: int, t: int) -> "Cochain":
        return cls(triple, degree, {t: {k: 1}})

    @classmethod
    def zero(cls, triple, degree) -> "Cochain":
        return cls(triple, degree, {})

    def normalized(self) -> "Cochain":
        F = self.triple.field
        return Cochain(self.triple, self.degree,
                       {t: normalize_vector(F, v) for t, v in self.cols.items()})

    def is_zero(self) -> bool:
        F = self.triple.field
        m = self.materialize()
        return all(not F(c) for v in m.cols.values() for c in v.values())

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        a, b = self.materialize(), other.materialize()
        if a.degree != b.degree:
            return a.is_zero() and b.is_zero()
        F = self.triple.field
        for t in set(a.cols) | set(b.cols):
            x, y = a.column(t), b.column(t)
            for k in set(x) | set(y):
                if not _zero(F, x.get(k, 0) - y.get(k, 0)):
                    return False
        return True

    def __add__(self, other):
        return linear_combination(self.triple, self.degree, [(1, self), (1, other)])

    def __sub__(self, other):
        return linear_combination(self.triple, self.degree, [(1, self), (-1, other)])

    def __neg__(self):
        return linear_combination(self.triple, self.degree, [(-1, self)])

    def scale(self, a):
        return linear_combination(self.triple, self.degree, [(a, self)])

    def __repr__(self):
        return f"Cochain(degree={self.degree}, nnz_cols={len(self.materialize().cols)})"

    def to_json_obj(self) -> dict:
        F = self.triple.field
        n = self.input_dim()
        m = self.materialize()
        matrix = [[F.format(m.column(t).get(k, 0)) for t in range(n)]
                  for k in range(self.triple.dA)]
        return {"degree": self.degree, "matrix": matrix}

    @classmethod
    def from_json_obj(cls, triple, obj) -> "Cochain":
        n = obj["degree"]
        rows = obj["matrix"]
        if len(rows) != triple.dA:
            raise ValueError("cochain matrix must have dim A rows")
        cols: dict = {}
        for k, row in enumerate(rows):
            for t, x in enumerate(row):
                x = triple.field.parse(x)
                if x:
                    cols.setdefault(t, {})[k] = x
        return cls(triple, n, cols)


def _zero(F, c) -> bool:
    if isinstance(c, Poly):
        return c.is_zero_in(F)
    return not F(c)


class LazyCochain(Cochain):
    """Cochain whose columns are computed on demand (and memoized)."""

    def __init__(self, triple, degree, column_fn: Callable[[int], dict], formal: bool = False):
        self.triple = triple
        self.degree = degree
        self._fn = column_fn
        self._memo: dict = {}
        self.is_formal = formal

    @property
    def cols(self):
        return self.materialize().cols

    def column(self, t: int) -> dict:
        try:
            return self._memo[t]
        except KeyError:
            v = self._memo[t] = self._fn(t)
            return v

    def materialize(self) -> Cochain:
        if self.is_formal:
            raise TypeError("formal cochains cannot be materialized")
        return Cochain(self.triple, self.degree,
                       {t: self.column(t) for t in range(self.input_dim())})


class FormalCochain(LazyCochain):
    """Cochain with one independent variable ``(name, k, t)`` per entry."""

    def __init__(self, triple, degree, name: str):
        dA = triple.dA
        super().__init__(triple, degree,
                         lambda t: {k: Poly.var((name, k, t)) for k in range(dA)},
                         formal=True)
        self.name = name


def linear_combination(triple, degree, terms) -> Cochain:
    formal = any(f.is_formal for _, f in terms)
    for _, f in terms:
        if f.degree != degree:
            raise ValueError(f"degree mismatch: {f.degree} vs {degree}")

    def col(t):
        out: dict = {}
        for a, f in terms:
            for k, x in f.column(t).items():
                out[k] = out.get(k, 0) + a * x
        return {k: v for k, v in out.items() if v}

    return LazyCochain(triple, degree, col, formal=formal)


# -- lifting basis-level rules to matrices ------------------------------------

def lift_basis_map(triple: TripleSpec, src_degree: int, dst_degree: int,
                   rule: Callable[[int], Mapping], kind: str = "chain",
                   cache_key=None) -> Mat:
    """Matrix whose column t is ``rule(t)`` (a sparse dict in destination ids).

    ``kind`` is "chain" (spaces of size degree + 1) or "cochain" (flattened
    cochain coordinates).  With ``cache_key`` the result is memoized on the
    triple.
    """
    def build():
        if kind == "chain":
            n_src = chain_space(triple, src_degree).dim
            n_dst = chain_space(triple, dst_degree).dim if dst_degree >= 0 else 0
        elif kind == "cochain":
            n_src = cochain_dim(triple, src_degree)
            n_dst = cochain_dim(triple, dst_degree)
        else:
            raise ValueError(f"unknown kind {kind!r}")
        data = {}
        for j in range(n_src):
            col = rule(j)
            if isinstance(col, ChainVector):
                if col.degree != dst_degree and col.coords:
                    raise ValueError(f"rule produced degree {col.degree}, expected {dst_degree}")
                col = col.coords
            if col:
                data[j] = col
        return Mat(n_dst, n_src, triple.field, data)

    if cache_key is None:
        return build()
    return triple.cache(("lift", kind, cache_key, src_degree, dst_degree, mutation.token()), build)


def operator_matrix(triple: TripleSpec, src_degree: int, dst_degree: int,
                    op: Callable[[Cochain], Cochain], cache_key=None) -> Mat:
    """Matrix of a linear operator on cochains, read off from a formal input."""
    def build():
        f = FormalCochain(triple, src_degree, "_x")
        g = op(f)
        if g.degree != dst_degree:
            raise ValueError(f"operator produced degree {g.degree}, expected {dst_degree}")
        dA = triple.dA
        n_src = cochain_dim(triple, src_degree)
        n_dst = cochain_dim(triple, dst_degree)
        data: dict = {}
        for t in range(input_space(triple, dst_degree).dim):
            for k, poly in g.column(t).items():
                row = k + dA * t
                for mono, c in getattr(poly, "terms", {}).items():
                    if not mono:
                        raise ValueError("operator is not linear (constant term)")
                    (_, k0, t0), = mono
                    col = k0 + dA * t0
                    data.setdefault(col, {})
                    data[col][row] = data[col].get(row, 0) + c
        return Mat(n_dst, n_src, triple.field, data)

    if cache_key is None:
        return build()
    return triple.cache(("opmat", cache_key, src_degree, dst_degree, mutation.token()), build)
