"""Exact linear algebra over Q or a prime field F_p.

Vectors are sparse dicts ``{index: scalar}`` holding no explicit zeros.
Matrices are stored sparse-by-column.  Elimination always takes the first
available pivot (insertion order), so every basis this module returns is
reproducible run to run.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping

Vector = dict


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


DEFAULT_PRIMES = (101, 103, 107, 109, 113, 127, 131)


class Field:
    """The rationals (``p is None``) or the prime field of order ``p``.

    Calling the field coerces a raw number (int or Fraction) to its
    canonical representative: an int in ``[0, p)`` for F_p, and for Q an int
    when integral, otherwise a Fraction.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if not isinstance(p, int) or not is_prime(p):
                raise FieldError(f"modulus {p!r} is not prime")
        self.p = p

    @classmethod
    def Q(cls) -> "Field":
        return cls(None)

    @classmethod
    def Fp(cls, p: int = 101) -> "Field":
        return cls(p)

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __call__(self, x):
        p = self.p
        if p is None:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, int):
                return x
            raise TypeError(f"cannot coerce {x!r} into Q")
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise FieldError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(den, -1, p) % p
        raise TypeError(f"cannot coerce {x!r} into F{p}")

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            r = Fraction(1) / x
            return r.numerator if r.denominator == 1 else r
        return pow(x, -1, self.p)

    def parse(self, literal):
        """Parse a JSON scalar: ``"num/den"`` strings for Q, ints for F_p."""
        if self.p is None:
            if isinstance(literal, bool):
                raise FieldError(f"malformed rational literal {literal!r}")
            if isinstance(literal, int):
                return literal
            if not isinstance(literal, str):
                raise FieldError(f"malformed rational literal {literal!r}")
            try:
                return self(Fraction(literal.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"malformed rational literal {literal!r}") from exc
        if isinstance(literal, bool) or not isinstance(literal, int):
            raise FieldError(f"F_p scalars must be integers, got {literal!r}")
        return literal % self.p

    def format(self, x):
        if self.p is None:
            x = self(x)
            if isinstance(x, int):
                return f"{x}/1"
            return f"{x.numerator}/{x.denominator}"
        return self(x)


def normalize_vector(F: Field, v: Mapping) -> Vector:
    out = {}
    for k, c in v.items():
        c = F(c)
        if c:
            out[k] = c
    return out


def axpy(F: Field, y: dict, a, x: Mapping) -> None:
    """In place ``y += a * x`` with zero pruning."""
    for k, c in x.items():
        s = F(y.get(k, 0) + a * c)
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class Mat:
    """Sparse-by-column matrix over a :class:`Field`."""

    __slots__ = ("rows", "cols", "field", "data")

    def __init__(self, rows: int, cols: int, F: Field, data: Mapping[int, Mapping] | None = None,
                 normalized: bool = False):
        self.rows = rows
        self.cols = cols
        self.field = F
        cleaned = {}
        if data:
            for j, col in data.items():
                if not 0 <= j < cols:
                    raise IndexError(f"column {j} out of range for {rows}x{cols}")
                col = dict(col) if normalized else normalize_vector(F, col)
                if col:
                    for r in col:
                        if not 0 <= r < rows:
                            raise IndexError(f"row {r} out of range for {rows}x{cols}")
                    cleaned[j] = col
        self.data = cleaned

    @classmethod
    def zero(cls, rows, cols, F):
        return cls(rows, cols, F)

    @classmethod
    def identity(cls, n, F):
        return cls(n, n, F, {j: {j: 1} for j in range(n)}, normalized=True)

    @classmethod
    def from_dense(cls, rows_list, F, cols=None):
        rows = len(rows_list)
        if cols is None:
            cols = len(rows_list[0]) if rows else 0
        data: dict = {}
        for i, row in enumerate(rows_list):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, x in enumerate(row):
                x = F(x) if not isinstance(x, str) else F.parse(x)
                if x:
                    data.setdefault(j, {})[i] = x
        return cls(rows, cols, F, data, normalized=True)

    @classmethod
    def from_columns(cls, rows, columns: list, F):
        return cls(rows, len(columns), F, {j: c for j, c in enumerate(columns) if c})

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in self.data.items():
            for i, x in col.items():
                out[i][j] = x
        return out

    @property
    def shape(self):
        return (self.rows, self.cols)

    def column(self, j) -> Vector:
        return dict(self.data.get(j, {}))

    def nnz(self) -> int:
        return sum(len(c) for c in self.data.values())

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.shape == other.shape and self.field == other.field
                and self.data == other.data)

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols} over {self.field.name}, nnz={self.nnz()})"

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        F = self.field
        data = {j: dict(c) for j, c in self.data.items()}
        for j, col in other.data.items():
            axpy(F, data.setdefault(j, {}), 1, col)
        return Mat(self.rows, self.cols, F, {j: c for j, c in data.items() if c}, normalized=True)

    def __neg__(self):
        F = self.field
        return Mat(self.rows, self.cols, F,
                   {j: {i: F(-x) for i, x in c.items()} for j, c in self.data.items()},
                   normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "Mat":
        F = self.field
        a = F(a)
        if not a:
            return Mat.zero(self.rows, self.cols, F)
        return Mat(self.rows, self.cols, F,
                   {j: {i: F(a * x) for i, x in c.items()} for j, c in self.data.items()},
                   normalized=True)

    def apply(self, v: Mapping) -> Vector:
        F = self.field
        out: dict = {}
        for j, c in v.items():
            col = self.data.get(j)
            if col and c:
                axpy(F, out, c, col)
        return out

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        if self.field != other.field:
            raise ValueError("field mismatch")
        data = {}
        for j, col in other.data.items():
            r = self.apply(col)
            if r:
                data[j] = r
        return Mat(self.rows, other.cols, self.field, data, normalized=True)

    def transpose(self) -> "Mat":
        data: dict = {}
        for j, col in self.data.items():
            for i, x in col.items():
                data.setdefault(i, {})[j] = x
        return Mat(self.cols, self.rows, self.field, data, normalized=True)

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        data = dict(self.data)
        for j, c in other.data.items():
            data[j + self.cols] = c
        return Mat(self.rows, self.cols + other.cols, self.field, data, normalized=True)

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        data = {j: dict(c) for j, c in self.data.items()}
        for j, c in other.data.items():
            col = data.setdefault(j, {})
            for i, x in c.items():
                col[i + self.rows] = x
        return Mat(self.rows + other.rows, self.cols, self.field, data, normalized=True)


class Echelon:
    """Incremental echelon basis of a subspace of ``F^dim``.

    Each stored pivot vector has a 1 at its pivot coordinate and no entry at
    the pivot coordinate of any earlier pivot.  With ``track=True`` every
    pivot also records how it was built from the inserted vectors, which is
    what nullspace and coefficient recovery need.
    """

    def __init__(self, F: Field, dim: int, track: bool = False):
        self.field = F
        self.dim = dim
        self.track = track
        self._pivots: dict[int, tuple[int, dict, dict | None]] = {}
        self._count = 0

    def __len__(self):
        return len(self._pivots)

    @property
    def pivot_rows(self) -> list[int]:
        return sorted(self._pivots, key=lambda r: self._pivots[r][0])

    def reduce(self, v: Mapping, combo: dict | None = None):
        """Return ``(remainder, combo)`` with ``v = remainder + span part``.

        ``combo`` (if tracked) expresses ``remainder`` in terms of inserted
        vectors: it starts as given and has pivot combos subtracted.
        """
        F = self.field
        pivots = self._pivots
        v = normalize_vector(F, v)
        heap = [(pivots[r][0], r) for r in v if r in pivots]
        heapq.heapify(heap)
        while heap:
            _, r = heapq.heappop(heap)
            c = v.get(r)
            if not c:
                continue
            order, pv, pcombo = pivots[r]
            for k, x in pv.items():
                s = F(v.get(k, 0) - c * x)
                if s:
                    if k not in v and k in pivots and pivots[k][0] > order:
                        heapq.heappush(heap, (pivots[k][0], k))
                    v[k] = s
                else:
                    v.pop(k, None)
            if combo is not None and pcombo is not None:
                axpy(F, combo, -c, pcombo)
        return v, combo

    def add(self, v: Mapping, tag=None) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        combo = {tag: 1} if self.track else None
        rem, combo = self.reduce(v, combo)
        if not rem:
            self._last_dependency = combo
            return False
        F = self.field
        pivot = min(rem)
        inv = F.inv(rem[pivot])
        rem = {k: F(x * inv) for k, x in rem.items()}
        if combo is not None:
            combo = {k: F(x * inv) for k, x in combo.items()}
        self._pivots[pivot] = (self._count, rem, combo)
        self._count += 1
        self._last_dependency = None
        return True

    def contains(self, v: Mapping) -> bool:
        rem, _ = self.reduce(v)
        return not rem

    def coefficients(self, v: Mapping) -> dict | None:
        """Coefficients over the inserted vectors reproducing ``v``, or None."""
        if not self.track:
            raise RuntimeError("coefficients need a tracked echelon")
        rem, combo = self.reduce(v, {})
        if rem:
            return None
        return {k: self.field(-x) for k, x in combo.items() if self.field(-x)}


@dataclass(frozen=True)
class SubspaceBasis:
    """Linearly independent sparse vectors spanning a subspace of F^ambient_dim."""

    ambient_dim: int
    vectors: tuple
    field: Field = dc_field(default_factory=Field.Q)
    _echelon: list = dc_field(default_factory=list, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def echelon(self) -> Echelon:
        if not self._echelon:
            ech = Echelon(self.field, self.ambient_dim, track=True)
            for idx, v in enumerate(self.vectors):
                if not ech.add(v, tag=idx):
                    raise ValueError("SubspaceBasis vectors are linearly dependent")
            self._echelon.append(ech)
        return self._echelon[0]

    def in_span(self, v: Mapping) -> bool:
        return in_span(self, v)

    def as_matrix(self) -> Mat:
        return Mat.from_columns(self.ambient_dim, list(self.vectors), self.field)


def _components(m: Mat) -> list[list[int]]:
    """Group column indices into blocks sharing no rows."""
    parent: dict = {}

    def find(x):
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for j, col in m.data.items():
        cj = ("c", j)
        find(cj)
        for i in col:
            a, b = find(cj), find(("r", i))
            if a != b:
                parent[a] = b
    groups: dict = {}
    for j in sorted(m.data):
        groups.setdefault(find(("c", j)), []).append(j)
    return list(groups.values())


def rank(m: Mat) -> int:
    """Exact rank, eliminating each row-disjoint block separately."""
    total = 0
    for block in _components(m):
        ech = Echelon(m.field, m.rows)
        for j in block:
            ech.add(m.data[j])
        total += len(ech)
    return total


def column_space_basis(m: Mat) -> SubspaceBasis:
    """The independent columns of ``m``, taken left to right."""
    ech = Echelon(m.field, m.rows)
    chosen = []
    for j in range(m.cols):
        col = m.data.get(j)
        if col and ech.add(col):
            chosen.append(dict(col))
    basis = SubspaceBasis(m.rows, tuple(chosen), m.field)
    return basis


def nullspace_basis(m: Mat) -> SubspaceBasis:
    """Basis of ``{v : m v = 0}``; one vector per non-pivot column.

    Each basis vector has coefficient 1 on its own free column and is
    otherwise supported on pivot columns (the reduced-echelon kernel basis).
    """
    F = m.field
    ech = Echelon(F, m.rows, track=True)
    kernel = []
    for j in range(m.cols):
        col = m.data.get(j, {})
        if not ech.add(col, tag=j):
            kernel.append(normalize_vector(F, ech._last_dependency))
    return SubspaceBasis(m.cols, tuple(kernel), F)


def in_span(b: SubspaceBasis, v: Mapping) -> bool:
    for k in v:
        if not 0 <= k < b.ambient_dim:
            raise ValueError(f"coordinate {k} outside ambient dimension {b.ambient_dim}")
    ech = b.echelon()
    coeffs = ech.coefficients(v)
    if coeffs is None:
        return False
    # back-substitution check: the combination must reproduce v exactly
    F = b.field
    recon: dict = {}
    for idx, c in coeffs.items():
        axpy(F, recon, c, b.vectors[idx])
    if recon != normalize_vector(F, v):
        raise AssertionError("in_span back-substitution mismatch")
    return True


def span_coefficients(b: SubspaceBasis, v: Mapping) -> dict | None:
    return b.echelon().coefficients(v)


def quotient_dim(big: SubspaceBasis, small: SubspaceBasis) -> int:
    if big.ambient_dim != small.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    for v in small.vectors:
        if not in_span(big, v):
            raise ValueError("small subspace is not contained in big subspace")
    return big.dim - small.dim


def standard_basis(n: int, F: Field | None = None) -> SubspaceBasis:
    return SubspaceBasis(n, tuple({i: 1} for i in range(n)), F or Field.Q())


def basis_from_vectors(ambient_dim: int, vectors: Iterable[Mapping], F: Field) -> SubspaceBasis:
    """Independent subset of ``vectors`` (first occurrence wins)."""
    ech = Echelon(F, ambient_dim)
    chosen = []
    for v in vectors:
        v = normalize_vector(F, v)
        if v and ech.add(v):
            chosen.append(v)
    return SubspaceBasis(ambient_dim, tuple(chosen), F)


def parity_sign(e: int) -> int:
    """(-1)**e as an int, also for negative e."""
    return -1 if e & 1 else 1
