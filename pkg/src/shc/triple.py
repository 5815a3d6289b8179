"""Triples (A, B, eps) given by structure constants in fixed ordered bases."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Sequence

import jsonschema

from .linalg import Field, FieldError


class TripleError(ValueError):
    """Malformed triple input (schema, modulus or literal problems)."""


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    """Finite-dimensional unital algebra: ``e_i e_j = sum_k mult[i][j][k] e_k``."""

    dim: int
    unit: tuple
    mult: tuple  # mult[i][j] is a tuple of dim scalars

    def __eq__(self, other):
        return (isinstance(other, AlgebraSpec) and self.dim == other.dim
                and self.unit == other.unit and self.mult == other.mult)

    def __hash__(self):
        return hash((self.dim, self.unit, self.mult))

    @cached_property
    def table(self) -> dict:
        """Sparse products of basis elements: ``(i, j) -> {k: c}``."""
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                row = {k: c for k, c in enumerate(self.mult[i][j]) if c}
                out[i, j] = row
        return out

    @cached_property
    def unit_vec(self) -> dict:
        return {k: c for k, c in enumerate(self.unit) if c}

    def mul(self, x: dict, y: dict) -> dict:
        """Product of sparse coordinate dicts (coefficients may be any ring elements)."""
        out: dict = {}
        table = self.table
        for i, a in x.items():
            for j, b in y.items():
                ab = a * b
                for k, c in table[i, j].items():
                    out[k] = out.get(k, 0) + ab * c
        return {k: c for k, c in out.items() if c}

    def mul_basis(self, i: int, j: int) -> dict:
        return self.table[i, j]

    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i]
                   for i in range(self.dim) for j in range(i))


def multiply(alg: AlgebraSpec, x: Sequence, y: Sequence) -> list:
    """Bilinear product of two coordinate vectors of length ``alg.dim``."""
    if len(x) != alg.dim or len(y) != alg.dim:
        raise ValueError(f"expected vectors of length {alg.dim}, got {len(x)} and {len(y)}")
    xd = {i: c for i, c in enumerate(x) if c}
    yd = {i: c for i, c in enumerate(y) if c}
    r = alg.mul(xd, yd)
    return [r.get(k, 0) for k in range(alg.dim)]


@dataclass(frozen=True, eq=False)
class TripleSpec:
    field: Field
    A: AlgebraSpec
    B: AlgebraSpec
    eps: tuple  # (dim A) x (dim B); column j is eps(b_j)
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        return (isinstance(other, TripleSpec) and self.field == other.field
                and self.A == other.A and self.B == other.B and self.eps == other.eps)

    def __hash__(self):
        return hash((self.field, self.A, self.B, self.eps))

    @property
    def dA(self) -> int:
        return self.A.dim

    @property
    def dB(self) -> int:
        return self.B.dim

    @cached_property
    def eps_cols(self) -> list:
        return [{i: self.eps[i][j] for i in range(self.dA) if self.eps[i][j]}
                for j in range(self.dB)]

    def eps_of(self, bvec: dict) -> dict:
        out: dict = {}
        for j, c in bvec.items():
            for i, e in self.eps_cols[j].items():
                out[i] = out.get(i, 0) + c * e
        return {k: c for k, c in out.items() if c}

    def cache(self, key, build):
        """Per-triple memo for derived structure (pure functions of the triple)."""
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = build()
            return value

    def with_field(self, F: Field) -> "TripleSpec":
        conv = F if F.p is not None else (lambda x: x)
        return make_triple(F, _raw_alg(self.A, conv), _raw_alg(self.B, conv),
                           [[conv(x) for x in row] for row in self.eps], self.name)


def _raw_alg(alg, conv):
    return {"dim": alg.dim, "unit": [conv(x) for x in alg.unit],
            "mult": [[[conv(x) for x in alg.mult[i][j]] for j in range(alg.dim)]
                     for i in range(alg.dim)]}


def make_algebra(F: Field, dim: int, unit, mult) -> AlgebraSpec:
    return AlgebraSpec(dim, tuple(F(x) for x in unit),
                       tuple(tuple(tuple(F(x) for x in mult[i][j]) for j in range(dim))
                             for i in range(dim)))


def make_triple(F: Field, A: dict, B: dict, eps, name: str = "") -> TripleSpec:
    Aspec = make_algebra(F, A["dim"], A["unit"], A["mult"])
    Bspec = make_algebra(F, B["dim"], B["unit"], B["mult"])
    eps_t = tuple(tuple(F(x) for x in row) for row in eps)
    return TripleSpec(F, Aspec, Bspec, eps_t, name)


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "checks": [{"name": c.name, "passed": c.passed,
                            "witness": list(c.witness) if c.witness is not None else None}
                           for c in self.checks]}


def _vec_eq(F, x: dict, y: dict) -> bool:
    keys = set(x) | set(y)
    return all(not F(x.get(k, 0) - y.get(k, 0)) for k in keys)


def _first(F, pairs):
    for witness, lhs, rhs in pairs:
        if not _vec_eq(F, lhs, rhs):
            return witness
    return None


def _algebra_checks(F, alg: AlgebraSpec, label: str) -> list:
    n = alg.dim
    e = [{i: 1} for i in range(n)]
    assoc = _first(F, (((i, j, k), alg.mul(alg.mul(e[i], e[j]), e[k]),
                        alg.mul(e[i], alg.mul(e[j], e[k])))
                       for i, j, k in product(range(n), repeat=3)))
    u = alg.unit_vec
    unit = _first(F, (((i,), alg.mul(u, e[i]), e[i]) for i in range(n)))
    if unit is None:
        unit = _first(F, (((i,), alg.mul(e[i], u), e[i]) for i in range(n)))
    return [Check(f"{label}.associative", assoc is None, assoc),
            Check(f"{label}.unit", unit is None, unit)]


def validate(t: TripleSpec) -> ValidationReport:
    """Exhaustive structure checks; each failure carries basis-index witnesses."""
    F = t.field
    checks = []
    checks += _algebra_checks(F, t.A, "A")
    checks += _algebra_checks(F, t.B, "B")
    nB, nA = t.dB, t.dA
    eb = [{i: 1} for i in range(nB)]
    ea = [{i: 1} for i in range(nA)]
    comm = _first(F, (((i, j), t.B.mul(eb[i], eb[j]), t.B.mul(eb[j], eb[i]))
                      for i in range(nB) for j in range(i + 1, nB)))
    checks.append(Check("B.commutative", comm is None, comm))
    unital = _first(F, [((), t.eps_of(t.B.unit_vec), t.A.unit_vec)])
    checks.append(Check("eps.unital", unital is None, unital))
    morph = _first(F, (((i, j), t.eps_of(t.B.mul(eb[i], eb[j])),
                        t.A.mul(t.eps_of(eb[i]), t.eps_of(eb[j])))
                       for i in range(nB) for j in range(nB)))
    checks.append(Check("eps.multiplicative", morph is None, morph))
    # witness order: (b, a) with eps(b) a != a eps(b)
    central = _first(F, (((j, i), t.A.mul(t.eps_of(eb[j]), ea[i]),
                          t.A.mul(ea[i], t.eps_of(eb[j])))
                         for j in range(nB) for i in range(nA)))
    checks.append(Check("eps.central", central is None, central))
    return ValidationReport(tuple(checks))


# -- JSON ---------------------------------------------------------------------

_SCALAR = {"type": ["string", "integer"]}
_ALG_SCHEMA = {
    "type": "object",
    "required": ["dim", "unit", "mult"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "unit": {"type": "array", "items": _SCALAR},
        "mult": {"type": "array", "items": {"type": "array", "items": {
            "type": "array", "items": _SCALAR}}},
    },
}
TRIPLE_SCHEMA = {
    "type": "object",
    "required": ["field", "A", "B", "epsilon"],
    "properties": {
        "field": {"oneOf": [
            {"type": "object", "required": ["type"],
             "properties": {"type": {"const": "Q"}}},
            {"type": "object", "required": ["type", "p"],
             "properties": {"type": {"const": "Fp"}, "p": {"type": "integer"}}},
        ]},
        "A": _ALG_SCHEMA,
        "B": _ALG_SCHEMA,
        "epsilon": {"type": "array", "items": {"type": "array", "items": _SCALAR}},
    },
}


def _check_shapes(doc):
    for key in ("A", "B"):
        alg = doc[key]
        d = alg["dim"]
        if len(alg["unit"]) != d:
            raise TripleError(f"{key}.unit must have {d} entries")
        m = alg["mult"]
        if len(m) != d or any(len(r) != d or any(len(c) != d for c in r) for r in m):
            raise TripleError(f"{key}.mult must be a {d}x{d}x{d} array")
    dA, dB = doc["A"]["dim"], doc["B"]["dim"]
    eps = doc["epsilon"]
    if len(eps) != dA or any(len(r) != dB for r in eps):
        raise TripleError(f"epsilon must be a {dA}x{dB} array")


def load_json(text: str, name: str = "") -> TripleSpec:
    """Parse a triple document.  Validation of the algebra axioms is separate."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TripleError(f"invalid JSON: {exc}") from exc
    try:
        jsonschema.validate(doc, TRIPLE_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise TripleError(f"schema violation at '{path}': {exc.message}") from exc
    _check_shapes(doc)
    fdoc = doc["field"]
    try:
        F = Field.Q() if fdoc["type"] == "Q" else Field.Fp(fdoc["p"])
    except FieldError as exc:
        raise TripleError(str(exc)) from exc

    def parse(x):
        try:
            return F.parse(x)
        except FieldError as exc:
            raise TripleError(str(exc)) from exc

    def alg(a):
        d = a["dim"]
        return {"dim": d, "unit": [parse(x) for x in a["unit"]],
                "mult": [[[parse(x) for x in a["mult"][i][j]] for j in range(d)]
                         for i in range(d)]}

    eps = [[parse(x) for x in row] for row in doc["epsilon"]]
    return make_triple(F, alg(doc["A"]), alg(doc["B"]), eps, name)


def to_json_obj(t: TripleSpec) -> dict:
    F = t.field
    fdoc = {"type": "Q"} if F.p is None else {"type": "Fp", "p": F.p}

    def alg(a: AlgebraSpec):
        return {"dim": a.dim, "unit": [F.format(x) for x in a.unit],
                "mult": [[[F.format(x) for x in a.mult[i][j]] for j in range(a.dim)]
                         for i in range(a.dim)]}

    return {"field": fdoc, "A": alg(t.A), "B": alg(t.B),
            "epsilon": [[F.format(x) for x in row] for row in t.eps]}


def dump_json(t: TripleSpec) -> str:
    return json.dumps(to_json_obj(t), indent=2)


# -- builtin zoo --------------------------------------------------------------

def _ground() -> dict:
    return {"dim": 1, "unit": [1], "mult": [[[1]]]}


def _dual_numbers() -> dict:
    # basis {1, x}
    m = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
    m[0][0] = [1, 0]
    m[0][1] = [0, 1]
    m[1][0] = [0, 1]
    return {"dim": 2, "unit": [1, 0], "mult": m}


def _upper_triangular() -> dict:
    # basis {E11, E22, E12}
    m = [[[0, 0, 0] for _ in range(3)] for _ in range(3)]
    m[0][0] = [1, 0, 0]
    m[1][1] = [0, 1, 0]
    m[0][2] = [0, 0, 1]
    m[2][1] = [0, 0, 1]
    return {"dim": 3, "unit": [1, 1, 0], "mult": m}


def _group_z2() -> dict:
    # basis {1, g}, g^2 = 1
    m = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    return {"dim": 2, "unit": [1, 0], "mult": m}


BUILTIN_NAMES = ("T_triv", "T_dual", "T_full", "T_u2", "T_z2")


def builtin(name: str, F: Field | None = None) -> TripleSpec:
    """Named example triple over ``F`` (default Q)."""
    F = F or Field.Q()
    if name == "T_triv":
        return make_triple(F, _ground(), _ground(), [[1]], name)
    if name == "T_dual":
        return make_triple(F, _dual_numbers(), _ground(), [[1], [0]], name)
    if name == "T_full":
        return make_triple(F, _dual_numbers(), _dual_numbers(), [[1, 0], [0, 1]], name)
    if name == "T_u2":
        return make_triple(F, _upper_triangular(), _ground(), [[1], [1], [0]], name)
    if name == "T_z2":
        return make_triple(F, _group_z2(), _ground(), [[1], [0]], name)
    raise KeyError(f"unknown builtin triple {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")


def noncentral_fixture(F: Field | None = None) -> TripleSpec:
    """(upper-triangular 2x2, k[x]/(x^2), x -> E12): eps(B) is not central."""
    F = F or Field.Q()
    return make_triple(F, _upper_triangular(), _dual_numbers(),
                       [[1, 0], [1, 0], [0, 1]], "noncentral")
