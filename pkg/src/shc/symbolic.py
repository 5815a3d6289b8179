"""Polynomials in formal cochain entries.

A formal cochain of degree n has one variable per matrix entry ``(name, k, t)``
(output A-basis index ``k``, input basis index ``t``).  Feeding formal
cochains through the ordinary operation code yields polynomials whose
monomials are in bijection with tuples of basis cochains, so comparing two
sides monomial by monomial is the exhaustive basis check.
"""

from __future__ import annotations

from .linalg import Field


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    @classmethod
    def var(cls, key) -> "Poly":
        return cls({(key,): 1})

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly({self.terms!r})"

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        if not other:
            return Poly()
        return Poly({(): other})

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Poly(terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            terms: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(sorted(m1 + m2))
                    s = terms.get(m, 0) + c1 * c2
                    if s:
                        terms[m] = s
                    else:
                        terms.pop(m, None)
            return Poly(terms)
        if not other:
            return Poly()
        return Poly({m: c * other for m, c in self.terms.items()})

    __rmul__ = __mul__

    def normalized(self, F: Field) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            c = F(c)
            if c:
                out[m] = c
        return Poly(out)

    def is_zero_in(self, F: Field) -> bool:
        return all(not F(c) for c in self.terms.values())

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        return self.terms == self._lift(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))


def scalar_is_zero(F: Field, c) -> bool:
    if isinstance(c, Poly):
        return c.is_zero_in(F)
    return not F(c)


def vector_difference_support(F: Field, lhs: dict, rhs: dict, limit: int = 3) -> list:
    """Keys where two coefficient dicts differ over ``F`` (at most ``limit``)."""
    bad = []
    for k in set(lhs) | set(rhs):
        d = lhs.get(k, 0) - rhs.get(k, 0)
        if not scalar_is_zero(F, d):
            bad.append(k)
            if len(bad) >= limit:
                break
    return sorted(bad, key=repr)
