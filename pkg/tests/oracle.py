"""Independent classical Hochschild Betti oracle.

Shares no code with the package: it reads only the raw multiplication table of A,
builds dense classical Hochschild matrices over Fractions and ranks them with its
own elimination. For a triple with B = k it must agree with the engine.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product


def _rank(rows: list) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                k = m[i][c] / m[r][c]
                m[i] = [x - k * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def _mul(mult, x: dict, y: dict) -> dict:
    out: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            for k, c in enumerate(mult[i][j]):
                if c:
                    out[k] = out.get(k, 0) + a * b * Fraction(c)
    return out


def _tensors(d: int, n: int):
    return list(product(range(d), repeat=n))


def hochschild_betti(mult, max_p: int) -> list:
    """dim HH_p(A) for p = 0..max_p with b = sum (-1)^i d_i on A^(p+1)."""
    d = len(mult)

    def boundary(p):
        src, dst = _tensors(d, p + 1), _tensors(d, p)
        pos = {t: i for i, t in enumerate(dst)}
        mat = [[0] * len(src) for _ in dst]
        for col, t in enumerate(src):
            for i in range(p + 1):
                if i < p:
                    prod = _mul(mult, {t[i]: 1}, {t[i + 1]: 1})
                    for k, c in prod.items():
                        mat[pos[t[:i] + (k,) + t[i + 2:]]][col] += (-1) ** i * c
                else:
                    prod = _mul(mult, {t[p]: 1}, {t[0]: 1})
                    for k, c in prod.items():
                        mat[pos[(k,) + t[1:p]]][col] += (-1) ** p * c
        return mat

    ranks = [0] + [_rank(boundary(p)) for p in range(1, max_p + 2)]
    return [d ** (p + 1) - ranks[p] - ranks[p + 1] for p in range(max_p + 1)]


def hochschild_cobetti(mult, max_n: int) -> list:
    """dim HH^n(A, A) for n = 0..max_n with the classical coboundary."""
    d = len(mult)

    def coboundary(n):
        # columns: (input tuple of length n, output k); rows: (input of length n+1, output k)
        src = [(t, k) for t in _tensors(d, n) for k in range(d)]
        dst = [(t, k) for t in _tensors(d, n + 1) for k in range(d)]
        pos = {x: i for i, x in enumerate(dst)}
        mat = [[0] * len(src) for _ in dst]
        for col, (s, out) in enumerate(src):
            for t in _tensors(d, n + 1):
                terms = _mul(mult, {t[0]: 1}, {out: 1}) if s == t[1:] else {}
                val = dict(terms)
                for i in range(n):
                    prod = _mul(mult, {t[i]: 1}, {t[i + 1]: 1})
                    for k, c in prod.items():
                        if t[:i] + (k,) + t[i + 2:] == s:
                            val[out] = val.get(out, 0) + (-1) ** (i + 1) * c
                if s == t[:n]:
                    for k, c in _mul(mult, {out: 1}, {t[n]: 1}).items():
                        val[k] = val.get(k, 0) + (-1) ** (n + 1) * c
                for k, c in val.items():
                    if c:
                        mat[pos[(t, k)]][col] += c
        return mat

    ranks = [0] + [_rank(coboundary(n)) for n in range(0, max_n + 1)]
    # ranks[n + 1] = rank of delta: C^n -> C^(n+1)
    return [d ** (n + 1) - ranks[n + 1] - ranks[n] for n in range(max_n + 1)]
