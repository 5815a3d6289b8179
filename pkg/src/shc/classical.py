"""Classical Hochschild/cyclic structure of A, built from textbook formulas.

Everything here reads only the structure constants of A and uses its own
tensor indexing, so it is an independent oracle for the secondary
complexes of a triple with B = k.  Under the canonical bijection the
secondary chain (a_0, ..., a_p; all b = 1_B) is the tensor
a_0 (x) ... (x) a_p, with index sum_i a_i * dim(A)^i, and a cochain
basis element (k, a_1 ... a_n) has index k + dim(A) * sum_i a_i dim(A)^(i-1).
"""

from __future__ import annotations

import itertools
import random

from . import cyclic, operad
from .complexes import Cochain
from .linalg import Field, Mat, parity_sign
from .suites import SuiteResult, _Run
from .triple import TripleSpec


class NotClassical(ValueError):
    """The triple does not have dim B = 1."""


class ClassicalAlgebra:
    def __init__(self, t: TripleSpec):
        self.F: Field = t.field
        self.d = t.A.dim
        self.mult = t.A.mult
        self.unit = [k for k, c in enumerate(t.A.unit) if c]
        self.unit_coeffs = {k: c for k, c in enumerate(t.A.unit) if c}

    # tensors ---------------------------------------------------------------------
    def tensors(self, length: int):
        """All basis tensors of the given length, in index order."""
        for word in itertools.product(range(self.d), repeat=length):
            yield tuple(reversed(word))

    def index(self, word) -> int:
        idx = 0
        for a in reversed(word):
            idx = idx * self.d + a
        return idx

    def product(self, i: int, j: int) -> dict:
        return {k: c for k, c in enumerate(self.mult[i][j]) if c}

    def _matrix(self, src_len, dst_len, image) -> Mat:
        cols = {}
        for w in self.tensors(src_len):
            col: dict = {}
            for word, c in image(w):
                k = self.index(word)
                col[k] = col.get(k, 0) + c
            cols[self.index(w)] = col
        return Mat(self.d ** dst_len, self.d ** src_len, self.F, cols)

    # chains ----------------------------------------------------------------------
    def face(self, i: int, p: int) -> Mat:
        def image(w):
            if i < p:
                return [(w[:i] + (k,) + w[i + 2:], c) for k, c in self.product(w[i], w[i + 1]).items()]
            return [((k,) + w[1:p], c) for k, c in self.product(w[p], w[0]).items()]
        return self._matrix(p + 1, p, image)

    def boundary(self, p: int) -> Mat:
        out = None
        for i in range(p + 1):
            m = self.face(i, p).scale(parity_sign(i))
            out = m if out is None else out + m
        return out

    def degeneracy(self, j: int, p: int) -> Mat:
        return self._matrix(p + 1, p + 2, lambda w: [(w[:j + 1] + (u,) + w[j + 1:], c)
                                                     for u, c in self.unit_coeffs.items()])

    def rotation(self, p: int) -> Mat:
        """Loday's cyclic operator t(a_0, ..., a_p) = (a_p, a_0, ..., a_{p-1})."""
        return self._matrix(p + 1, p + 1, lambda w: [((w[p],) + w[:p], 1)])

    def connes_B_full(self, p: int) -> Mat:
        """1 (x) sum_i (-1)^{pi} t^i, before passing to the normalized quotient."""
        def image(w):
            out = []
            cur = w
            for i in range(p + 1):
                for u, c in self.unit_coeffs.items():
                    out.append(((u,) + cur, parity_sign(p * i) * c))
                cur = (cur[p],) + cur[:p]
            return out
        return self._matrix(p + 1, p + 2, image)

    # cochains -----------------------------------------------------------------------
    def cochain_index(self, k: int, word) -> int:
        return k + self.d * self.index(word)

    def coboundary(self, n: int) -> Mat:
        """(df)(a_1..a_{n+1}) = a_1 f(a_2..) + sum (-1)^i f(.. a_i a_{i+1} ..) + (-1)^{n+1} f(a_1..a_n) a_{n+1}."""
        d = self.d
        cols: dict = {}
        for k in range(d):
            for w in self.tensors(n):
                j = self.cochain_index(k, w)
                col: dict = {}

                def add(out_k, word, c):
                    idx = self.cochain_index(out_k, word)
                    col[idx] = col.get(idx, 0) + c
                # a_1 f(a_2 .. a_{n+1}): nonzero when (a_2..) = w
                for a1 in range(d):
                    for kk, c in self.product(a1, k).items():
                        add(kk, (a1,) + w, c)
                for i in range(1, n + 1):
                    # inputs u with u_i u_{i+1} having a w_i component
                    for x in range(d):
                        for y in range(d):
                            c = self.mult[x][y][w[i - 1]]
                            if c:
                                add(k, w[:i - 1] + (x, y) + w[i:], parity_sign(i) * c)
                for a in range(d):
                    for kk, c in self.product(k, a).items():
                        add(kk, w + (a,), parity_sign(n + 1) * c)
                cols[j] = {r: c for r, c in col.items() if c}
        return Mat(d ** (n + 2), d ** (n + 1), self.F, cols)

    def _from_cochain(self, f: Cochain, n: int) -> dict:
        return {w: dict(f.column(self.index(w))) for w in self.tensors(n)}

    def comp(self, f: dict, n: int, i: int, g: dict, m: int) -> dict:
        """(f o_i g)(a_1..) = f(a_1 .. a_{i-1}, g(a_i .. a_{i+m-1}), ..)."""
        out = {}
        for w in self.tensors(n + m - 1):
            col: dict = {}
            for k, c in g[w[i - 1:i - 1 + m]].items():
                for kk, x in f[w[:i - 1] + (k,) + w[i - 1 + m:]].items():
                    col[kk] = col.get(kk, 0) + c * x
            out[w] = col
        return out

    def cup(self, f: dict, m: int, g: dict, n: int) -> dict:
        """g(a_1..a_n) * f(a_{n+1}..a_{n+m}): the factor order used by the engine."""
        out = {}
        for w in self.tensors(m + n):
            col: dict = {}
            for k, c in g[w[:n]].items():
                for kk, x in f[w[n:]].items():
                    for r, y in self.product(k, kk).items():
                        col[r] = col.get(r, 0) + c * x * y
            out[w] = col
        return out


def _random_cochain(t: TripleSpec, n: int, rng) -> Cochain:
    from .complexes import input_space
    cols = {}
    for c in range(input_space(t, n).dim):
        v = {k: rng.randint(-2, 2) for k in range(t.dA)}
        cols[c] = {k: x for k, x in v.items() if x}
    return Cochain(t, n, cols)


def classical_compare(t: TripleSpec, max_degree: int, seed: int = 0) -> SuiteResult:
    """Matrix-level comparison of the secondary and classical structures (dim B = 1)."""
    if t.dB != 1:
        raise NotClassical(f"classical comparison needs dim B = 1, got dim B = {t.dB}")
    cl = ClassicalAlgebra(t)
    run = _Run("classical", t, max_degree, min(max_degree, 2), seed)
    D = max_degree
    for p in range(0, D + 1):
        if p >= 1:
            run.mat_equal("boundary", cyclic.boundary_matrix(t, p), cl.boundary(p),
                          {"p": p}, src_degree=p)
            for i in range(p + 1):
                run.mat_equal("face", cyclic.face_matrix(t, i, p), cl.face(i, p),
                              {"p": p, "i": i}, src_degree=p)
        run.mat_equal("cyclic operator", cyclic.t_matrix(t, p), cl.rotation(p), {"p": p},
                      src_degree=p)
        if p + 1 <= D:
            for j in range(p + 1):
                run.mat_equal("degeneracy", cyclic.degeneracy_matrix(t, j, p),
                              cl.degeneracy(j, p), {"p": p, "j": j}, src_degree=p)
            full = cl.connes_B_full(p)
            run.mat_equal("Connes B (full complex)", cyclic.connes_B_full_matrix(t, p), full,
                          {"p": p}, src_degree=p)
            Ns, Nd = cyclic.normalized_chains(t, p), cyclic.normalized_chains(t, p + 1)
            projected = Nd.projection() @ full @ Ns.inclusion()
            run.mat_equal("Connes B (normalized)", cyclic.connes_B_matrix(t, p), projected,
                          {"p": p})
    for n in range(0, D):
        run.mat_equal("coboundary", operad.delta_matrix(t, n), cl.coboundary(n), {"n": n},
                      src_kind="cochain")
    rng = random.Random(seed)
    C = min(D, 2)
    for n in range(1, C + 1):
        for m in range(0, C + 1):
            if n + m - 1 > D:
                continue
            f, g = _random_cochain(t, n, rng), _random_cochain(t, m, rng)
            cf, cg = cl._from_cochain(f, n), cl._from_cochain(g, m)
            for i in range(1, n + 1):
                want = cl.comp(cf, n, i, cg, m)
                got = cl._from_cochain(operad.comp(f, i, g).materialize(), n + m - 1)
                _compare_dicts(run, "composition", got, want, {"n": n, "m": m, "i": i})
    for m in range(0, C + 1):
        for n in range(0, C + 1 - m):
            f, g = _random_cochain(t, m, rng), _random_cochain(t, n, rng)
            want = cl.cup(cl._from_cochain(f, m), m, cl._from_cochain(g, n), n)
            got = cl._from_cochain(operad.cup(f, g).materialize(), m + n)
            _compare_dicts(run, "cup", got, want, {"deg f": m, "deg g": n})
    return run.result


def _compare_dicts(run: _Run, operation, got: dict, want: dict, inputs: dict):
    F = run.F
    run.result.checks += 1
    for w in sorted(want):
        x, y = got.get(w, {}), want[w]
        for k in sorted(set(x) | set(y)):
            if F(x.get(k, 0) - y.get(k, 0)):
                run._fail(operation, inputs, str(F.format(y.get(k, 0))),
                          f"{F.format(x.get(k, 0))} at input {list(w)}, output {k}")
                return
