"""Deliberate sign mutations used as negative controls for the suites.

A mutation flips the sign of exactly one term of one structure map:

* ``("boundary", i)`` - the i-th term of the direct boundary formula
  (``i = p`` is the wrap-around term of a degree-p chain);
* ``("t", p)`` - the cyclic operator on degree-p chains;
* ``("comp", i)`` - the composition in slot i (every degree).

Code consults :func:`sign` at the point where the term is produced.  All
memoized matrices are keyed by :func:`token`, so entering or leaving a
mutation never serves stale results.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager

KINDS = ("boundary", "t", "comp")

_lock = threading.Lock()
_active: frozenset = frozenset()


def sign(kind: str, index: int) -> int:
    return -1 if (kind, index) in _active else 1


def token() -> tuple:
    return tuple(sorted(_active))


@contextmanager
def mutate(kind: str, index: int):
    global _active
    if kind not in KINDS:
        raise ValueError(f"unknown mutation kind {kind!r}")
    with _lock:
        previous = _active
        _active = previous | {(kind, index)}
    try:
        yield
    finally:
        with _lock:
            _active = previous
