from __future__ import annotations

import pytest

from shc import cyclic
from shc.classical import ClassicalAlgebra, NotClassical, classical_compare


@pytest.mark.parametrize("name,degree", [("T_triv", 4), ("T_dual", 3), ("T_u2", 3), ("T_z2", 3)])
def test_secondary_equals_classical(T, name, degree):
    r = classical_compare(T(name), degree, seed=3)
    assert r.passed, r.failures
    assert r.checks > 10


def test_requires_one_dimensional_B(T):
    with pytest.raises(NotClassical, match="dim B = 2"):
        classical_compare(T("T_full"), 2)


def test_classical_rotation_is_lodays(T):
    # t(a0 (x) a1 (x) a2) = a2 (x) a0 (x) a1 with no sign; tensor index is sum a_i d^i
    t = T("T_z2")
    cl = ClassicalAlgebra(t)
    rot = cl.rotation(2)
    for a in ((0, 1, 0), (1, 1, 0), (0, 0, 1)):
        src = a[0] + 2 * a[1] + 4 * a[2]
        dst = a[2] + 2 * a[0] + 4 * a[1]
        assert rot.column(src) == {dst: 1}
    assert rot == cyclic.t_matrix(t, 2)
