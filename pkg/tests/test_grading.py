import pytest

from multideg.grading import (
    Multigrading,
    ShiftPair,
    bigr_grading,
    builtin_bigrading,
    element_degree,
    is_multihomogeneous,
)
from multideg.poly import Ring

R = Ring(["x", "y"])


def test_positivity():
    assert Multigrading([[1, 0], [1, 2]]).is_positive()
    assert not Multigrading([[1], [-1]]).is_positive()
    # the built-in bigrading of gr^F(R_V) has t in degree (0, -1), theta in (0, 1)
    g = builtin_bigrading("grF_RV", 0, 1)
    assert g.table == ((0, -1), (1, 1), (0, 1))
    assert not g.is_positive()
    assert bigr_grading(1, 1).table == ((0, 0), (0, -1), (1, 0), (1, 1))
    with pytest.raises(ValueError):
        builtin_bigrading("other", 1, 1)


def test_homogeneity_with_shifts():
    g = Multigrading([[1, 0], [0, 1]])
    assert is_multihomogeneous(R.parse("x*y + x*y"), g) == (True, (1, 1))
    assert is_multihomogeneous(R.parse("x + y"), g) == (False, None)
    v = R.parse("[x, y]", rank=2)
    assert is_multihomogeneous(v, g, [(0, 1), (1, 0)]) == (True, (1, 1))
    assert is_multihomogeneous(R.zero(), g) == (True, None)
    assert is_multihomogeneous([R.parse("x"), R.parse("y^2")], g) == (True, [(1, 0), (0, 2)])
    with pytest.raises(ValueError):
        element_degree(R.parse("x + 1"), g)


def test_shift_pair():
    s = ShiftPair((0, 1), (0, -1))
    assert s.rank == 2 and s.bidegrees() == [(0, 0), (1, -1)]
    assert ShiftPair.zero(3).n == (0, 0, 0)
    with pytest.raises(ValueError):
        ShiftPair((0,), (0, 1))
    with pytest.raises(ValueError):
        Multigrading([[1, 0], [1]])
