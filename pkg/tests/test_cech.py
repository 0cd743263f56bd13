import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import laurent
from superdeform.cech import (
    CechCochain,
    LineBundleModel,
    coboundary,
    count_nontrivial_classes,
    h1_dimension,
    solve_coboundary,
    zero_cochain,
)
from superdeform.errors import DegreeOverflow, NotACocycle, NotInModelRing
from superdeform.scalar import RationalFunction

x = RationalFunction.variable("x")
y = RationalFunction.variable("y")
twists = st.integers(-6, 3)


def one_cochain(k, value):
    return CechCochain(1, LineBundleModel(k), {("U", "V"): value})


@given(twists, laurent(low=-8, high=8))
def test_solver_decomposition(k, value):
    cls = solve_coboundary(one_cochain(k, value))
    # value = d(trivializer) + residual, residual inside the gap
    assert coboundary(cls.trivializer)[("U", "V")] + cls.residual == value
    gap = set(LineBundleModel(k).gap_powers())
    assert set((cls.residual.laurent_coefficients() or {})) <= gap
    assert cls.trivial == cls.residual.is_zero()


@given(twists, st.dictionaries(st.integers(0, 4), st.integers(-3, 3)), st.dictionaries(st.integers(0, 4), st.integers(-3, 3)))
def test_coboundaries_are_trivial(k, su, sv):
    sigma = zero_cochain(LineBundleModel(k), RationalFunction.laurent(su, "x"), RationalFunction.laurent(sv, "y"))
    z = coboundary(sigma)
    assert solve_coboundary(z).trivial


@pytest.mark.parametrize("k", range(-6, 4))
def test_dimension_formula(k):
    assert count_nontrivial_classes(k) == h1_dimension(k) == max(0, -k - 1)


def test_xinv_witness():
    cls = solve_coboundary(one_cochain(-2, x.inverse()))
    assert not cls.trivial
    assert cls.residual == x.inverse()
    assert cls.h1_coordinates == (1,)


def test_transport_convention():
    # sigma_V = y lands as x^k * (-1/x) in U's frame
    z = coboundary(zero_cochain(LineBundleModel(1), RationalFunction.constant(0), y))
    assert z[("U", "V")] == -RationalFunction.constant(1)


def test_validation():
    with pytest.raises(DegreeOverflow):
        CechCochain(3, LineBundleModel(0), {})
    with pytest.raises(NotInModelRing):
        zero_cochain(LineBundleModel(0), x.inverse(), y)
    with pytest.raises(NotACocycle):
        CechCochain(0, LineBundleModel(0), {"W": x})
    with pytest.raises(DegreeOverflow):
        solve_coboundary(zero_cochain(LineBundleModel(0), x, y))
