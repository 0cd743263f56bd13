import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import laurent
from superdeform.errors import ChartMismatch, NonNilpotentShift, ParityError, VanishingZeta
from superdeform.generators import morphism_from_coefficients, random_solved_morphism
from superdeform.grassmann import (
    EVEN,
    ODD,
    Superfield,
    identity_morphism,
    make_morphism,
    merge_sign,
    morphism_compose,
    morphism_difference,
    morphism_invert,
    sf_substitute_even,
)
from superdeform.scalar import RationalFunction, rf_compose, rf_derivative

N = 2
x = RationalFunction.variable("x")


def gen(i, n=N):
    return Superfield.generator("U", "x", n, i)


def one(n=N):
    return Superfield.scalar("U", "x", n, 1)


@st.composite
def superfields(draw, parity, n=N):
    monos = [m for k in range(parity, n + 2, 2) for m in combinations(range(n + 1), k)]
    coeffs = {m: draw(laurent()) for m in monos if draw(st.booleans())}
    return Superfield("U", "x", n, coeffs, parity)


def test_merge_sign():
    assert merge_sign((0,), (1,)) == 1
    assert merge_sign((1,), (0,)) == -1
    assert merge_sign((0, 2), (1,)) == -1
    assert merge_sign((0,), (0,)) == 0


def test_generators_anticommute_and_square_to_zero():
    for i in range(N + 1):
        assert (gen(i) * gen(i)).is_zero()
        for j in range(N + 1):
            assert gen(i) * gen(j) == -(gen(j) * gen(i)) or i == j


@given(superfields(ODD), superfields(ODD), superfields(EVEN))
def test_graded_commutativity_and_associativity(a, b, c):
    assert a * b == -(b * a)
    assert a * c == c * a
    assert (a * b) * c == a * (b * c)
    assert (a * a).is_zero()


@given(superfields(EVEN), superfields(EVEN))
def test_derivative_is_even_derivation(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


def test_parity_enforced():
    with pytest.raises(ParityError):
        Superfield("U", "x", N, {(0,): 1}, EVEN)
    with pytest.raises(ParityError):
        Superfield("U", "x", N, {(0,): 1, (): 1})
    with pytest.raises(ChartMismatch):
        gen(0) * Superfield.generator("V", "x", N, 0)


def test_taylor_substitution_matches_expansion():
    c = x**3 + x.inverse()
    base = x + 1
    shift = Superfield("U", "x", N, {(0, 1): x * 2}, EVEN)
    got = sf_substitute_even(c, shift, base)
    assert got[()] == rf_compose(c, base)
    assert got[(0, 1)] == rf_compose(rf_derivative(c), base) * x * 2
    with pytest.raises(NonNilpotentShift):
        sf_substitute_even(c, one(), base)
    with pytest.raises(ParityError):
        sf_substitute_even(c, gen(0), base)


def test_taylor_substitution_second_order():
    # with four generators the square of xi1 xi2 + xi3 xi4 survives
    n = 4
    shift = Superfield("U", "x", n, {(0, 1): 1, (2, 3): 1}, EVEN)
    got = sf_substitute_even(x**3, shift, x)
    assert got[(0, 1, 2, 3)] == x * 6  # c''/2! * 2 xi1234


def _morphisms(seed, count=10):
    rng = random.Random(seed)
    return [morphism_from_coefficients(random_solved_morphism(rng).coefficients()) for _ in range(count)]


def test_identity_is_neutral():
    ident = identity_morphism("U", "x", N)
    for m in _morphisms(1, 5):
        assert morphism_compose(m, ident) == m
        back = identity_morphism("V", "y", N)
        assert morphism_compose(back, m) == m


def test_invert_two_sided():
    for m in _morphisms(2, 8):
        try:
            inv = morphism_invert(m)
        except Exception as exc:  # non-Mobius bodies have no rational inverse
            assert type(exc).__name__ == "NonInvertibleBody"
            continue
        assert morphism_compose(inv, m) == identity_morphism("U", "x", N)
        assert morphism_compose(m, inv) == identity_morphism("V", "y", N)


def test_compose_associative():
    y = RationalFunction.variable("y")
    z = RationalFunction.variable("z")
    a = make_morphism("U", "V", "x", "y", N, {(): x + 1, (0, 1): x}, {(2,): 1, (0,): x})
    b = make_morphism("V", "W", "y", "z", N, {(): y * 2, (0, 2): y}, {(2,): 2, (1,): 1})
    c = make_morphism("W", "T", "z", "t", N, {(): z * z, (0, 1): 1}, {(2,): z, (0, 1, 2): z})
    left = morphism_compose(c, morphism_compose(b, a))
    right = morphism_compose(morphism_compose(c, b), a)
    de, do = morphism_difference(left, right)
    assert de.is_zero() and do.is_zero()


def test_compose_chart_mismatch():
    m = identity_morphism("U", "x", N)
    other = identity_morphism("V", "y", N)
    with pytest.raises(ChartMismatch):
        morphism_compose(m, other)


def test_vanishing_zeta_rejected():
    with pytest.raises(VanishingZeta):
        make_morphism("U", "V", "x", "y", N, {(): x}, {(0,): 1})


def test_component_accessors():
    m = make_morphism(
        "U", "V", "x", "y", N,
        {(): x, (0, 2): x * 2, (1, 2): x * 3, (0, 1): x * 4},
        {(2,): 1, (0,): x * 5, (1,): x * 6, (0, 1, 2): x * 7},
    )
    assert (m.f(1), m.f(2), m.g(1, 2)) == (x * 2, x * 3, x * 4)
    assert (m.psi(1), m.psi(2), m.zeta2(1, 2)) == (x * 5, x * 6, x * 7)
    assert not m.is_split()
