import pytest
from hypothesis import given
from hypothesis import strategies as st

from superdeform.diffpoly import (
    EVEN,
    ODD,
    DiffPolynomial,
    DiffSymbol,
    RewriteSystem,
    Rule,
    collect,
    dp_derive,
    dp_reduce,
    dp_substitute,
)
from superdeform.errors import NonTerminatingRuleSet

A, B = DiffSymbol("a"), DiffSymbol("b")
P, Q = DiffSymbol("p", parity=ODD), DiffSymbol("q", parity=ODD)
Z = DiffSymbol("z")
Y = DiffSymbol("w", chart="y")
SYMBOLS = [A, B, P, Q, Z, Y]


def sym(s):
    return DiffPolynomial.symbol(s)


@st.composite
def polys(draw, parity=None):
    terms = []
    for _ in range(draw(st.integers(0, 4))):
        mono = tuple(draw(st.lists(st.sampled_from(SYMBOLS), max_size=3)))
        terms.append((mono, draw(st.integers(-3, 3))))
    p = DiffPolynomial(terms)
    if parity is not None:
        p = DiffPolynomial({m: c for m, c in p.terms.items() if sum(s.parity for s in m) % 2 == parity})
    return p


def test_odd_symbols_anticommute_and_square_to_zero():
    p, q = sym(P), sym(Q)
    assert p * q == -(q * p)
    assert (p * p).is_zero()
    assert sym(A) * p == p * sym(A)


@given(polys(), polys(), polys())
def test_ring_laws(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == DiffPolynomial()


@given(polys(EVEN), polys(EVEN), polys())
def test_leibniz(f, g, h):
    chain = {"y": sym(Z) * sym(Z)}
    assert dp_derive(f * g, chain) == dp_derive(f, chain) * g + f * dp_derive(g, chain)
    assert dp_derive(f * h, chain) == dp_derive(f, chain) * h + f * dp_derive(h, chain)


def test_chain_factor():
    assert dp_derive(sym(Y), {"y": sym(Z) * sym(Z)}) == sym(Y.derivative()) * sym(Z) * sym(Z)
    assert str(Y.derivative().derivative()) == "w_yy"
    assert str(A.derivative()) == "a'"


def test_substitute_and_collect():
    p = sym(A) * sym(Z) * sym(Z) + sym(B) * sym(Z) + 3
    assert dp_substitute(p, {A: sym(B)}) == sym(B) * sym(Z) * sym(Z) + sym(B) * sym(Z) + 3
    assert collect(p, (Z,)) == {(0,): DiffPolynomial.constant(3), (1,): sym(B), (2,): sym(A)}
    with pytest.raises(ValueError):
        collect(p, (P,))


def test_rendering():
    p = sym(A) * sym(A) * sym(Z) - sym(B) * 2
    assert str(p) == "a^2*z - 2*b"
    assert str(DiffPolynomial()) == "0"


def test_rule_normalizes_coefficient():
    r = Rule.make(sym(A) * 2, sym(B) * 4)
    assert r.lhs == (A,) and r.rhs == sym(B) * 2


def test_prolong():
    r = Rule.make(sym(A), sym(B) * sym(B))
    assert r.prolong().lhs == (A.derivative(),)
    assert r.prolong().rhs == sym(B.derivative()) * sym(B) * 2


@given(polys())
def test_reduction_is_idempotent_and_terminates(f):
    rules = RewriteSystem([Rule.make(sym(A), sym(B) + 1), Rule.make(sym(P) * sym(Q), sym(B))], {"a": 3, "p": 2, "q": 2})
    nf = dp_reduce(f, rules)
    assert dp_reduce(nf, rules) == nf
    assert A not in nf.symbols()


def test_reduction_sign_with_odd_rule():
    rules = RewriteSystem([Rule.make(sym(P) * sym(Q), sym(A))], {"p": 2, "q": 2})
    # q p = -p q -> -a
    assert dp_reduce(sym(Q) * sym(P), rules) == -sym(A)
    assert dp_reduce(sym(Z) * sym(Q) * sym(P), rules) == -(sym(Z) * sym(A))


def test_non_terminating_rule_sets_are_rejected():
    with pytest.raises(NonTerminatingRuleSet):
        RewriteSystem([Rule.make(sym(A), sym(B)), Rule.make(sym(B), sym(A))])
    with pytest.raises(NonTerminatingRuleSet):
        RewriteSystem([Rule.make(sym(A), sym(B)), Rule.make(sym(A), sym(Z))], {"a": 5})
    RewriteSystem([Rule.make(sym(A), sym(B))], {"a": 2})  # strictly decreasing


def test_without_group():
    rs = RewriteSystem([Rule.make(sym(A), sym(B), "g1"), Rule.make(sym(Z), 1, "g2")], {"a": 2})
    assert rs.groups() == {"g1", "g2"}
    assert rs.without("g1").groups() == {"g2"}
