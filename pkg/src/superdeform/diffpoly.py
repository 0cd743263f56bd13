"""Free differential polynomial ring over named formal function symbols.

Symbols carry a derivative order, a Grassmann parity and the coordinate
(chart) they are functions of.  ``dp_derive`` is the formal d/dx; a symbol
living on another chart picks up the chain factor registered for that chart
(``d/dx = zeta^2 d/dy`` on a spin transition).  Relations are oriented
rewrite rules whose left-hand sides are monomials; termination is enforced
when a :class:`RewriteSystem` is built by requiring every rule to strictly
lower a weighted symbol count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NonTerminatingRuleSet
from .scalar import GaussianRational, render_gaussian

EVEN, ODD = 0, 1


@dataclass(frozen=True, order=True)
class DiffSymbol:
    name: str
    order: int = 0
    parity: int = EVEN
    chart: str = "x"

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("derivative order must be non-negative")
        if self.parity not in (EVEN, ODD):
            raise ValueError("parity must be EVEN or ODD")

    def derivative(self) -> "DiffSymbol":
        return DiffSymbol(self.name, self.order + 1, self.parity, self.chart)

    def __str__(self):
        if self.order == 0:
            return self.name
        if self.chart == "x":
            return self.name + "'" * self.order
        return f"{self.name}_{self.chart * self.order}"


def _sort_monomial(symbols) -> tuple:
    """Canonical order of a product; returns ``(sign, monomial)``, sign 0 when
    an odd symbol repeats."""
    items = list(symbols)
    sign = 1
    # insertion sort, counting transpositions of odd pairs
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            if items[j - 1].parity and items[j].parity:
                sign = -sign
            items[j - 1], items[j] = items[j], items[j - 1]
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b and a.parity == ODD:
            return 0, ()
    return sign, tuple(items)


class DiffPolynomial:
    """Finite sum of ``GaussianRational * monomial``; immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc = {}
        for mono, c in (terms.items() if isinstance(terms, dict) else (terms or ())):
            sign, key = _sort_monomial(mono)
            if sign == 0:
                continue
            c = GaussianRational.coerce(c) * sign
            acc[key] = acc.get(key, GaussianRational(0)) + c
        self.terms = {k: v for k, v in sorted(acc.items()) if not v.is_zero()}

    @classmethod
    def symbol(cls, name, order=0, parity=EVEN, chart="x") -> "DiffPolynomial":
        s = name if isinstance(name, DiffSymbol) else DiffSymbol(name, order, parity, chart)
        return cls({(s,): 1})

    @classmethod
    def constant(cls, c) -> "DiffPolynomial":
        return cls({(): c})

    @classmethod
    def coerce(cls, value) -> "DiffPolynomial":
        if isinstance(value, DiffPolynomial):
            return value
        if isinstance(value, DiffSymbol):
            return cls({(value,): 1})
        return cls.constant(value)

    def is_zero(self) -> bool:
        return not self.terms

    def symbols(self) -> set:
        return {s for mono in self.terms for s in mono}

    def __add__(self, other):
        other = DiffPolynomial.coerce(other)
        return DiffPolynomial(list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return DiffPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-DiffPolynomial.coerce(other))

    def __rsub__(self, other):
        return DiffPolynomial.coerce(other) - self

    def __mul__(self, other):
        other = DiffPolynomial.coerce(other)
        out = []
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out.append((m1 + m2, c1 * c2))
        return DiffPolynomial(out)

    def __rmul__(self, other):
        return DiffPolynomial.coerce(other) * self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not in the ring")
        out = DiffPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = DiffPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        return f"DiffPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.terms.items():
            negative = c.is_real() and c.re < 0
            mag = -c if negative else c
            body = _render_monomial(mono)
            if not body:
                text = render_gaussian(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{render_gaussian(mag)}*{body}"
            if not parts:
                parts.append(f"-{text}" if negative else text)
            else:
                parts.append(f" - {text}" if negative else f" + {text}")
        return "".join(parts)


def _render_monomial(mono) -> str:
    parts, i = [], 0
    while i < len(mono):
        j = i
        while j < len(mono) and mono[j] == mono[i]:
            j += 1
        parts.append(str(mono[i]) if j - i == 1 else f"{mono[i]}^{j - i}")
        i = j
    return "*".join(parts)


def dp_derive(p: DiffPolynomial, chain: dict | None = None) -> DiffPolynomial:
    """Formal d/dx with the graded Leibniz rule (the operator is even).

    ``chain`` maps a chart name to the factor multiplying derivatives of
    symbols on that chart, e.g. ``{"y": zeta**2}``.
    """
    chain = chain or {}
    out = DiffPolynomial()
    for mono, c in p.terms.items():
        for i, s in enumerate(mono):
            term = DiffPolynomial({mono[:i] + (s.derivative(),) + mono[i + 1:]: c})
            if s.chart in chain:
                term = term * chain[s.chart]
            out = out + term
    return out


def dp_substitute(p: DiffPolynomial, mapping: dict) -> DiffPolynomial:
    """Replace symbols by polynomials (simultaneously, order-preserving)."""
    out = DiffPolynomial()
    for mono, c in p.terms.items():
        term = DiffPolynomial.constant(c)
        for s in mono:
            term = term * DiffPolynomial.coerce(mapping.get(s, s))
        out = out + term
    return out


def collect(p: DiffPolynomial, symbols) -> dict:
    """Group terms by the exponents of ``symbols``; returns
    ``{exponent tuple: coefficient polynomial}`` (even symbols only)."""
    symbols = tuple(symbols)
    for s in symbols:
        if s.parity == ODD:
            raise ValueError("collect works with even symbols only")
    out = {}
    for mono, c in p.terms.items():
        exps = tuple(mono.count(s) for s in symbols)
        rest = tuple(s for s in mono if s not in symbols)
        out[exps] = out.get(exps, DiffPolynomial()) + DiffPolynomial({rest: c})
    return {k: v for k, v in sorted(out.items()) if not v.is_zero()}


@dataclass(frozen=True)
class Rule:
    lhs: tuple  # monomial (sorted DiffSymbols)
    rhs: DiffPolynomial
    group: str = ""
    label: str = ""

    @classmethod
    def make(cls, lhs, rhs, group: str = "", label: str = "") -> "Rule":
        lhs_poly = DiffPolynomial.coerce(lhs)
        if len(lhs_poly.terms) != 1:
            raise ValueError("rule left-hand side must be a single monomial")
        (mono, c), = lhs_poly.terms.items()
        if not mono:
            raise ValueError("rule left-hand side must contain a symbol")
        # normalize to a unit coefficient
        return cls(mono, DiffPolynomial.coerce(rhs) * c.inverse(), group, label)

    def prolong(self, chain: dict | None = None) -> "Rule":
        """Derivative of a single-symbol rule: ``s' -> d(rhs)/dx``."""
        if len(self.lhs) != 1:
            raise ValueError("only single-symbol rules can be prolonged")
        s, = self.lhs
        if s.chart in (chain or {}):
            raise ValueError("prolong rules of x-chart symbols only")
        return Rule((s.derivative(),), dp_derive(self.rhs, chain), self.group, self.label + "'")

    def __str__(self):
        lhs = _render_monomial(self.lhs)
        return f"{lhs} -> {self.rhs}"


def _contains(mono: tuple, sub: tuple):
    """Remainder of ``mono`` after removing the multiset ``sub`` (or None)."""
    rest = list(mono)
    for s in sub:
        try:
            rest.remove(s)
        except ValueError:
            return None
    return tuple(rest)


@dataclass
class RewriteSystem:
    """Ordered rules plus the weights certifying termination.

    The weight of a symbol is ``weights[symbol]`` if present, else
    ``weights.get(name, 1) + order``; a monomial weighs the sum of its
    symbols.  Every rule must map its left-hand side to monomials of strictly
    smaller weight, so each rewrite lowers the multiset of term weights.
    """

    rules: list
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for r in self.rules:
            if r.lhs in seen:
                raise NonTerminatingRuleSet(f"duplicate left-hand side {r}")
            seen.add(r.lhs)
            lw = self.monomial_weight(r.lhs)
            for mono in r.rhs.terms:
                if self.monomial_weight(mono) >= lw:
                    raise NonTerminatingRuleSet(
                        f"rule {r} does not decrease the weight "
                        f"({lw} -> {self.monomial_weight(mono)} on {'*'.join(map(str, mono)) or '1'})"
                    )

    def weight(self, s: DiffSymbol) -> int:
        if s in self.weights:
            return self.weights[s]
        return self.weights.get(s.name, 1) + s.order

    def monomial_weight(self, mono) -> int:
        return sum(self.weight(s) for s in mono)

    def without(self, *groups) -> "RewriteSystem":
        return RewriteSystem([r for r in self.rules if r.group not in groups], dict(self.weights))

    def groups(self) -> set:
        return {r.group for r in self.rules}

    def match(self, mono: tuple):
        for r in self.rules:
            rest = _contains(mono, r.lhs)
            if rest is not None:
                return r, rest
        return None


def dp_reduce(p: DiffPolynomial, rules: RewriteSystem) -> DiffPolynomial:
    """Normal form: repeatedly rewrite the first reducible term (canonical
    term order, first applicable rule) until none is left."""
    current = DiffPolynomial.coerce(p)
    while True:
        for mono, c in current.terms.items():
            hit = rules.match(mono)
            if hit is None:
                continue
            r, rest = hit
            # mono = sign * (lhs * rest)
            sign, _ = _sort_monomial(r.lhs + rest)
            replaced = DiffPolynomial({(): c * sign}) * r.rhs * DiffPolynomial({rest: 1})
            current = current - DiffPolynomial({mono: c}) + replaced
            break
        else:
            return current
