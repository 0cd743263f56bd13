"""Superfields over a (1|1) chart with ``n`` odd parameters, and supermorphisms.

Odd generators are numbered ``0 .. n-1`` for xi_1 .. xi_n and ``n`` for theta,
in that canonical order.  A monomial is a sorted tuple of generator indices;
the sign of any reordering is folded into the coefficient when a product is
formed.  Coefficients are :class:`~superdeform.scalar.RationalFunction` in
the chart coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import (
    ChartMismatch,
    NonInvertibleBody,
    NonNilpotentShift,
    ParityError,
    VanishingZeta,
)
from .scalar import RationalFunction, rf_compose, rf_derivative

EVEN, ODD = 0, 1


def merge_sign(a: tuple, b: tuple) -> int:
    """Sign of sorting the concatenation ``a + b`` (0 if they share a generator)."""
    inversions = 0
    for i in a:
        for j in b:
            if i == j:
                return 0
            if i > j:
                inversions += 1
    return -1 if inversions & 1 else 1


def monomial_name(mono: tuple, n: int) -> str:
    if not mono:
        return "1"
    return "*".join("theta" if g == n else f"xi{g + 1}" for g in mono)


class Superfield:
    """A homogeneous element of ``O(chart)[xi_1..xi_n, theta]``."""

    __slots__ = ("chart", "var", "n", "parity", "coeffs")

    def __init__(self, chart: str, var: str, n: int, coeffs: dict, parity: int | None = None):
        cleaned = {}
        for mono, c in coeffs.items():
            mono = tuple(mono)
            if not isinstance(c, RationalFunction):
                c = RationalFunction.constant(c, var)
            elif c.var != var:
                c = c.with_var(var) if c.is_constant() else _bad_var(c, var)
            if c.is_zero():
                continue
            if list(mono) != sorted(set(mono)) or any(g < 0 or g > n for g in mono):
                raise ValueError(f"non-canonical monomial {mono}")
            cleaned[mono] = c
        parities = {len(m) % 2 for m in cleaned}
        if parity is None:
            parity = parities.pop() if len(parities) == 1 else EVEN
            if parities:
                raise ParityError("mixed-parity superfield")
        elif parities - {parity}:
            bad = [monomial_name(m, n) for m in cleaned if len(m) % 2 != parity]
            raise ParityError(
                f"{'odd' if parity else 'even'} superfield given monomials {', '.join(bad)}"
            )
        self.chart, self.var, self.n, self.parity = chart, var, n, parity
        self.coeffs = cleaned

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, chart, var, n, parity=EVEN):
        return cls(chart, var, n, {}, parity)

    @classmethod
    def scalar(cls, chart, var, n, c):
        return cls(chart, var, n, {(): c}, EVEN)

    @classmethod
    def generator(cls, chart, var, n, index):
        return cls(chart, var, n, {(index,): 1}, ODD)

    # -- access -----------------------------------------------------------
    def __getitem__(self, mono) -> RationalFunction:
        c = self.coeffs.get(tuple(mono))
        return RationalFunction.constant(0, self.var) if c is None else c

    def body(self) -> RationalFunction:
        return self[()]

    def is_zero(self) -> bool:
        return not self.coeffs

    def nilpotent_part(self) -> "Superfield":
        return Superfield(
            self.chart, self.var, self.n,
            {m: c for m, c in self.coeffs.items() if m}, self.parity,
        )

    def _check(self, other):
        if not isinstance(other, Superfield):
            raise TypeError(f"expected Superfield, got {type(other).__name__}")
        if other.chart != self.chart or other.n != self.n:
            raise ChartMismatch(
                f"superfields over ({self.chart}, n={self.n}) and ({other.chart}, n={other.n})"
            )

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        if other.parity != self.parity and not (self.is_zero() or other.is_zero()):
            raise ParityError("sum of superfields of different parity")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out[m] + c if m in out else c
        parity = self.parity if not self.is_zero() else other.parity
        return Superfield(self.chart, self.var, self.n, out, parity)

    def __neg__(self):
        return Superfield(
            self.chart, self.var, self.n, {m: -c for m, c in self.coeffs.items()}, self.parity
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Superfield":
        return Superfield(
            self.chart, self.var, self.n, {m: v * c for m, v in self.coeffs.items()}, self.parity
        )

    def __mul__(self, other):
        if not isinstance(other, Superfield):
            return self.scale(other)
        return sf_multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        result = Superfield.scalar(self.chart, self.var, self.n, 1)
        for _ in range(k):
            result = result * self
        return result

    def map_coefficients(self, fn) -> "Superfield":
        return Superfield(
            self.chart, self.var, self.n, {m: fn(c) for m, c in self.coeffs.items()}, self.parity
        )

    def derivative(self) -> "Superfield":
        """Derivative in the even chart coordinate."""
        return self.map_coefficients(rf_derivative)

    def __eq__(self, other):
        if not isinstance(other, Superfield):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.n == other.n
            and self.coeffs == other.coeffs
            and (self.parity == other.parity or not self.coeffs)
        )

    def __hash__(self):
        return hash((self.chart, self.n, frozenset(self.coeffs.items())))

    def terms(self):
        """``(monomial, coefficient)`` pairs in canonical order."""
        return sorted(self.coeffs.items(), key=lambda mc: (len(mc[0]), mc[0]))

    def __repr__(self):
        if not self.coeffs:
            return f"Superfield({self.chart}: 0)"
        body = " + ".join(f"({c})*{monomial_name(m, self.n)}" for m, c in self.terms())
        return f"Superfield({self.chart}: {body})"


def _bad_var(c, var):
    raise ChartMismatch(f"coefficient in {c.var} on a chart with coordinate {var}")


def sf_multiply(a: Superfield, b: Superfield) -> Superfield:
    """Graded product with Koszul signs; squares of odd generators vanish."""
    a._check(b)
    out = {}
    for ma, ca in a.coeffs.items():
        for mb, cb in b.coeffs.items():
            sign = merge_sign(ma, mb)
            if not sign:
                continue
            m = tuple(sorted(ma + mb))
            c = ca * cb if sign > 0 else -(ca * cb)
            out[m] = out[m] + c if m in out else c
    return Superfield(a.chart, a.var, a.n, out, (a.parity + b.parity) % 2)


def sf_substitute_even(c: RationalFunction, shift: Superfield, base: RationalFunction) -> Superfield:
    """Taylor-expand ``c(base + shift)`` for an even nilpotent ``shift``.

    ``base`` lives in the shift's chart coordinate; ``c`` in any variable.
    """
    if shift.parity != EVEN and not shift.is_zero():
        raise ParityError("even substitution with an odd shift")
    if () in shift.coeffs:
        raise NonNilpotentShift("shift has a body component")
    result = Superfield.scalar(shift.chart, shift.var, shift.n, rf_compose(c, base))
    power = Superfield.scalar(shift.chart, shift.var, shift.n, 1)
    deriv = c
    k = 0
    while True:
        k += 1
        power = power * shift
        if power.is_zero():
            break
        deriv = rf_derivative(deriv)
        if deriv.is_zero():
            break
        result = result + power.scale(rf_compose(deriv, base) / factorial(k))
    return result


@dataclass(frozen=True, eq=False)
class Supermorphism:
    """A chart transition ``(x, theta) -> (y, eta)`` over ``C^{0|n}``.

    ``even`` and ``odd`` are superfields over the source chart.
    """

    source: str
    target: str
    source_var: str
    target_var: str
    n: int
    even: Superfield
    odd: Superfield

    def __post_init__(self):
        for field, parity in ((self.even, EVEN), (self.odd, ODD)):
            if field.chart != self.source or field.n != self.n:
                raise ChartMismatch("component superfield lives on the wrong chart")
            if not field.is_zero() and field.parity != parity:
                raise ParityError("supermorphism components have the wrong parity")
        if self.odd[(self.n,)].is_zero():
            raise VanishingZeta(f"zeta vanishes on {self.source}->{self.target}")

    # -- component access (coefficients of the standard expansion) ---------
    @property
    def body(self) -> RationalFunction:
        return self.even.body()

    @property
    def zeta(self) -> RationalFunction:
        return self.odd[(self.n,)]

    def coefficient(self, component: str, xi: tuple) -> RationalFunction:
        """Coefficient of ``xi_I`` (``theta`` appended when the parity needs it).

        ``component`` is ``"even"`` or ``"odd"``; ``xi`` holds 1-based indices.
        """
        mono = tuple(i - 1 for i in xi)
        field = self.even if component == "even" else self.odd
        wanted = EVEN if component == "even" else ODD
        if len(mono) % 2 != wanted:
            mono = mono + (self.n,)
        return field[mono]

    def f(self, i):
        return self.coefficient("even", (i,))

    def psi(self, i):
        return self.coefficient("odd", (i,))

    def g(self, i, j):
        return self.coefficient("even", (i, j))

    def zeta2(self, i, j):
        return self.coefficient("odd", (i, j))

    def is_split(self) -> bool:
        return len(self.even.coeffs) <= 1 and set(self.odd.coeffs) <= {(self.n,)}

    def __eq__(self, other):
        if not isinstance(other, Supermorphism):
            return NotImplemented
        return (
            (self.source, self.target, self.n) == (other.source, other.target, other.n)
            and self.even == other.even
            and self.odd == other.odd
        )

    def __hash__(self):
        return hash((self.source, self.target, self.even, self.odd))


def make_morphism(source, target, source_var, target_var, n, even: dict, odd: dict) -> Supermorphism:
    """Build a morphism from ``{monomial: coefficient}`` maps over the source chart."""
    return Supermorphism(
        source, target, source_var, target_var, n,
        Superfield(source, source_var, n, even, EVEN),
        Superfield(source, source_var, n, odd, ODD),
    )


def identity_morphism(chart: str, var: str, n: int) -> Supermorphism:
    return make_morphism(
        chart, chart, var, var, n,
        {(): RationalFunction.variable(var)}, {(n,): 1},
    )


def split_morphism(source, target, source_var, target_var, n, f, zeta) -> Supermorphism:
    return make_morphism(source, target, source_var, target_var, n, {(): f}, {(n,): zeta})


def _substitute(field: Superfield, first: Supermorphism) -> Superfield:
    """Pull a superfield on ``first.target`` back along ``first``."""
    n = first.n
    base = first.body
    shift = first.even.nilpotent_part()
    chart, var = first.source, first.source_var
    gens = [Superfield.generator(chart, var, n, k) for k in range(n)] + [first.odd]
    total = Superfield.zero(chart, var, n, field.parity)
    for mono, c in field.terms():
        term = sf_substitute_even(c, shift, base)
        for g in mono:
            term = term * gens[g]
        total = total + term
    return total


def morphism_compose(second: Supermorphism, first: Supermorphism) -> Supermorphism:
    """Return ``second o first``."""
    if first.target != second.source:
        raise ChartMismatch(f"cannot compose {second.source}->... after ...->{first.target}")
    if first.n != second.n:
        raise ChartMismatch("orders differ")
    return Supermorphism(
        first.source, second.target, first.source_var, second.target_var, first.n,
        _substitute(second.even, first), _substitute(second.odd, first),
    )


def mobius_inverse(f: RationalFunction, var: str) -> RationalFunction | None:
    """Inverse of ``(a x + b)/(c x + d)`` in the variable ``var``, or None."""
    if len(f.num) > 2 or len(f.den) > 2:
        return None
    b, a = (list(f.num) + [0, 0])[:2] if f.num else (0, 0)
    d, c = (list(f.den) + [0, 0])[:2]
    if a * d - b * c == 0:
        return None
    y = RationalFunction.variable(var)
    return (y * d - b) / (y * (-c) + a)


def morphism_invert(m: Supermorphism, body_inverse: RationalFunction | None = None) -> Supermorphism:
    """Two-sided inverse of ``m``.

    The body inverse is detected for Mobius maps or may be supplied.  The
    nilpotent part is inverted by the iteration ``v <- (id - eps) o v``,
    which doubles the xi-degree of the error ``eps`` each step.
    """
    n = m.n
    g = body_inverse if body_inverse is not None else mobius_inverse(m.body, m.target_var)
    if g is None:
        raise NonInvertibleBody(f"no rational inverse known for body {m.body}")
    g = g.with_var(m.target_var)
    if rf_compose(m.body, g) != RationalFunction.variable(m.target_var):
        raise NonInvertibleBody(f"{g} does not invert {m.body}")
    if m.zeta.is_zero():
        raise VanishingZeta("zeta vanishes")
    split_inv = split_morphism(
        m.target, m.source, m.target_var, m.source_var, n, g, rf_compose(m.zeta, g).inverse()
    )
    u = morphism_compose(split_inv, m)
    v = identity_morphism(m.source, m.source_var, n)
    ident = v
    for _ in range(n + 2):
        e = morphism_compose(v, u)
        eps_even = e.even - ident.even
        eps_odd = e.odd - ident.odd
        if eps_even.is_zero() and eps_odd.is_zero():
            break
        correction = Supermorphism(
            m.source, m.source, m.source_var, m.source_var, n,
            ident.even - eps_even, ident.odd - eps_odd,
        )
        v = morphism_compose(correction, v)
    else:
        raise NonInvertibleBody("nilpotent inversion did not converge")
    return morphism_compose(v, split_inv)


def morphism_difference(a: Supermorphism, b: Supermorphism):
    """Componentwise residual superfields ``(a.even - b.even, a.odd - b.odd)``."""
    if (a.source, a.n) != (b.source, b.n):
        raise ChartMismatch("morphisms on different charts")
    return a.even - b.even, a.odd - b.odd
