"""Exact coefficient arithmetic.

Two value types live here:

* :class:`GaussianRational` -- elements of Q(i), stored as a pair of exact
  rationals (``gmpy2.mpq`` when installed, else :class:`fractions.Fraction`).
* :class:`RationalFunction` -- univariate rational functions over Q(i) in
  canonical form (coprime numerator/denominator, monic denominator).

Canonical form makes ``==`` on rational functions semantic equality.
Everything is immutable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

try:  # C-speed rationals; same semantics as Fraction
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

from .errors import PoleAtCompositionPoint, VariableMismatch

__all__ = [
    "GaussianRational",
    "RationalFunction",
    "rf_derivative",
    "rf_compose",
    "rf_equal",
    "ZERO",
    "ONE",
    "I",
]


_F0 = Q(0)


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + Q(im)
        self.re = Q(re)
        self.im = Q(im)

    @classmethod
    def _raw(cls, re, im) -> "GaussianRational":
        # both parts already of type Q
        out = object.__new__(cls)
        out.re, out.im = re, im
        return out

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        if isinstance(value, complex):
            raise TypeError("floating point complex values are not exact")
        raise TypeError(f"cannot coerce {value!r} to GaussianRational")

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        if other.__class__ is not GaussianRational:
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __sub__(self, other):
        if other.__class__ is not GaussianRational:
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if other.__class__ is not GaussianRational:
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        if not self.im and not other.im:
            return GaussianRational._raw(self.re * other.re, _F0)
        return GaussianRational._raw(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("GaussianRational division by zero")
        if not self.im:
            return GaussianRational(1 / self.re)
        norm = self.re * self.re + self.im * self.im
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return render_gaussian(self)


def _frac_str(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_gaussian(c: GaussianRational) -> str:
    """Render ``c`` in the expression grammar (``3/2``, ``2*i``, ``(1+2*i)``)."""
    if not c.im:
        return _frac_str(c.re)
    if c.im == 1:
        imag = "i"
    elif c.im == -1:
        imag = "-i"
    else:
        imag = f"{_frac_str(c.im)}*i"
    if not c.re:
        return imag
    sign = "-" if imag.startswith("-") else "+"
    return f"({_frac_str(c.re)}{sign}{imag.lstrip('-')})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# Dense univariate polynomials over Q(i): tuples of coefficients, low degree
# first, no trailing zeros.  Module-private helpers.


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] = out[k] + c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pscale(a, c):
    if c.is_zero():
        return ()
    return tuple(x * c for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    rem = list(a)
    inv_lead = b[-1].inverse()
    quot = [ZERO] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv_lead
        quot[k] = c
        if c.is_zero():
            continue
        for j, y in enumerate(b):
            rem[k + j] = rem[k + j] - c * y
    return _trim(quot), _trim(rem[: len(b) - 1])


def _pmonic(a):
    if not a:
        return a
    return _pscale(a, a[-1].inverse())


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _is_power(a):
    return all(c.is_zero() for c in a[:-1])


def _valuation(a):
    for k, c in enumerate(a):
        if not c.is_zero():
            return k
    return len(a)


def _pderiv(a):
    return _trim(c * k for k, c in enumerate(a) if k > 0)


def _ppow(a, k):
    result = (ONE,)
    base = a
    while k:
        if k & 1:
            result = _pmul(result, base)
        base = _pmul(base, base)
        k >>= 1
    return result


def _pconst(c):
    c = GaussianRational.coerce(c)
    return () if c.is_zero() else (c,)


def _homogenize(p, num, den):
    """Return sum p_i num^i den^(deg p - i)."""
    if not p:
        return ()
    deg = len(p) - 1
    num_pows = [(ONE,)]
    den_pows = [(ONE,)]
    for _ in range(deg):
        num_pows.append(_pmul(num_pows[-1], num))
        den_pows.append(_pmul(den_pows[-1], den))
    out = ()
    for i, c in enumerate(p):
        if c.is_zero():
            continue
        out = _padd(out, _pscale(_pmul(num_pows[i], den_pows[deg - i]), c))
    return out


def _reduced(num, den, var):
    """Canonical rational function from a coprime pair (monic-izes)."""
    if not num:
        return RationalFunction.constant(0, var)
    lead = den[-1]
    if lead != ONE:
        inv = lead.inverse()
        num, den = _pscale(num, inv), _pscale(den, inv)
    return RationalFunction(num, den, var, _canonical=True)


class RationalFunction:
    """A canonical-form element of Q(i)(var)."""

    __slots__ = ("var", "num", "den", "_hash")

    def __init__(self, num, den=None, var: str = "x", *, _canonical=False):
        self.var = var
        if _canonical:
            self.num, self.den = num, den
        else:
            num = _trim(GaussianRational.coerce(c) for c in num)
            den = (ONE,) if den is None else _trim(GaussianRational.coerce(c) for c in den)
            if not den:
                raise ZeroDivisionError("rational function with zero denominator")
            if not num:
                self.num, self.den = (), (ONE,)
            elif _is_power(den):
                # Laurent fast path: the gcd is a power of the variable
                shift = min(_valuation(num), len(den) - 1)
                num, den = num[shift:], den[shift:]
                lead = den[-1]
                if lead != ONE:
                    inv = lead.inverse()
                    num, den = _pscale(num, inv), _pscale(den, inv)
                self.num, self.den = num, den
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lead = den[-1]
                if lead != ONE:
                    inv = lead.inverse()
                    num, den = _pscale(num, inv), _pscale(den, inv)
                self.num, self.den = num, den
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c, var: str = "x") -> "RationalFunction":
        return cls(_pconst(c), (ONE,), var, _canonical=True)

    @classmethod
    def variable(cls, var: str = "x") -> "RationalFunction":
        return cls((ZERO, ONE), (ONE,), var, _canonical=True)

    @classmethod
    def monomial(cls, c, power: int, var: str = "x") -> "RationalFunction":
        c = GaussianRational.coerce(c)
        if c.is_zero():
            return cls.constant(0, var)
        if power >= 0:
            return cls((ZERO,) * power + (c,), (ONE,), var, _canonical=True)
        return cls((c,), (ZERO,) * (-power) + (ONE,), var, _canonical=True)

    @classmethod
    def laurent(cls, coeffs: dict, var: str = "x") -> "RationalFunction":
        """Build ``sum coeffs[p] * var**p`` for integer powers ``p``."""
        coeffs = {p: GaussianRational.coerce(c) for p, c in coeffs.items()}
        coeffs = {p: c for p, c in coeffs.items() if not c.is_zero()}
        if not coeffs:
            return cls.constant(0, var)
        low = min(0, min(coeffs))
        num = [ZERO] * (max(coeffs) - low + 1)
        for p, c in coeffs.items():
            num[p - low] = c
        den = (ZERO,) * (-low) + (ONE,)
        return cls(num, den, var)

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] if self.num else ZERO

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.num + self.den)

    def laurent_coefficients(self):
        """Return ``{power: coeff}`` if the denominator is a pure power of the
        variable, else ``None``."""
        if any(not c.is_zero() for c in self.den[:-1]):
            return None
        shift = len(self.den) - 1
        return {k - shift: c for k, c in enumerate(self.num) if not c.is_zero()}

    def with_var(self, var: str) -> "RationalFunction":
        if var == self.var:
            return self
        return RationalFunction(self.num, self.den, var, _canonical=True)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.var != self.var:
                if other.is_constant():
                    return other.with_var(self.var)
                if self.is_constant():
                    raise _Swap
                raise VariableMismatch(f"{self.var} vs {other.var}")
            return other
        return RationalFunction.constant(other, self.var)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except _Swap:
            return self.with_var(other.var) + other
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(_padd(self.num, other.num), self.den, self.var)
        # Henrici: with g = gcd(b, d), gcd(a d/g + c b/g, b d/g) = gcd(that, g)
        g = _pgcd(self.den, other.den)
        if len(g) == 1:
            num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
            return _reduced(num, _pmul(self.den, other.den), self.var)
        b, d = _pdivmod(self.den, g)[0], _pdivmod(other.den, g)[0]
        num = _padd(_pmul(self.num, d), _pmul(other.num, b))
        den = _pmul(self.den, d)
        if num:
            h = _pgcd(num, g)
            if len(h) > 1:
                num, den = _pdivmod(num, h)[0], _pdivmod(den, h)[0]
        return _reduced(num, den, self.var)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_pneg(self.num), self.den, self.var, _canonical=True)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except _Swap:
            return self.with_var(other.var) - other
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except _Swap:
            return self.with_var(other.var) * other
        except TypeError:
            return NotImplemented
        if not self.num or not other.num:
            return RationalFunction.constant(0, self.var)
        if other.is_constant():
            c = other.num[0]
            return RationalFunction(_pscale(self.num, c), self.den, self.var, _canonical=True)
        if self.is_constant():
            c = self.num[0]
            return RationalFunction(_pscale(other.num, c), other.den, self.var, _canonical=True)
        # Henrici: cancel cross gcds, the product is then already reduced
        a, b, c, d = self.num, self.den, other.num, other.den
        g1, g2 = _pgcd(a, d), _pgcd(c, b)
        if len(g1) > 1:
            a, d = _pdivmod(a, g1)[0], _pdivmod(d, g1)[0]
        if len(g2) > 1:
            c, b = _pdivmod(c, g2)[0], _pdivmod(b, g2)[0]
        return _reduced(_pmul(a, c), _pmul(b, d), self.var)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num, self.var)

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except _Swap:
            return self.with_var(other.var) / other
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.constant(other, self.var) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(_ppow(self.num, k), _ppow(self.den, k), self.var, _canonical=True)

    def derivative(self) -> "RationalFunction":
        return rf_derivative(self)

    def __call__(self, inner: "RationalFunction") -> "RationalFunction":
        return rf_compose(self, inner)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            if self.var != other.var and not (self.is_constant() and other.is_constant()):
                return False
            return self.num == other.num and self.den == other.den
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_value() == other

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.var, self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        from .render import render_rational_function

        return render_rational_function(self)


class _Swap(Exception):
    """Internal: constant on the left meets a function in another variable."""


def rf_derivative(f: RationalFunction) -> RationalFunction:
    """Quotient-rule derivative, canonicalized."""
    if f.is_constant():
        return RationalFunction.constant(0, f.var)
    if len(f.den) == 1:
        return RationalFunction(_pderiv(f.num), f.den, f.var, _canonical=True)
    num = _psub(_pmul(_pderiv(f.num), f.den), _pmul(f.num, _pderiv(f.den)))
    return RationalFunction(num, _pmul(f.den, f.den), f.var)


def rf_compose(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    """Return ``f(g)``, written in ``g``'s variable."""
    if f.is_constant():
        return f.with_var(g.var)
    if len(g.num) == 2 and not g.num[0] and g.num[1] == ONE and g.den == (ONE,):
        return f.with_var(g.var)
    num, den = _compose_parts(f.num, f.den, g.num, g.den)
    if den is None:
        raise PoleAtCompositionPoint(f"{g} is a pole of {f}")
    return RationalFunction(num, den, g.var, _canonical=True)


@lru_cache(maxsize=16384)
def _compose_parts(fnum, fden, gnum, gden):
    # keyed on coefficient tuples: compositions repeat heavily in cocycle checks
    dn, dd = len(fnum) - 1, len(fden) - 1
    num = _homogenize(fnum, gnum, gden)
    den = _homogenize(fden, gnum, gden)
    if not den:
        return None, None
    if dd > dn:
        num = _pmul(num, _ppow(gden, dd - dn))
    elif dn > dd:
        den = _pmul(den, _ppow(gden, dn - dd))
    out = RationalFunction(num, den)
    return out.num, out.den


def rf_equal(f: RationalFunction, g: RationalFunction) -> bool:
    if f.var != g.var:
        raise VariableMismatch(f"{f.var} vs {g.var}")
    return f.num == g.num and f.den == g.den
