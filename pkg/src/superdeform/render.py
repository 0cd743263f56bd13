"""Canonical text rendering of scalars, in the expression grammar of
:mod:`superdeform.parser` (so every rendering parses back to an equal value)."""

from __future__ import annotations

from numbers import Rational

from .scalar import GaussianRational, RationalFunction, render_gaussian


def _power(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{k}"


def render_poly(coeffs, var: str) -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c.is_zero():
            continue
        negative = c.is_real() and c.re < 0
        mag = -c if negative else c
        mono = _power(var, k)
        if not mono:
            body = render_gaussian(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{render_gaussian(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


def _n_terms(coeffs) -> int:
    return sum(1 for c in coeffs if not c.is_zero())


def render_rational_function(f: RationalFunction) -> str:
    num = render_poly(f.num, f.var)
    if len(f.den) == 1:
        return num
    den = render_poly(f.den, f.var)
    if _n_terms(f.num) > 1:
        num = f"({num})"
    if _n_terms(f.den) > 1 or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"


def render_scalar(value) -> str:
    if isinstance(value, RationalFunction):
        return render_rational_function(value)
    if isinstance(value, GaussianRational):
        return render_gaussian(value)
    if isinstance(value, Rational):
        return render_gaussian(GaussianRational(value))
    return str(value)
