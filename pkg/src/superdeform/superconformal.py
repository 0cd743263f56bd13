"""Superconformality of supermorphisms.

Writing a morphism as ``(lambda + f theta, zeta theta + psi)`` with
``lambda, f, zeta, psi`` functions of ``(x, xi)``, it is superconformal iff

    d(lambda)/dx + (d(psi)/dx) psi - zeta^2 = 0    and    f - zeta psi = 0.

The ordering ``psi' psi`` is the one for which the order-2 component reads
``d(lambda12)/dx = 2 zeta0 zeta12 - psi1' psi2 + psi1 psi2'``; it expresses
preservation of the distribution spanned by ``d/dtheta - theta d/dx`` and
is closed under composition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grassmann import EVEN, ODD, Superfield, Supermorphism, monomial_name
from .scalar import RationalFunction

ZETA_SQUARED = "zeta-squared"
F_EQUALS_ZETA_PSI = "f-equals-zeta-psi"
ORDER2_G12 = "order2-g12"


@dataclass(frozen=True)
class SuperconformalResidual:
    tag: str
    monomial: tuple
    residual: RationalFunction
    location: str = ""

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    def describe(self, n: int) -> str:
        return monomial_name(self.monomial, n)


def split_theta(field: Superfield):
    """Return ``(a, b)`` with ``field = a + b*theta``; both are xi-only superfields."""
    n = field.n
    without, with_theta = {}, {}
    for m, c in field.coeffs.items():
        if m and m[-1] == n:
            with_theta[m[:-1]] = c
        else:
            without[m] = c
    pa = field.parity
    return (
        Superfield(field.chart, field.var, n, without, pa),
        Superfield(field.chart, field.var, n, with_theta, 1 - pa),
    )


def components(m: Supermorphism):
    """``(lambda, f, zeta, psi)`` as xi-only superfields."""
    lam, f = split_theta(m.even)
    psi, zeta = split_theta(m.odd)
    return lam, f, zeta, psi


def _tag_for(mono, n, default):
    if default == ZETA_SQUARED and n == 2 and mono == (0, 1):
        return ORDER2_G12
    return default


def check_superconformal(m: Supermorphism, location: str = "") -> list[SuperconformalResidual]:
    """Residuals of both relations, one entry per xi-monomial.

    Every monomial of the xi-algebra appearing in either relation's degree
    range is reported, so passing entries are listed too.
    """
    n = m.n
    lam, f, zeta, psi = components(m)
    rel_even = lam.derivative() + psi.derivative() * psi - zeta * zeta
    rel_odd = f - zeta * psi
    out = []
    for field, tag, parity in ((rel_even, ZETA_SQUARED, EVEN), (rel_odd, F_EQUALS_ZETA_PSI, ODD)):
        for mono in _xi_monomials(n, parity):
            out.append(
                SuperconformalResidual(_tag_for(mono, n, tag), mono, field[mono], location)
            )
    return out


def _xi_monomials(n, parity):
    from itertools import combinations

    for k in range(parity, n + 1, 2):
        yield from combinations(range(n), k)


def is_superconformal(m: Supermorphism) -> bool:
    return all(r.passed for r in check_superconformal(m))


def order2_relations(zeta0, lam0, lam12, zeta12, psi1, psi2, f1, f2):
    """Hand-coded order-2 relations; returns the three residuals
    ``(zeta-squared, f-equals-zeta-psi (pair), order2-g12)``."""
    r_body = lam0.derivative() - zeta0 * zeta0
    r_f = (f1 - zeta0 * psi1, f2 - zeta0 * psi2)
    r_12 = lam12.derivative() - (
        2 * zeta0 * zeta12 - psi1.derivative() * psi2 + psi1 * psi2.derivative()
    )
    return r_body, r_f, r_12
