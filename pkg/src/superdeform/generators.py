"""Seeded random data: rational functions, superconformal morphisms in solved
form, and Construction/twisted atlases on the genus-0 model covers."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .atlas import Atlas, coboundary0, p1_split_atlas
from .deform import build_construction, twist_by_g12
from .grassmann import Supermorphism, make_morphism
from .scalar import GaussianRational, RationalFunction


@dataclass(frozen=True)
class GeneratorConfig:
    max_power: int = 2
    min_power: int = -2
    coefficient_bound: int = 5
    gaussian: bool = True  # allow imaginary parts
    sparsity: float = 0.5  # chance that a given power is present


def random_scalar(rng: random.Random, cfg: GeneratorConfig = GeneratorConfig(), nonzero=False):
    while True:
        b = cfg.coefficient_bound
        re = rng.randint(-b, b)
        im = rng.randint(-1, 1) if cfg.gaussian and rng.random() < 0.2 else 0
        c = GaussianRational(re, im) / rng.randint(1, 3)
        if c != 0 or not nonzero:
            return c


def random_laurent(rng, var="x", cfg: GeneratorConfig = GeneratorConfig(), powers=None, nonzero=False):
    powers = powers if powers is not None else range(cfg.min_power, cfg.max_power + 1)
    while True:
        coeffs = {p: random_scalar(rng, cfg) for p in powers if rng.random() < cfg.sparsity}
        f = RationalFunction.laurent(coeffs, var)
        if not (nonzero and f.is_zero()):
            return f


def random_rational(rng, var="x", cfg: GeneratorConfig = GeneratorConfig(), nonzero=False):
    """Laurent part plus an optional simple pole away from 0."""
    f = random_laurent(rng, var, cfg)
    if rng.random() < 0.4:
        a = rng.choice([1, 2, -1, -3])
        f = f + random_scalar(rng, cfg, nonzero=True) / (RationalFunction.variable(var) - a)
    if nonzero and f.is_zero():
        return random_rational(rng, var, cfg, nonzero)
    return f


def _even_laurent(rng, var, cfg):
    """Laurent polynomial in even powers only, so its square has an
    antiderivative in the same ring."""
    return random_laurent(rng, var, cfg, powers=range(-4, 3, 2), nonzero=True)


def _antiderivative(f: RationalFunction) -> RationalFunction:
    coeffs = f.laurent_coefficients()
    if coeffs is None or coeffs.get(-1, 0) != 0:
        raise ValueError("no Laurent antiderivative")
    return RationalFunction.laurent({p + 1: c / (p + 1) for p, c in coeffs.items()}, f.var)


def _mobius(rng):
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c == 1 and c != 0:
            return a, b, c, d


@dataclass(frozen=True)
class SolvedMorphism:
    """Free data of an order-2 superconformal morphism; the relations fix
    ``f^i = zeta0 psi^i``, ``lambda0' = zeta0^2`` and ``zeta12``."""

    lam0: RationalFunction
    zeta0: RationalFunction
    psi1: RationalFunction
    psi2: RationalFunction
    lam12: RationalFunction

    @property
    def f1(self):
        return self.zeta0 * self.psi1

    @property
    def f2(self):
        return self.zeta0 * self.psi2

    @property
    def zeta12(self):
        d = lambda h: h.derivative()  # noqa: E731
        return (d(self.lam12) + d(self.psi1) * self.psi2 - self.psi1 * d(self.psi2)) / (self.zeta0 * 2)

    def coefficients(self) -> dict:
        return {
            "lam0": self.lam0, "zeta0": self.zeta0, "f1": self.f1, "f2": self.f2,
            "psi1": self.psi1, "psi2": self.psi2, "lam12": self.lam12, "zeta12": self.zeta12,
        }


def morphism_from_coefficients(c: dict, source="U", target="V", var="x", target_var="y") -> Supermorphism:
    return make_morphism(
        source, target, var, target_var, 2,
        {(): c["lam0"], (0, 2): c["f1"], (1, 2): c["f2"], (0, 1): c["lam12"]},
        {(2,): c["zeta0"], (0,): c["psi1"], (1,): c["psi2"], (0, 1, 2): c["zeta12"]},
    )


def random_solved_morphism(rng, cfg: GeneratorConfig = GeneratorConfig()) -> SolvedMorphism:
    x = RationalFunction.variable("x")
    if rng.random() < 0.5:
        a, b, c, d = _mobius(rng)
        lam0, zeta0 = (x * a + b) / (x * c + d), (x * c + d).inverse() * rng.choice([1, -1])
    else:
        zeta0 = _even_laurent(rng, "x", cfg)
        lam0 = _antiderivative(zeta0 * zeta0) + random_scalar(rng, cfg)
    return SolvedMorphism(
        lam0, zeta0, random_rational(rng, "x", cfg), random_rational(rng, "x", cfg),
        random_rational(rng, "x", cfg),
    )


def random_sections(rng, a: Atlas, cfg: GeneratorConfig = GeneratorConfig(), degree=2) -> dict:
    """A random polynomial section per chart (a 0-cochain)."""
    return {
        name: random_laurent(rng, var, cfg, powers=range(0, degree + 1))
        for name, var in a.cover.charts
    }


def random_pair_cochain(rng, a: Atlas, cfg: GeneratorConfig = GeneratorConfig()) -> dict:
    """Random forward-pair components (any such cochain is a cocycle on the
    two-chart cover)."""
    return {p: random_laurent(rng, a.cover.var(p[0]), cfg) for p in a.cover.forward_pairs()}


def random_model_atlas(rng, num_charts=2, cfg: GeneratorConfig = GeneratorConfig(), coboundary=False,
                       twist=True) -> tuple:
    """Construction atlas (then optionally twisted) on the 2- or 3-chart
    genus-0 cover.

    ``Theta`` and ``g12`` are coboundaries of random polynomial sections on
    three charts (the only way to get cocycles there) and whenever
    ``coboundary`` is set; otherwise random Laurent cochains on two charts.
    Returns ``(atlas, theta, g12)``.
    """
    base = p1_split_atlas(num_charts)
    if coboundary or num_charts == 3:
        theta = coboundary0(base, random_sections(rng, base, cfg), 1)
    else:
        theta = random_pair_cochain(rng, base, cfg)
    a = build_construction(base, theta)
    g12 = None
    if twist:
        if coboundary or num_charts == 3:
            g12 = coboundary0(a, random_sections(rng, a, cfg, degree=3), 2)
        else:
            g12 = random_pair_cochain(rng, a, cfg)
        a = twist_by_g12(a, g12)
    return a, theta, g12
