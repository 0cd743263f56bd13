"""Cech cochains of O(k) on the two-chart cover of the projective line.

Charts are ``U`` (coordinate ``x``) and ``V`` (coordinate ``y = -1/x``).  A
1-cochain is stored by its coefficient in U's frame, a Laurent polynomial in
``x``.  A section ``s_V`` on V reaches U's frame as ``x**k * s_V(-1/x)``
(the inverse of the weight-``k`` transport ``zeta_UV**k = x**-k``), so::

    (d sigma)_UV = x**k sigma_V(-1/x) - sigma_U(x)

Sections on U absorb non-negative powers of ``x``; transported V-sections
absorb powers ``<= k``.  For ``k <= -2`` the gap ``x**-1 .. x**(k+1)`` spans
H^1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegreeOverflow, NotACocycle, NotInModelRing
from .scalar import GaussianRational, RationalFunction, rf_compose

U, V = "U", "V"
COORDS = {U: "x", V: "y"}


@dataclass(frozen=True)
class LineBundleModel:
    twist: int

    def transport_to_u(self) -> RationalFunction:
        """Factor taking V-frame coefficients to U's frame (``x**k``)."""
        return RationalFunction.monomial(1, self.twist, "x")

    def chart_map(self) -> RationalFunction:
        return -RationalFunction.variable("x").inverse()

    def gap_powers(self) -> list:
        """Powers of ``x`` spanning H^1, ordered ``-1, -2, ..., k+1``."""
        return list(range(-1, self.twist, -1))


@dataclass(frozen=True)
class CechCochain:
    degree: int
    bundle: LineBundleModel
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.degree not in (0, 1, 2):
            raise DegreeOverflow(f"degree {self.degree} cochains do not exist on this cover")
        for key, value in self.components.items():
            if self.degree == 0:
                expected = COORDS.get(key)
                if expected is None:
                    raise NotACocycle(f"unknown chart {key!r} on the two-chart model")
                if value.var != expected and not value.is_constant():
                    raise NotInModelRing(f"section on {key} must be a function of {expected}")
                if _laurent(value, allow_negative=False) is None:
                    raise NotInModelRing(f"section on {key} must be a polynomial, got {value}")
            elif self.degree == 1:
                if key != (U, V):
                    raise NotACocycle(
                        f"component {key} is outside the two-chart model cover; "
                        "only (U, V) is solvable"
                    )
                if _laurent(value) is None:
                    raise NotInModelRing(f"overlap component must be Laurent in x, got {value}")

    def __getitem__(self, key):
        default_var = COORDS.get(key, "x") if self.degree == 0 else "x"
        return self.components.get(key, RationalFunction.constant(0, default_var))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.components.values())


def _laurent(f: RationalFunction, allow_negative: bool = True):
    coeffs = f.laurent_coefficients()
    if coeffs is None:
        return None
    if not allow_negative and any(p < 0 for p in coeffs):
        return None
    return coeffs


def zero_cochain(bundle: LineBundleModel, sigma_u, sigma_v) -> CechCochain:
    return CechCochain(
        0, bundle, {U: sigma_u.with_var("x"), V: sigma_v.with_var("y")}
    )


def coboundary(c: CechCochain) -> CechCochain:
    """Cech differential; the two-chart nerve has no triples, so degree-1
    cochains map to the zero 2-cochain."""
    if c.degree >= 2:
        raise DegreeOverflow("no 3-cochains on this cover")
    if c.degree == 1:
        return CechCochain(2, c.bundle, {})
    pulled = rf_compose(c[V].with_var("y"), c.bundle.chart_map())
    return CechCochain(1, c.bundle, {(U, V): c.bundle.transport_to_u() * pulled - c[U].with_var("x")})


@dataclass(frozen=True)
class CechClassification:
    verdict: str  # "trivial" | "nontrivial"
    bundle: LineBundleModel
    trivializer: CechCochain  # for the input minus its H^1 residual
    h1_coordinates: tuple  # against bundle.gap_powers()
    residual: RationalFunction

    @property
    def trivial(self) -> bool:
        return self.verdict == "trivial"

    def describe(self) -> str:
        if self.trivial:
            return f"trivial in O({self.bundle.twist})"
        return f"nontrivial in H^1(O({self.bundle.twist})): witness {self.residual}"


def solve_coboundary(z: CechCochain, bundle: LineBundleModel | None = None) -> CechClassification:
    """Split ``z`` into ``d sigma`` plus a residual in the H^1 gap basis.

    Deterministic: U absorbs powers ``>= 0``, V absorbs negative powers
    ``<= k``, the rest is the residual.
    """
    bundle = bundle or z.bundle
    if z.degree != 1:
        raise DegreeOverflow("solve_coboundary takes a 1-cochain")
    k = bundle.twist
    coeffs = _laurent(z[(U, V)])
    sigma_u, sigma_v, residual = {}, {}, {}
    for p, c in coeffs.items():
        if p >= 0:
            sigma_u[p] = -c
        elif p <= k:
            # x**k * (y**j)(-1/x) = (-1)**j x**(k-j)
            j = k - p
            sigma_v[j] = c if j % 2 == 0 else -c
        else:
            residual[p] = c
    trivializer = CechCochain(
        0,
        bundle,
        {U: RationalFunction.laurent(sigma_u, "x"), V: RationalFunction.laurent(sigma_v, "y")},
    )
    coords = tuple(residual.get(p, GaussianRational(0)) for p in bundle.gap_powers())
    res = RationalFunction.laurent(residual, "x")
    return CechClassification(
        "trivial" if res.is_zero() else "nontrivial", bundle, trivializer, coords, res
    )


def h1_dimension(k: int) -> int:
    return max(0, -k - 1)


def count_nontrivial_classes(k: int, window: int = 12) -> int:
    """Rank of the H^1 coordinates of ``x**p`` for ``|p| <= window``, as
    produced by the solver."""
    from .linalg import rank

    bundle = LineBundleModel(k)
    rows = []
    for p in range(-window, window + 1):
        z = CechCochain(1, bundle, {(U, V): RationalFunction.monomial(1, p, "x")})
        cls = solve_coboundary(z)
        if not cls.trivial:
            rows.append(list(cls.h1_coordinates))
    return rank(rows)
