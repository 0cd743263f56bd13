"""Odd second-order deformations: generators, Kodaira-Spencer and obstruction
extraction, and the splitting solver/verifier.

Normalizations
--------------
``extract_ks`` reports the raw xi-derivatives ``(f^a, psi^a)`` and, as the
class representative, ``2 psi^a``.  With this normalization the Construction
atlas built from ``Theta`` has KS components ``(Theta, Theta)`` and the
p-part of the obstruction (the ``psi``-data) is one half of the KS class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import cech
from .atlas import (
    Atlas,
    bracket_psi,
    check_atlas_superconformal,
    check_cocycle,
    coboundary1,
    cochain_from_atlas,
    is_p1_model_pair,
    loc,
    pull,
)
from .errors import (
    BracketObstruction,
    NotInModelRing,
    NotSuperconformal,
    ObstructionNonzero,
    SpinRelationViolated,
    UnsupportedCover,
    UnsupportedOrder,
)
from .grassmann import (
    Superfield,
    Supermorphism,
    make_morphism,
    morphism_compose,
    morphism_difference,
    morphism_invert,
    split_morphism,
)
from .report import Entry, Report, superfield_entries
from .scalar import RationalFunction, rf_derivative

HALF = Fraction(1, 2)

GENUS_ONE_WARNING = (
    "genus 1: the vanishing-obstruction => split argument needs g != 1 "
    "(the half-tangent bundle may be trivial); only exactly verified statements are reported"
)


def _require_order2(a: Atlas, what: str):
    if a.n != 2:
        raise UnsupportedOrder(f"{what} is implemented for order n = 2 only (atlas has n = {a.n})")


def _require_superconformal(a: Atlas):
    rep = check_atlas_superconformal(a)
    if not rep.passed:
        bad = rep.failures()[0]
        raise NotSuperconformal(f"{bad.tag} fails on {bad.location}: residual {bad.rendered()}")


def _primary_pairs(a: Atlas, given: dict):
    """One direction per unordered pair: the given one if any, else forward."""
    out = []
    for u, v in a.cover.forward_pairs():
        out.append((v, u) if (v, u) in given and (u, v) not in given else (u, v))
    return out


def _assemble(a: Atlas, primary: dict) -> Atlas:
    transitions = dict(primary)
    for (u, v), m in primary.items():
        transitions[(v, u)] = morphism_invert(m)
    return a.replace(transitions)


# ---------------------------------------------------------------------------
# Generators


def build_construction(base: Atlas, theta: dict) -> Atlas:
    """Order-2 atlas with ``rho+ = f + 1/2 zeta Theta (xi1 + xi2) theta`` and
    ``rho- = zeta theta + 1/2 Theta (xi1 + xi2)``.

    ``theta`` maps ordered pairs to the V-frame coefficient of a weight-1
    cocycle in the source coordinate; pairs absent in both directions get 0.
    """
    primary = {}
    for u, v in _primary_pairs(base, theta):
        m = base[(u, v)]
        f, zeta = m.body, m.zeta
        if zeta * zeta != rf_derivative(f):
            raise SpinRelationViolated(f"zeta^2 != df/dx on ({u}, {v})")
        t = theta.get((u, v), RationalFunction.constant(0, m.source_var))
        t = t.with_var(m.source_var) if t.is_constant() else t
        half = t * HALF
        primary[(u, v)] = make_morphism(
            u, v, m.source_var, m.target_var, 2,
            {(): f, (0, 2): zeta * half, (1, 2): zeta * half},
            {(2,): zeta, (0,): half, (1,): half},
        )
    shell = Atlas(base.cover, 2, {}, genus=base.genus, name="construction", meta=dict(base.meta))
    return _assemble(shell, primary)


def twist_by_g12(a: Atlas, g12: dict, check: bool = True) -> Atlas:
    """Add ``g xi12`` to rho+ and ``1/2 zeta^-1 g' xi12 theta`` to rho-.

    Raises BracketObstruction unless ``d g12`` equals the psi-bracket.
    """
    _require_order2(a, "twist_by_g12")
    primary = {}
    for u, v in _primary_pairs(a, g12):
        m = a[(u, v)]
        g = g12.get((u, v), RationalFunction.constant(0, m.source_var))
        if g.is_zero():
            primary[(u, v)] = m
            continue
        g = g.with_var(m.source_var) if g.is_constant() else g
        even = dict(m.even.coeffs)
        odd = dict(m.odd.coeffs)
        even[(0, 1)] = m.even[(0, 1)] + g
        odd[(0, 1, 2)] = m.odd[(0, 1, 2)] + rf_derivative(g) * m.zeta.inverse() * HALF
        primary[(u, v)] = make_morphism(u, v, m.source_var, m.target_var, 2, even, odd)
    out = _assemble(a, primary)
    out.name = "twisted"
    if check:
        dg = coboundary1(out, cochain_from_atlas(out, lambda m: m.g(1, 2)), 2)
        br = bracket_psi(out)
        for t in out.cover.ordered_triples():
            if dg[t] != br[t]:
                raise BracketObstruction(
                    f"d g12 - [psi1, psi2] = {dg[t] - br[t]} on {loc(*t)}"
                )
    return out


# ---------------------------------------------------------------------------
# Extraction


@dataclass
class KSClass:
    """Kodaira-Spencer data: per component ``a`` and ordered pair, the raw
    xi_a-derivatives ``f^a`` (of rho+, theta-coefficient) and ``psi^a``."""

    f: dict  # a -> {pair: RationalFunction}
    psi: dict
    cocycle_report: Report

    @property
    def components(self) -> dict:
        """Class representatives ``2 psi^a`` (see module docstring)."""
        return {a: {p: c * 2 for p, c in comp.items()} for a, comp in self.psi.items()}

    def is_zero(self) -> bool:
        return all(c.is_zero() for comp in self.psi.values() for c in comp.values())

    def scaled(self, c) -> "KSClass":
        return KSClass(
            {a: {p: v * c for p, v in comp.items()} for a, comp in self.f.items()},
            {a: {p: v * c for p, v in comp.items()} for a, comp in self.psi.items()},
            self.cocycle_report,
        )


def extract_ks(a: Atlas) -> KSClass:
    _require_superconformal(a)
    f = {i: cochain_from_atlas(a, lambda m: m.f(i)) for i in range(1, a.n + 1)}
    psi = {i: cochain_from_atlas(a, lambda m: m.psi(i)) for i in range(1, a.n + 1)}
    rep = Report("ks-cocycle")
    for i in range(1, a.n + 1):
        for t, r in coboundary1(a, psi[i], 1).items():
            rep.entries.append(Entry(f"psi{i}-cocycle", loc(*t), r))
        for p in a.cover.ordered_pairs():
            rep.entries.append(
                Entry(f"f{i}-equals-zeta-psi{i}", loc(*p), f[i][p] - a[p].zeta * psi[i][p])
            )
    return KSClass(f, psi, rep)


@dataclass
class ObstructionCocycle:
    """``omega_UV = (f1 xi1 theta + f2 xi2 theta + g12 xi12) d/dy``."""

    p_part: dict  # a -> {pair: f^a}
    iota_part: dict  # pair -> g12
    omega: dict  # pair -> even Superfield
    p_trivial: bool | None = None
    notes: list = field(default_factory=list)

    def is_zero(self) -> bool:
        return all(w.is_zero() for w in self.omega.values())

    @property
    def iota_class(self) -> dict | None:
        """The g12 cochain as a class, only once the p-part is trivialized."""
        return self.iota_part if self.p_trivial else None


def extract_obstruction(a: Atlas) -> ObstructionCocycle:
    _require_order2(a, "extract_obstruction")
    _require_superconformal(a)
    p_part = {i: cochain_from_atlas(a, lambda m: m.f(i)) for i in (1, 2)}
    iota = cochain_from_atlas(a, lambda m: m.g(1, 2))
    omega = {}
    for p in a.cover.ordered_pairs():
        m = a[p]
        omega[p] = Superfield(
            m.source, m.source_var, 2,
            {(0, 2): p_part[1][p], (1, 2): p_part[2][p], (0, 1): iota[p]},
        )
    notes = [
        "p-part listed as f^a = zeta psi^a; the class normalization p_*omega = 1/2 KS "
        "holds with KS^a represented by 2 psi^a"
    ]
    p_trivial = None
    if all(c.is_zero() for comp in p_part.values() for c in comp.values()):
        p_trivial = True
    elif _model_pair(a) is not None:
        try:
            p_trivial = all(
                _solve_half(a, i, 1).trivial for i in (1, 2)
            )
        except NotInModelRing:  # non-Laurent data: undecided
            p_trivial = None
    if not p_trivial:
        notes.append("iota-part is exposed as a class only after the p-part is trivialized")
    return ObstructionCocycle(p_part, iota, omega, p_trivial, notes)


# ---------------------------------------------------------------------------
# Splitting


@dataclass(frozen=True)
class ChartSplitting:
    lambda1: RationalFunction
    lambda2: RationalFunction
    lambda12: RationalFunction
    phi1: RationalFunction
    phi2: RationalFunction
    phi12: RationalFunction

    def fields(self) -> dict:
        return {
            "lambda1": self.lambda1, "lambda2": self.lambda2, "lambda12": self.lambda12,
            "phi1": self.phi1, "phi2": self.phi2, "phi12": self.phi12,
        }

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.fields().values())


@dataclass
class SplittingMap:
    charts: dict  # chart -> ChartSplitting
    notes: list = field(default_factory=list)

    def morphism(self, a: Atlas, chart: str) -> Supermorphism:
        """``Lambda_U = (x + lambda^i xi_i theta + lambda12 xi12,
        theta + phi^i xi_i + phi12 xi12 theta)``."""
        var = a.cover.var(chart)
        c = self.charts[chart]
        return make_morphism(
            chart, chart, var, var, 2,
            {(): RationalFunction.variable(var), (0, 2): c.lambda1, (1, 2): c.lambda2,
             (0, 1): c.lambda12},
            {(2,): 1, (0,): c.phi1, (1,): c.phi2, (0, 1, 2): c.phi12},
        )

    def is_identity(self) -> bool:
        return all(c.is_zero() for c in self.charts.values())


def identity_splitting(a: Atlas) -> SplittingMap:
    charts = {}
    for name, var in a.cover.charts:
        z = RationalFunction.constant(0, var)
        charts[name] = ChartSplitting(z, z, z, z, z, z)
    return SplittingMap(charts)


def _model_pair(a: Atlas):
    if not a.is_two_chart():
        return None
    (u, v), = a.cover.forward_pairs()
    return (u, v) if is_p1_model_pair(a[(u, v)]) else None


def _classify(value_v_frame: RationalFunction, twist: int) -> cech.CechClassification:
    """Solve ``d sigma = value`` (value in V's frame) in the O(twist) model."""
    bundle = cech.LineBundleModel(twist)
    z_u = bundle.transport_to_u() * value_v_frame.with_var("x")
    return cech.solve_coboundary(cech.CechCochain(1, bundle, {(cech.U, cech.V): z_u}))


def _solve_half(a: Atlas, i: int, twist: int) -> cech.CechClassification:
    u, v = _model_pair(a)
    return _classify(-a[(u, v)].psi(i), twist)


def solve_splitting(a: Atlas, half_twist: int = 1, full_twist: int = 2) -> SplittingMap:
    """Solve the splitting conditions and return ``Lambda``.

    ``psi^i = zeta phi^i_U - phi^i_V`` is solved in the ``half_twist`` model,
    ``lambda^i = phi^i``, then ``g12 + lambda1_V psi2 - lambda2_V psi1 =
    f' lambda12_U - lambda12_V`` in the ``full_twist`` model, and finally
    ``phi12 = 1/2 d(lambda12)/dx``.  The bracket term vanishes under the
    genus hypothesis and is kept so the verifier sees exact data.  Any
    nontrivial solve raises ObstructionNonzero carrying the classification.
    """
    _require_order2(a, "the splitting solver")
    _require_superconformal(a)
    notes = []
    if a.genus == 1:
        notes.append(GENUS_ONE_WARNING)
    pairs = a.cover.ordered_pairs()
    data_zero = all(a[p].is_split() for p in pairs)
    if data_zero and (half_twist, full_twist) == (1, 2):
        s = identity_splitting(a)
        s.notes = notes + ["split atlas: identity splitting map"]
        return s
    pair = _model_pair(a)
    if pair is None:
        raise UnsupportedCover(
            "coboundary solves are available only on the two-chart genus-0 model cover "
            "(f = -1/x, zeta = 1/x)"
        )
    u, v = pair
    m = a[(u, v)]
    phi = {}
    for i in (1, 2):
        cls = _classify(-m.psi(i), half_twist)
        if not cls.trivial:
            raise ObstructionNonzero(
                f"psi{i} is not a coboundary in O({half_twist}): {cls.describe()}",
                witness=cls, component=f"psi{i}",
            )
        phi[i] = (cls.trivializer[cech.U], cls.trivializer[cech.V])
    lam1_v, lam2_v = phi[1][1], phi[2][1]
    g_total = m.g(1, 2) + pull(lam1_v, m) * m.psi(2) - pull(lam2_v, m) * m.psi(1)
    cls = _classify(-g_total, full_twist)
    if not cls.trivial:
        raise ObstructionNonzero(
            f"g12 is not a coboundary in O({full_twist}): {cls.describe()}",
            witness=cls, component="g12",
        )
    lam12 = (cls.trivializer[cech.U], cls.trivializer[cech.V])
    charts = {}
    for k, chart in enumerate((u, v)):
        var = a.cover.var(chart)
        l1, l2, l12 = (phi[1][k].with_var(var), phi[2][k].with_var(var), lam12[k].with_var(var))
        charts[chart] = ChartSplitting(l1, l2, l12, l1, l2, rf_derivative(l12) * HALF)
    if (half_twist, full_twist) != (1, 2):
        notes.append(
            f"solved in artificial models O({half_twist}), O({full_twist}); "
            "the map need not verify against the atlas"
        )
    return SplittingMap(charts, notes)


def verify_splitting(a: Atlas, s: SplittingMap) -> Report:
    """``Lambda_V o rho_UV == rho_hat_UV o Lambda_U`` on every ordered pair."""
    rep = Report("verify-splitting")
    for u, v in a.cover.ordered_pairs():
        m = a[(u, v)]
        hat = split_morphism(u, v, m.source_var, m.target_var, a.n, m.body, m.zeta)
        lhs = morphism_compose(s.morphism(a, v), m)
        rhs = morphism_compose(hat, s.morphism(a, u))
        de, do = morphism_difference(lhs, rhs)
        rep.entries += superfield_entries("splitting-even", loc(u, v), de)
        rep.entries += superfield_entries("splitting-odd", loc(u, v), do)
    rep.notes.extend(s.notes)
    return rep
