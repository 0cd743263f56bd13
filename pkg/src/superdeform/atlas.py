"""Covers, atlases of supermorphisms, and the cocycle / intersection checks.

Conventions
-----------
* All identities on a pair ``(U, V)`` or triple ``(U, V, W)`` are evaluated in
  the coordinate of the first chart; data from later charts is pulled back
  along body maps.
* A 1-cochain component ``c_UV`` is the coefficient of a section in the frame
  of the *target* chart ``V``.  A weight-``k`` section moves from chart ``A``'s
  frame to ``B``'s by multiplication with ``zeta_AB**k`` (``k = 1`` for the
  half-tangent sheaf, ``k = 2`` for the tangent sheaf since
  ``df/dx = zeta**2``).
* Coboundaries are the standard alternating sums::

      (d sigma)_UV  = sigma_V - t_UV sigma_U
      (d c)_UVW     = c_VW + t_VW c_UV - c_UW
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import ChartMismatch
from .grassmann import (
    Supermorphism,
    identity_morphism,
    morphism_compose,
    morphism_difference,
    morphism_invert,
    split_morphism,
)
from .report import Entry, Report, superfield_entries
from .scalar import RationalFunction, rf_compose, rf_derivative
from .superconformal import check_superconformal


@dataclass(frozen=True)
class Cover:
    """Charts (name -> coordinate), and the declared overlap nerve."""

    charts: tuple  # ((name, coordinate), ...)
    pairs: frozenset
    triples: frozenset

    def __post_init__(self):
        names = self.chart_names
        if len(set(names)) != len(names):
            raise ChartMismatch("duplicate chart names")
        for u, v in self.pairs:
            if u not in names or v not in names:
                raise ChartMismatch(f"pair ({u}, {v}) names an unknown chart")
            if (v, u) not in self.pairs:
                raise ChartMismatch(f"pair ({u}, {v}) declared without its reversal")
        for t in self.triples:
            if len(set(t)) != 3:
                raise ChartMismatch(f"degenerate triple {t}")
            u, v, w = t
            for p in ((u, v), (v, w), (u, w)):
                if p not in self.pairs:
                    raise ChartMismatch(f"triple {t} is missing its face {p}")

    @classmethod
    def build(cls, charts, pairs, triples=None):
        """Close ``pairs`` under reversal; by default declare every triple
        whose faces are all present."""
        charts = tuple(charts)
        pair_set = set()
        for u, v in pairs:
            if u != v:
                pair_set.update({(u, v), (v, u)})
        if triples is None:
            names = [c for c, _ in charts]
            triples = [
                t for t in permutations(names, 3)
                if (t[0], t[1]) in pair_set and (t[1], t[2]) in pair_set and (t[0], t[2]) in pair_set
            ]
        else:
            closed = set()
            for t in triples:
                closed.update(permutations(t, 3))
            triples = closed
        return cls(charts, frozenset(pair_set), frozenset(triples))

    @property
    def chart_names(self):
        return [c for c, _ in self.charts]

    def var(self, chart: str) -> str:
        return dict(self.charts)[chart]

    def ordered_pairs(self):
        order = {c: k for k, c in enumerate(self.chart_names)}
        return sorted(self.pairs, key=lambda p: (order[p[0]], order[p[1]]))

    def forward_pairs(self):
        order = {c: k for k, c in enumerate(self.chart_names)}
        return [p for p in self.ordered_pairs() if order[p[0]] < order[p[1]]]

    def ordered_triples(self):
        order = {c: k for k, c in enumerate(self.chart_names)}
        return sorted(self.triples, key=lambda t: tuple(order[c] for c in t))


@dataclass
class Atlas:
    cover: Cover
    n: int
    transitions: dict  # (U, V) -> Supermorphism
    genus: int | None = None
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for (u, v), m in self.transitions.items():
            if (m.source, m.target) != (u, v):
                raise ChartMismatch(f"transition stored under ({u}, {v}) maps {m.source}->{m.target}")
            if m.n != self.n:
                raise ChartMismatch(f"transition ({u}, {v}) has order {m.n}, atlas has {self.n}")
            if m.source_var != self.cover.var(u) or m.target_var != self.cover.var(v):
                raise ChartMismatch(f"transition ({u}, {v}) uses the wrong coordinates")

    @classmethod
    def from_forward(cls, cover: Cover, n: int, forward: dict, **kw) -> "Atlas":
        """Complete one-directional data with inverses (given entries are kept)."""
        transitions = dict(forward)
        for (u, v) in cover.ordered_pairs():
            if (u, v) in transitions:
                continue
            if (v, u) not in transitions:
                raise ChartMismatch(f"no transition data for ({u}, {v})")
            transitions[(u, v)] = morphism_invert(transitions[(v, u)])
        return cls(cover, n, transitions, **kw)

    def __getitem__(self, pair) -> Supermorphism:
        try:
            return self.transitions[tuple(pair)]
        except KeyError:
            raise ChartMismatch(f"no transition data for {tuple(pair)}") from None

    def identity(self, chart: str) -> Supermorphism:
        return identity_morphism(chart, self.cover.var(chart), self.n)

    def is_two_chart(self) -> bool:
        return len(self.cover.charts) == 2

    def replace(self, transitions: dict, **kw) -> "Atlas":
        params = dict(genus=self.genus, name=self.name, meta=dict(self.meta))
        params.update(kw)
        return Atlas(self.cover, self.n, transitions, **params)


def pull(c: RationalFunction, m: Supermorphism) -> RationalFunction:
    """Pull a function on ``m.target`` back to ``m.source`` along the body map."""
    return rf_compose(c.with_var(m.target_var), m.body)


def transport(m: Supermorphism, weight: int) -> RationalFunction:
    return m.zeta ** weight


def loc(*charts) -> str:
    return ",".join(charts)


# ---------------------------------------------------------------------------
# Genus-0 model covers


_P1_CHARTS = (("U", "x"), ("V", "y"), ("W", "z"))
# SL2 matrices from U's coordinate to each chart's coordinate.
_P1_FROM_U = {
    "U": ((1, 0), (0, 1)),
    "V": ((0, -1), (1, 0)),  # y = -1/x
    "W": ((0, -1), (1, -1)),  # z = -1/(x - 1)
}


def _inv(m):
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))


def _mul(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mobius_spin_data(matrix, var):
    """Body ``(a x + b)/(c x + d)`` and spin factor ``zeta = 1/(c x + d)``."""
    (a, b), (c, d) = matrix
    x = RationalFunction.variable(var)
    denom = x * c + d
    return (x * a + b) / denom, denom.inverse()


def p1_split_atlas(num_charts: int = 2, n: int = 2) -> Atlas:
    """Split atlas of the genus-0 model on the 2- or 3-chart Mobius cover.

    Zeta is the inverse automorphy factor of SL2 matrices, so it is
    multiplicative on triples and ``zeta**2 = df/dx`` exactly.
    """
    if num_charts not in (2, 3):
        raise ValueError("model covers have 2 or 3 charts")
    charts = _P1_CHARTS[:num_charts]
    cover = Cover.build(charts, [(u, v) for (u, _), (v, _) in combinations(charts, 2)])
    transitions = {}
    for u, v in cover.ordered_pairs():
        mat = _mul(_P1_FROM_U[v], _inv(_P1_FROM_U[u]))
        f, zeta = mobius_spin_data(mat, cover.var(u))
        transitions[(u, v)] = split_morphism(u, v, cover.var(u), cover.var(v), n, f, zeta)
    return Atlas(cover, n, transitions, genus=0, name=f"p1-split-{num_charts}")


def is_p1_model_pair(m: Supermorphism) -> bool:
    x = RationalFunction.variable(m.source_var)
    return m.body == -x.inverse() and m.zeta == x.inverse()


# ---------------------------------------------------------------------------
# Checks


def check_cocycle(a: Atlas) -> Report:
    """``rho_VU o rho_UV = id`` on pairs and ``rho_UW = rho_VW o rho_UV`` on triples."""
    rep = Report("cocycle")
    for (u, v), m in sorted(a.transitions.items()):
        if u == v:
            de, do = morphism_difference(m, a.identity(u))
            rep.entries += superfield_entries("self-identity-even", loc(u, u), de)
            rep.entries += superfield_entries("self-identity-odd", loc(u, u), do)
    for u, v in a.cover.ordered_pairs():
        comp = morphism_compose(a[(v, u)], a[(u, v)])
        de, do = morphism_difference(comp, a.identity(u))
        rep.entries += superfield_entries("pair-inverse-even", loc(u, v), de)
        rep.entries += superfield_entries("pair-inverse-odd", loc(u, v), do)
    for u, v, w in a.cover.ordered_triples():
        comp = morphism_compose(a[(v, w)], a[(u, v)])
        de, do = morphism_difference(a[(u, w)], comp)
        rep.entries += superfield_entries("triple-even", loc(u, v, w), de)
        rep.entries += superfield_entries("triple-odd", loc(u, v, w), do)
    return rep


def check_atlas_superconformal(a: Atlas) -> Report:
    rep = Report("superconformal")
    for u, v in a.cover.ordered_pairs():
        for r in check_superconformal(a[(u, v)]):
            mono = "*".join(f"xi{g + 1}" for g in r.monomial) or "1"
            rep.entries.append(Entry(r.tag, loc(u, v), r.residual, mono))
    return rep


def _index_pairs(n):
    return list(combinations(range(1, n + 1), 2))


def check_intersection_identities(a: Atlas) -> Report:
    """Pair identities on every ordered pair:

    * ``psi_UV = -zeta_UV psi_VU``
    * ``g_UV = -zeta_UV^2 g_VU``
    * ``zeta12_UV = -zeta_UV^2 zeta12_VU - zeta_UV' g_VU``
    * ``g_UV' = 2 zeta_UV zeta12_UV``

    The first two follow from superconformality and the cocycle condition.
    The last two need in addition the Wronskian identity
    ``psi1' psi2 = psi1 psi2'`` on the pair (automatic when ``psi1 = psi2``);
    ``fixtures/wronskian-counterexample.atlas`` violates them.
    """
    rep = Report("intersection-identities")
    for u, v in a.cover.ordered_pairs():
        m, back = a[(u, v)], a[(v, u)]
        zeta = m.zeta
        dzeta = rf_derivative(zeta)
        where = loc(u, v)
        for i in range(1, a.n + 1):
            rep.entries.append(
                Entry(f"psi{i}-antisymmetry", where, m.psi(i) + zeta * pull(back.psi(i), m))
            )
        for i, j in _index_pairs(a.n):
            s = f"{i}{j}"
            g, g_back = m.g(i, j), pull(back.g(i, j), m)
            z12, z12_back = m.zeta2(i, j), pull(back.zeta2(i, j), m)
            rep.entries.append(Entry(f"g{s}-antisymmetry", where, g + zeta * zeta * g_back))
            rep.entries.append(
                Entry(f"zeta{s}-intersection", where, z12 + zeta * zeta * z12_back + dzeta * g_back)
            )
            rep.entries.append(Entry(f"g{s}-derivative", where, rf_derivative(g) - 2 * zeta * z12))
    return rep


def coboundary0(a: Atlas, sigma: dict, weight: int) -> dict:
    """``(d sigma)_UV = sigma_V - zeta_UV^weight sigma_U`` (``sigma_V`` pulled back)."""
    return {
        (u, v): pull(sigma[v], a[(u, v)]) - transport(a[(u, v)], weight) * sigma[u]
        for u, v in a.cover.ordered_pairs()
    }


def coboundary1(a: Atlas, c: dict, weight: int) -> dict:
    """``(d c)_UVW = c_VW + zeta_VW^weight c_UV - c_UW`` in U's coordinate."""
    out = {}
    for u, v, w in a.cover.ordered_triples():
        m = a[(u, v)]
        out[(u, v, w)] = (
            pull(c[(v, w)], m) + pull(transport(a[(v, w)], weight), m) * c[(u, v)] - c[(u, w)]
        )
    return out


def cochain_from_atlas(a: Atlas, getter) -> dict:
    return {p: getter(a[p]) for p in a.cover.ordered_pairs()}


def bracket_psi(a: Atlas, i: int = 1, j: int = 2) -> dict:
    """``[psi_i, psi_j]_UVW = zeta_VW (psi_i_UV psi_j_VW - psi_j_UV psi_i_VW)``.

    Concatenation of two half-tangent 1-cochains, landing in the tangent
    sheaf in W's frame; written in U's coordinate.
    """
    out = {}
    for u, v, w in a.cover.ordered_triples():
        m = a[(u, v)]
        second = a[(v, w)]
        out[(u, v, w)] = pull(second.zeta, m) * (
            m.psi(i) * pull(second.psi(j), m) - m.psi(j) * pull(second.psi(i), m)
        )
    return out


def check_cochain_structure(a: Atlas) -> Report:
    """``f^i`` and ``psi^i`` are weight-1 cocycles and ``d g^ij = [psi^i, psi^j]``."""
    rep = Report("cochain-structure")
    for i in range(1, a.n + 1):
        dpsi = coboundary1(a, cochain_from_atlas(a, lambda m: m.psi(i)), 1)
        for t, r in dpsi.items():
            rep.entries.append(Entry(f"psi{i}-cocycle", loc(*t), r))
        for u, v, w in a.cover.ordered_triples():
            m, second = a[(u, v)], a[(v, w)]
            r = (
                a[(u, w)].f(i)
                - pull(rf_derivative(second.body), m) * m.f(i)
                - m.zeta * pull(second.f(i), m)
            )
            rep.entries.append(Entry(f"f{i}-cocycle", loc(u, v, w), r))
    for i, j in _index_pairs(a.n):
        dg = coboundary1(a, cochain_from_atlas(a, lambda m: m.g(i, j)), 2)
        br = bracket_psi(a, i, j)
        for t in a.cover.ordered_triples():
            rep.entries.append(Entry(f"delta-g{i}{j}-bracket", loc(*t), dg[t] - br[t]))
    return rep


def check_all(a: Atlas) -> Report:
    rep = Report("check")
    for part in (
        check_atlas_superconformal(a),
        check_cocycle(a),
        check_intersection_identities(a),
        check_cochain_structure(a),
    ):
        rep.extend(part)
    return rep
