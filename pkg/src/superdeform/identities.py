"""Machine-checked proof identities, organized in named suites.

Each suite is a list of items ``(name, expression, rewrite system)``; an item
passes when the expression reduces to the zero polynomial.  Conventions:

* Pair data ``zeta, psi^i, g, zeta12`` of ``(U, V)`` are functions of ``x``;
  the reverse data ``Z = zeta_VU, Psi^i, G, Z12`` are functions of ``y`` and
  ``d/dx = zeta^2 d/dy`` on them.  ``zinv`` stands for ``zeta_VU`` pulled
  back, with the rule ``zeta * zinv -> 1``.
* The psi-coefficients are ordinary (even) functions: the odd parameters
  have been factored out.
* Cech coboundaries follow :mod:`superdeform.atlas`:
  ``(d c)_UVW = c_VW + t_VW c_UV - c_UW``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .diffpoly import (
    DiffPolynomial,
    DiffSymbol,
    RewriteSystem,
    Rule,
    collect,
    dp_derive,
    dp_reduce,
    dp_substitute,
)
from .errors import UnknownSuite
from .report import Entry, Report

HALF = Fraction(1, 2)
COMMUTATION = "commutation"
WRONSKIAN = "wronskian"
HYPOTHESES = {
    WRONSKIAN: "the Wronskian identity Psi1_y Psi2 = Psi1 Psi2_y",
    COMMUTATION: "the zeta-strata of the Wronskian identity, with zeta powers taken as independent",
}


def _x(name: str) -> DiffPolynomial:
    return DiffPolynomial.symbol(name)


def _y(name: str) -> DiffPolynomial:
    return DiffPolynomial.symbol(name, chart="y")


def _s(name: str, order: int = 0, chart: str = "x") -> DiffSymbol:
    return DiffSymbol(name, order, chart=chart)


@dataclass
class SuiteItem:
    name: str
    expression: DiffPolynomial
    rules: RewriteSystem
    strata: tuple = ()  # symbols to collect the normal form by

    def normal_form(self, drop_groups=()) -> DiffPolynomial:
        return dp_reduce(self.expression, self.rules.without(*drop_groups))


@dataclass
class Suite:
    name: str
    items: list = field(default_factory=list)


ZETA = _x("zeta")
ZETA_SYM = _s("zeta")
CHAIN = {"y": ZETA * ZETA}


def d(p: DiffPolynomial) -> DiffPolynomial:
    return dp_derive(p, CHAIN)


def _inverse_rules():
    return [Rule.make(ZETA * _x("zinv"), 1, label="zeta*zeta_VU")]


# ---------------------------------------------------------------------------


def _pair_symbols():
    g, G = _x("g"), _y("G")
    psi = {i: _x(f"psi{i}") for i in (1, 2)}
    Psi = {i: _y(f"Psi{i}") for i in (1, 2)}
    return g, G, psi, Psi


def _antisymmetry_rules():
    g, G, psi, Psi = _pair_symbols()
    base = [Rule.make(g, -ZETA * ZETA * G, label="g-antisymmetry")]
    base += [Rule.make(psi[i], -ZETA * Psi[i], label=f"psi{i}-antisymmetry") for i in (1, 2)]
    return base + [r.prolong(CHAIN) for r in base]


_PAIR_WEIGHTS = {"g": 40, "psi1": 20, "psi2": 20, "zeta12": 60, "G": 10,
                 "Psi1": 3, "Psi2": 3, "Z12": 2, "zinv": 1, "f1": 50, "f2": 50,
                 "F1": 30, "F2": 30, "Fy": 30,
                 DiffSymbol("Psi1", 1, chart="y"): 5, DiffSymbol("Psi2", 1, chart="y"): 3}


def wronskian_rule() -> Rule:
    """``Psi1_y Psi2 -> Psi1 Psi2_y``: the Wronskian identity on (V, U),
    used as a hypothesis (it is not implied by superconformality alone)."""
    return Rule.make(
        DiffPolynomial.symbol(DiffSymbol("Psi1", 1, chart="y")) * DiffPolynomial.symbol("Psi2", chart="y"),
        DiffPolynomial.symbol("Psi1", chart="y") * DiffPolynomial.symbol(DiffSymbol("Psi2", 1, chart="y")),
        WRONSKIAN,
        "wronskian",
    )


def lemma_intersections() -> Suite:
    g, G, psi, Psi = _pair_symbols()
    zeta12, Z12, zinv = _x("zeta12"), _y("Z12"), _x("zinv")
    f = {i: _x(f"f{i}") for i in (1, 2)}
    F = {i: _y(f"F{i}") for i in (1, 2)}
    Fy = _y("Fy")  # d f_VU / dy
    zp = d(ZETA)

    sc_uv = [Rule.make(f[i], ZETA * psi[i], label=f"f{i}=zeta*psi{i}") for i in (1, 2)]
    sc_vu = [Rule.make(F[i], zinv * Psi[i], label=f"F{i}=Z*Psi{i}") for i in (1, 2)]
    sc_vu.append(Rule.make(Fy, zinv * zinv, label="F'=Z^2"))
    order2_vu = Rule.make(
        _y_d("G"),
        2 * zinv * Z12 - _y_d("Psi1") * Psi[2] + Psi[1] * _y_d("Psi2"),
        label="order2 on (V, U)",
    )
    anti = _antisymmetry_rules()
    w = dict(_PAIR_WEIGHTS)

    items = []
    # even part of rho_VU o rho_UV = id on xi_i theta and xi12
    items.append(SuiteItem(
        "psi-antisymmetry",
        ZETA * ZETA * (Fy * f[1] + F[1] * ZETA) - ZETA * (psi[1] + ZETA * Psi[1]),
        RewriteSystem(sc_uv + sc_vu + _inverse_rules(), w),
    ))
    items.append(SuiteItem(
        "g-antisymmetry",
        ZETA * ZETA * (Fy * g + G + F[1] * psi[2] - F[2] * psi[1]) - (g + ZETA * ZETA * G),
        RewriteSystem(sc_vu + anti[1:3] + _inverse_rules(), w),
    ))
    e1 = d(g) + d(psi[1]) * psi[2] - psi[1] * d(psi[2])
    e2 = (
        -2 * ZETA * zp * G - ZETA ** 4 * _y_d("G")
        + ZETA * zp * Psi[1] * Psi[2] + ZETA ** 4 * _y_d("Psi1") * Psi[2]
        - ZETA * zp * Psi[1] * Psi[2] - ZETA ** 4 * Psi[1] * _y_d("Psi2")
    )
    e3 = -2 * ZETA * zp * G - ZETA ** 4 * (
        _y_d("G") - _y_d("Psi1") * Psi[2] + Psi[1] * _y_d("Psi2")
    )
    e4 = -2 * ZETA ** 3 * Z12 - 2 * ZETA * zp * G
    items.append(SuiteItem("chain step 1", e1 - e2, RewriteSystem(anti, w)))
    items.append(SuiteItem("chain step 2", e2 - e3, RewriteSystem([], w)))
    items.append(SuiteItem(
        "chain step 3", e3 - e4,
        RewriteSystem([order2_vu, wronskian_rule()] + _inverse_rules(), w),
    ))
    order2_uv = Rule.make(
        ZETA * zeta12,
        HALF * (d(g) + d(psi[1]) * psi[2] - psi[1] * d(psi[2])),
        label="order2 on (U, V)",
    )
    items.append(SuiteItem(
        "zeta12-intersection",
        2 * ZETA * (zeta12 + ZETA * ZETA * Z12 + zp * G),
        RewriteSystem([order2_uv] + anti + [order2_vu, wronskian_rule()] + _inverse_rules(), w),
    ))
    return Suite("lemma-intersections", items)


def _y_d(name: str, order: int = 1) -> DiffPolynomial:
    return DiffPolynomial.symbol(_s(name, order, "y"))


# ---------------------------------------------------------------------------


def wronskian_vu() -> DiffPolynomial:
    return _y_d("Psi1") * _y("Psi2") - _y("Psi1") * _y_d("Psi2")


def corollary_zeta12() -> Suite:
    g, G, psi, Psi = _pair_symbols()
    zeta12, Z12, zinv = _x("zeta12"), _y("Z12"), _x("zinv")
    f = {i: _x(f"f{i}") for i in (1, 2)}
    zp = d(ZETA)
    w = dict(_PAIR_WEIGHTS)
    w.update({"Zy": 30})
    anti = _antisymmetry_rules()
    sc_uv = [Rule.make(f[i], ZETA * psi[i]) for i in (1, 2)]
    z_y = Rule.make(_y("Zy"), -zp * zinv ** 4, label="dZ/dy")
    # xi12 theta coefficient of rho_VU o rho_UV (must vanish)
    direct = (
        zinv * zeta12
        + _y("Zy") * (g * ZETA - f[1] * psi[2] + f[2] * psi[1])
        + _y_d("Psi1") * f[2] - _y_d("Psi2") * f[1]
        + Z12 * ZETA
    )
    relation_a = -ZETA * ZETA * Z12 - zp * G
    relation_b = relation_a + ZETA ** 3 * wronskian_vu()
    expand = RewriteSystem(sc_uv + anti + [z_y] + _inverse_rules(), w)
    wr = wronskian_rule()
    order2_vu = Rule.make(
        _y_d("G"), 2 * zinv * Z12 - _y_d("Psi1") * Psi[2] + Psi[1] * _y_d("Psi2")
    )
    order2_uv = Rule.make(
        ZETA * zeta12, HALF * (d(g) + d(psi[1]) * psi[2] - psi[1] * d(psi[2]))
    )
    wu = d(psi[1]) * psi[2] - psi[1] * d(psi[2])
    items = [
        SuiteItem("direct expansion", ZETA * direct - (zeta12 - relation_b), expand),
        SuiteItem(
            "compare relations",
            relation_a - relation_b,
            RewriteSystem([wr], w),
            strata=(ZETA_SYM,),
        ),
        SuiteItem("wronskian transport", wu - ZETA ** 4 * wronskian_vu(), RewriteSystem(anti, w)),
        SuiteItem(
            "g derivative",
            d(g) - 2 * ZETA * zeta12,
            RewriteSystem([order2_uv] + anti + [order2_vu, wr] + _inverse_rules(), w),
        ),
    ]
    return Suite("corollary-zeta12", items)


# ---------------------------------------------------------------------------


def prop_bracket_triple() -> Suite:
    zuv, zvw, zuw = _x("zeta_UV"), _x("zeta_VW"), _x("zeta_UW")
    fp_vw = _x("fp_VW")  # d f_VW / dy, pulled back
    psi = {(i, p): _x(f"psi{i}_{p}") for i in (1, 2) for p in ("UV", "VW", "UW")}
    f = {(i, p): _x(f"f{i}_{p}") for i in (1, 2) for p in ("UV", "VW", "UW")}
    g = {p: _x(f"g_{p}") for p in ("UV", "VW", "UW")}
    w = {"g_UW": 50, "fp_VW": 5, "zeta_UW": 5}
    w.update({f"f{i}_{p}": 20 for i in (1, 2) for p in ("UV", "VW", "UW")})
    spin = [
        Rule.make(fp_vw, zvw * zvw, label="f'=zeta^2"),
        Rule.make(zuw, zuv * zvw, label="zeta multiplicative"),
    ]
    sc = [Rule.make(f[(i, p)], _x(f"zeta_{p}") * psi[(i, p)]) for i in (1, 2)
          for p in ("UV", "VW", "UW")]
    # xi12 coefficient of rho_VW o rho_UV
    expansion = fp_vw * g["UV"] + g["VW"] + f[(1, "VW")] * psi[(2, "UV")] - f[(2, "VW")] * psi[(1, "UV")]
    composed = Rule.make(g["UW"], expansion, label="g on triples")
    bracket = zvw * (psi[(1, "UV")] * psi[(2, "VW")] - psi[(2, "UV")] * psi[(1, "VW")])
    delta_g = g["VW"] + zvw * zvw * g["UV"] - g["UW"]
    f_cocycle = {i: f[(i, "UW")] - fp_vw * f[(i, "UV")] - zuv * f[(i, "VW")] for i in (1, 2)}
    psi_cocycle = {i: psi[(i, "UW")] - zvw * psi[(i, "UV")] - psi[(i, "VW")] for i in (1, 2)}
    items = [
        SuiteItem(
            "expansion with f = zeta psi",
            expansion - (fp_vw * g["UV"] + g["VW"] + zvw * (psi[(2, "UV")] * psi[(1, "VW")]
                                                         - psi[(1, "UV")] * psi[(2, "VW")])),
            RewriteSystem(sc, w),
        ),
        SuiteItem("delta g equals bracket", delta_g - bracket, RewriteSystem([composed] + sc + spin, w)),
    ]
    for i in (1, 2):
        items.append(SuiteItem(
            f"f{i} cocycle iff psi{i} cocycle",
            f_cocycle[i] - zuv * zvw * psi_cocycle[i],
            RewriteSystem(sc + spin, w),
        ))
    return Suite("prop-bracket-triple", items)


# ---------------------------------------------------------------------------


def stratified_wronskian(a, b, c, dd) -> DiffPolynomial:
    """``psi1' psi2 - psi1 psi2'`` for ``psi^i = sigma^i_V - zeta sigma^i_U``
    (equivalently its negative), with ``a, b`` the U-sections and ``c, dd``
    the V-sections (functions of y) of components 1 and 2."""
    zp = d(ZETA)
    return (
        zp * (b * c - a * dd)
        + ZETA * (d(b) * c - d(a) * dd)
        + ZETA ** 2 * (_yd(c) * dd - c * _yd(dd) + d(a) * b - a * d(b))
        + ZETA ** 3 * (a * _yd(dd) - b * _yd(c))
    )


def _yd(p: DiffPolynomial) -> DiffPolynomial:
    (mono, _), = p.terms.items()
    (s,), = (mono,)
    return DiffPolynomial.symbol(s.derivative())


def prop_sigma_bracket() -> Suite:
    charts = ("U", "V", "W")
    sig = {(i, c): _x(f"sigma{i}_{c}") for i in (1, 2) for c in charts}

    def dsig(i, a, b):
        return sig[(i, b)] - sig[(i, a)]

    def br_sigma(a, b):
        return sig[(1, a)] * sig[(2, b)] - sig[(2, a)] * sig[(1, b)]

    bracket = dsig(1, "U", "V") * dsig(2, "V", "W") - dsig(2, "U", "V") * dsig(1, "V", "W")
    expansion = (
        (sig[(1, "V")] - sig[(1, "U")]) * (sig[(2, "W")] - sig[(2, "V")])
        - (sig[(2, "V")] - sig[(2, "U")]) * (sig[(1, "W")] - sig[(1, "V")])
    )
    delta = br_sigma("V", "W") - br_sigma("U", "W") + br_sigma("U", "V")

    # transported version on a triple
    z = {p: _x(f"zeta_{p}") for p in ("UV", "VW", "UW")}
    mult = RewriteSystem([Rule.make(z["UW"], z["UV"] * z["VW"])], {"zeta_UW": 5})

    def psi_t(i, a, b):
        return sig[(i, b)] - z[a + b] * sig[(i, a)]

    def c_t(a, b):
        return z[a + b] * br_sigma(a, b)

    bracket_t = z["VW"] * (
        psi_t(1, "U", "V") * psi_t(2, "V", "W") - psi_t(2, "U", "V") * psi_t(1, "V", "W")
    )
    delta_t = c_t("V", "W") + z["VW"] ** 2 * c_t("U", "V") - c_t("U", "W")

    # stratification on a pair
    a, b = _x("sigma1_U"), _x("sigma2_U")
    c, dd = _y("sigma1_V"), _y("sigma2_V")
    psi1 = c - ZETA * a
    psi2 = dd - ZETA * b
    wr = d(psi1) * psi2 - psi1 * d(psi2)
    items = [
        SuiteItem("bracket of coboundaries", bracket - expansion, RewriteSystem([])),
        SuiteItem("expansion is a coboundary", expansion - delta, RewriteSystem([])),
        SuiteItem("transported bracket is a coboundary", bracket_t - delta_t, mult),
        SuiteItem(
            "zeta stratification",
            wr - stratified_wronskian(a, b, c, dd),
            RewriteSystem([]),
        ),
        SuiteItem(
            "zeta' stratum is the sigma bracket",
            collect(stratified_wronskian(a, b, c, dd), (ZETA_SYM, _s("zeta", 1)))[(0, 1)]
            + (a * dd - b * c),
            RewriteSystem([]),
        ),
    ]
    return Suite("prop-sigma-bracket", items)


# ---------------------------------------------------------------------------


def _phi():
    a, b = _x("phi1_U"), _x("phi2_U")
    c, dd = _y("phi1_V"), _y("phi2_V")
    return a, b, c, dd


def commutation_rules() -> list:
    """Strata of the stratified constraint: the zeta'-stratum, the zeta^3
    stratum and the V self-intersection, oriented by the weights below."""
    a, b, c, dd = _phi()
    return [
        Rule.make(a * dd, b * c, COMMUTATION, "zeta' stratum"),
        Rule.make(c * _yd(dd), _yd(c) * dd, COMMUTATION, "V self-intersection"),
        Rule.make(a * _yd(dd), b * _yd(c), COMMUTATION, "zeta^3 stratum"),
    ]


SEC422_WEIGHTS = {
    "phi1_U": 10, "phi2_U": 1, "phi1_V": 5, "phi2_V": 5,
    _s("phi2_V", 1, "y"): 7, _s("phi1_V", 1, "y"): 1,
    "lambda1_V": 20, "lambda2_V": 20, "psi1": 30, "psi2": 30, "f1": 40, "f2": 40,
}


def sec_4_2_2() -> Suite:
    a, b, c, dd = _phi()
    psi = {1: ZETA * a - c, 2: ZETA * b - dd}
    psi_sym = {i: _x(f"psi{i}") for i in (1, 2)}
    lam_v = {1: _y("lambda1_V"), 2: _y("lambda2_V")}
    f = {i: _x(f"f{i}") for i in (1, 2)}
    w = SEC422_WEIGHTS
    wr = d(psi[1]) * psi[2] - psi[1] * d(psi[2])
    strat = stratified_wronskian(a, b, c, dd)
    coeffs = collect(strat, (ZETA_SYM, _s("zeta", 1)))
    w_u = d(a) * b - a * d(b)
    to_u = {
        _s("phi1_V", 0, "y"): a,
        _s("phi2_V", 0, "y"): b,
        _s("phi1_V", 1, "y"): d(a),
        _s("phi2_V", 1, "y"): d(b),
    }
    split = [Rule.make(lam_v[i], {1: c, 2: dd}[i], label=f"lambda{i} = phi{i}") for i in (1, 2)]
    split += [Rule.make(psi_sym[i], psi[i], label=f"psi{i} coboundary") for i in (1, 2)]
    split += [Rule.make(f[i], ZETA * psi_sym[i], label=f"f{i} = zeta psi{i}") for i in (1, 2)]
    rules = RewriteSystem(split + commutation_rules(), w)
    items = [
        SuiteItem("stratified constraint", wr - strat, RewriteSystem([], w)),
        SuiteItem(
            "self-intersection, zeta stratum",
            dp_substitute(coeffs[(1, 0)], to_u) + w_u,
            RewriteSystem([], w),
        ),
        SuiteItem(
            "self-intersection, zeta^3 stratum",
            dp_substitute(coeffs[(3, 0)], to_u) + w_u,
            RewriteSystem([], w),
        ),
        SuiteItem(
            "lambda-psi pairing",
            lam_v[1] * psi_sym[2] - lam_v[2] * psi_sym[1],
            rules,
            strata=(ZETA_SYM,),
        ),
        SuiteItem(
            "phi'-f pairing",
            _yd(c) * f[2] - _yd(dd) * f[1],
            rules,
            strata=(ZETA_SYM,),
        ),
    ]
    return Suite("sec-4.2.2", items)


SUITES = {
    "lemma-intersections": lemma_intersections,
    "corollary-zeta12": corollary_zeta12,
    "prop-bracket-triple": prop_bracket_triple,
    "prop-sigma-bracket": prop_sigma_bracket,
    "sec-4.2.2": sec_4_2_2,
}


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]()
    except KeyError:
        raise UnknownSuite(
            f"unknown suite {name!r}; available: {', '.join(SUITES)}"
        ) from None


def verify_identity_suite(name: str, drop_groups=()) -> Report:
    """Reduce every item of a suite.

    The report carries each normal form; stratified items also list their
    coefficients by powers of zeta.  Items whose zero normal form relies on a
    hypothesis rule (the Wronskian identity) are listed together with their
    residual when the hypothesis is withheld.
    """
    suite = get_suite(name)
    rep = Report(f"verify-identities {name}")
    strata, hypothetical = {}, {}
    for item in suite.items:
        nf = item.normal_form(drop_groups)
        rep.entries.append(Entry("identity", item.name, nf))
        if item.strata and not nf.is_zero():
            strata[item.name] = _render_strata(nf, item.strata)
        used = (set(HYPOTHESES) & item.rules.groups()) - set(drop_groups)
        if used:
            bare = item.normal_form(tuple(drop_groups) + tuple(used))
            if bare != nf:
                hypothetical[item.name] = f"{bare}  (without: {', '.join(sorted(used))})"
    if drop_groups:
        rep.notes.append(f"rule groups dropped: {', '.join(drop_groups)}")
    if strata:
        rep.data["strata"] = strata
    if hypothetical:
        rep.data["hypothesis-dependent"] = hypothetical
        for group in sorted({g for item in suite.items for g in item.rules.groups()} & set(HYPOTHESES)):
            if group not in drop_groups:
                rep.notes.append(f"hypothesis rule group {group!r}: {HYPOTHESES[group]}")
    return rep


def _render_strata(nf: DiffPolynomial, symbols) -> str:
    parts = []
    for k, v in collect(nf, symbols).items():
        key = "*".join(f"{s}^{e}" if e > 1 else str(s) for s, e in zip(symbols, k) if e) or "1"
        parts.append(f"[{key}] {v}")
    return "; ".join(parts)
