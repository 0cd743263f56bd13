"""The seven acceptance criteria, each at exact (zero-tolerance) equality.

Every test records a one-line verdict that is printed in the pytest
terminal summary; ``python tests/test_acceptance.py`` runs them directly.
"""

from __future__ import annotations

import io
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from conftest import ACCEPTANCE_RESULTS, FIXTURES  # noqa: E402

from superdeform import cech, cli  # noqa: E402
from superdeform.atlas import (  # noqa: E402
    bracket_psi,
    check_cochain_structure,
    check_cocycle,
    check_intersection_identities,
    coboundary0,
    coboundary1,
    cochain_from_atlas,
    p1_split_atlas,
)
from superdeform.deform import (  # noqa: E402
    GENUS_ONE_WARNING,
    build_construction,
    extract_ks,
    solve_splitting,
    twist_by_g12,
    verify_splitting,
)
from superdeform.diffpoly import DiffPolynomial, DiffSymbol  # noqa: E402
from superdeform.errors import ObstructionNonzero  # noqa: E402
from superdeform.generators import (  # noqa: E402
    GeneratorConfig,
    morphism_from_coefficients,
    random_laurent,
    random_model_atlas,
    random_scalar,
    random_sections,
    random_solved_morphism,
)
from superdeform.identities import SUITES, get_suite  # noqa: E402
from superdeform.scalar import RationalFunction  # noqa: E402
from superdeform.superconformal import (  # noqa: E402
    F_EQUALS_ZETA_PSI,
    ORDER2_G12,
    ZETA_SQUARED,
    check_superconformal,
)

SEED = 20261016


def record(n: int, ok: bool, detail: str):
    ACCEPTANCE_RESULTS[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


# ---------------------------------------------------------------------------
# 1. superconformality iff-suite

BODY, F1, F2, G12 = (ZETA_SQUARED, ()), (F_EQUALS_ZETA_PSI, (0,)), (F_EQUALS_ZETA_PSI, (1,)), (ORDER2_G12, (0, 1))

# coefficient -> entries its perturbation may touch; the first one must fail
PREDICTED = {
    "lam0": [BODY],
    "lam12": [G12],
    "f1": [F1],
    "f2": [F2],
    "zeta12": [G12],
    "psi1": [F1, G12],
    "psi2": [F2, G12],
    "zeta0": [BODY, F1, F2, G12],
}


def expected_primary_residual(name, delta, s):
    """Residual of the first predicted entry, from the hand-derived relations
    ``lambda' = zeta^2``, ``f = zeta psi`` and
    ``lambda12' = 2 zeta zeta12 - psi1' psi2 + psi1 psi2'``."""
    if name in ("lam0", "lam12"):
        return delta.derivative()
    if name in ("f1", "f2"):
        return delta
    if name == "zeta12":
        return -(s.zeta0 * delta * 2)
    if name in ("psi1", "psi2"):
        return -(s.zeta0 * delta)
    return -(s.zeta0 * delta * 2 + delta * delta)  # zeta0


def _perturbation(rng, name, s):
    while True:
        p = rng.choice([-3, -2, -1, 1, 2, 3])
        delta = RationalFunction.monomial(random_scalar(rng, nonzero=True), p, "x")
        if name == "zeta0" and delta == -(s.zeta0 * 2):
            continue  # theta -> -theta is still superconformal
        return delta


def test_criterion_1_superconformal_iff():
    rng = random.Random(SEED)
    count, problems = 0, []
    for k in range(500):
        s = random_solved_morphism(rng)
        base = s.coefficients()
        res = check_superconformal(morphism_from_coefficients(base))
        if not all(r.passed for r in res):
            problems.append(f"#{k} unperturbed fails")
            continue
        count += 1
        for name, predicted in PREDICTED.items():
            delta = _perturbation(rng, name, s)
            coeffs = dict(base)
            coeffs[name] = coeffs[name] + delta
            res = check_superconformal(morphism_from_coefficients(coeffs))
            failed = {(r.tag, r.monomial): r.residual for r in res if not r.passed}
            if not failed or not set(failed) <= set(predicted):
                problems.append(f"#{k} {name}: failures {sorted(failed)} outside {predicted}")
            elif failed.get(predicted[0]) != expected_primary_residual(name, delta, s):
                problems.append(f"#{k} {name}: residual {failed.get(predicted[0])} not predicted")
    record(1, count == 500 and not problems,
           f"{count}/500 solved-form morphisms pass, 4000 perturbations localized"
           + (f"; problems: {problems[:3]}" if problems else ""))


# ---------------------------------------------------------------------------
# 2. cocycle-identity suite


def test_criterion_2_cocycle_identities():
    rng = random.Random(SEED + 2)
    problems, triples = [], 0
    for k in range(200):
        charts = 2 if k % 2 == 0 else 3
        a, _, _ = random_model_atlas(rng, charts)
        for rep in (check_cocycle(a), check_intersection_identities(a), check_cochain_structure(a)):
            if not rep.passed:
                problems.append(f"#{k} ({charts} charts) {rep.command}: {rep.failures()[0].tag}")
        g = cochain_from_atlas(a, lambda m: m.g(1, 2))
        dg, br = coboundary1(a, g, 2), bracket_psi(a)
        triples += len(dg)
        if any(dg[t] != br[t] for t in dg):
            problems.append(f"#{k} d g12 != [psi1, psi2]")
    record(2, not problems and triples > 0,
           f"200 atlases (100 two-chart, 100 three-chart), {triples} triples with d g12 = [psi1, psi2]"
           + (f"; problems: {problems[:3]}" if problems else ""))


# ---------------------------------------------------------------------------
# 3. Construction fidelity


def test_criterion_3_construction_fidelity():
    rng = random.Random(SEED + 3)
    problems = []
    for k in range(40):
        charts = 2 if k % 2 == 0 else 3
        base = p1_split_atlas(charts)
        if charts == 2:
            theta = {p: random_laurent(rng, base.cover.var(p[0])) for p in base.cover.forward_pairs()}
        else:
            theta = coboundary0(base, random_sections(rng, base), 1)
        a = build_construction(base, theta)
        ks = extract_ks(a)
        for i in (1, 2):
            for p, t in theta.items():
                if ks.components[i][p] != t:
                    problems.append(f"#{k} KS{i} on {p}: {ks.components[i][p]} != {t}")
        g = coboundary0(a, random_sections(rng, a, degree=3), 2) if charts == 3 else {
            p: random_laurent(rng, a.cover.var(p[0])) for p in a.cover.forward_pairs()
        }
        twisted = extract_ks(twist_by_g12(a, g))
        if twisted.components != ks.components or twisted.f != ks.f or twisted.psi != ks.psi:
            problems.append(f"#{k} twist changed KS")
    record(3, not problems, "KS(build_construction(Theta)) = (Theta, Theta) and twisting preserves KS on 40 atlases"
           + (f"; problems: {problems[:3]}" if problems else ""))


# ---------------------------------------------------------------------------
# 4. constructive splitting at model scale


def laurent_h1_witness(psi: RationalFunction, k: int) -> dict:
    """Independent oracle: the class of ``d sigma = -psi`` (V frame) in the
    O(k) model is the part of ``x**k * (-psi)`` in powers ``k+1 .. -1``."""
    coeffs = psi.laurent_coefficients()
    out = {}
    for p, c in coeffs.items():
        q = p + k
        if k < q < 0:
            out[q] = -c
    return out


def test_criterion_4_splitting():
    rng = random.Random(SEED + 4)
    problems, refusals = [], 0
    for k in range(100):
        a, _, _ = random_model_atlas(rng, 2, coboundary=True)
        s = solve_splitting(a)
        rep = verify_splitting(a, s)
        if not rep.passed or not rep.entries:
            problems.append(f"#{k} splitting residual {rep.failures()[0].rendered()}")
    # artificially negative twist: Theta with an x^2 section term on U
    x = RationalFunction.variable("x")
    for k in range(30):
        base = p1_split_atlas(2)
        sigma = random_sections(rng, base)
        sigma["U"] = sigma["U"] + x * x * random_scalar(rng, nonzero=True)
        a = build_construction(base, coboundary0(base, sigma, 1))
        twist = rng.choice([-2, -3, -4])
        psi1 = a[("U", "V")].psi(1)
        oracle = laurent_h1_witness(psi1, twist)
        if not oracle:
            problems.append(f"negative #{k}: oracle predicts no witness")
            continue
        bundle = cech.LineBundleModel(twist)
        z = cech.CechCochain(1, bundle, {("U", "V"): bundle.transport_to_u() * -psi1})
        cls = cech.solve_coboundary(z)
        got = {p: c for p, c in zip(bundle.gap_powers(), cls.h1_coordinates) if c != 0}
        if got != oracle or cls.trivial:
            problems.append(f"negative #{k}: solve_coboundary {got} != oracle {oracle}")
        try:
            solve_splitting(a, half_twist=twist)
            problems.append(f"negative #{k}: solve_splitting did not refuse")
        except ObstructionNonzero as exc:
            refusals += 1
            if exc.component != "psi1" or exc.witness.residual != cls.residual:
                problems.append(f"negative #{k}: refusal witness {exc.witness.residual} != {cls.residual}")
    record(4, not problems,
           f"100 coboundary atlases split with zero residual; {refusals}/30 negative-twist refusals carry the oracle witness"
           + (f"; problems: {problems[:3]}" if problems else ""))


# ---------------------------------------------------------------------------
# 5. Cech dimension


def brute_force_h1(k: int, window: int = 14) -> int:
    """dim of Laurent polynomials in x^-N..x^N modulo the images of
    U-sections x^a and V-sections y^b, by exact Gaussian elimination."""
    powers = list(range(-window, window + 1))
    index = {p: i for i, p in enumerate(powers)}
    rows = []
    for a in range(0, window + 1):  # sigma_U = x^a  ->  -x^a
        r = [Fraction(0)] * len(powers)
        r[index[a]] = Fraction(-1)
        rows.append(r)
    for b in range(0, window + k + 1):  # sigma_V = y^b -> x^k (-1/x)^b
        if -window <= k - b <= window:
            r = [Fraction(0)] * len(powers)
            r[index[k - b]] = Fraction((-1) ** b)
            rows.append(r)
    rank, cols = 0, len(powers)
    for col in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [u - f * v for u, v in zip(rows[i], rows[rank])]
        rank += 1
    return len(powers) - rank


def test_criterion_5_cech_dimension():
    table = {k: (cech.count_nontrivial_classes(k), brute_force_h1(k), max(0, -k - 1)) for k in range(-6, 4)}
    ok = all(a == b == c for a, b, c in table.values())
    record(5, ok, "solver count = brute force = max(0, -k-1) for k in [-6, 3]: "
           + ", ".join(f"{k}:{a}" for k, (a, _, _) in table.items()))


# ---------------------------------------------------------------------------
# 6. proof-identity machine check


def _sym(name, order=0, chart="x"):
    return DiffPolynomial.symbol(DiffSymbol(name, order, chart=chart))


def test_criterion_6_identity_suites():
    problems = []
    for name in SUITES:
        for item in get_suite(name).items:
            nf = item.normal_form()
            if not nf.is_zero():
                problems.append(f"{name}/{item.name}: {nf}")
    # hand expansion with psi^i = zeta phi^i_U - phi^i_V, lambda^i_V = phi^i_V, f = zeta psi
    zeta = _sym("zeta")
    a, b = _sym("phi1_U"), _sym("phi2_U")
    c, d = _sym("phi1_V", chart="y"), _sym("phi2_V", chart="y")
    c_y, d_y = _sym("phi1_V", 1, "y"), _sym("phi2_V", 1, "y")
    expected = {
        "lambda-psi pairing": zeta * (b * c - a * d),
        "phi'-f pairing": zeta * zeta * (b * c_y - a * d_y) + zeta * (c * d_y - c_y * d),
    }
    items = {item.name: item for item in get_suite("sec-4.2.2").items}
    dropped = {n: it.normal_form(("commutation",)) for n, it in items.items()}
    for n, nf in dropped.items():
        want = expected.get(n, DiffPolynomial())
        if nf != want:
            problems.append(f"sec-4.2.2 without commutation, {n}: {nf} != {want}")
    nonzero = [n for n, nf in dropped.items() if not nf.is_zero()]
    record(6, not problems and len(nonzero) == 2,
           f"{len(SUITES)} suites reduce to zero; without commutation sec-4.2.2 leaves exactly "
           f"the zeta-stratified residuals on {nonzero}" + (f"; problems: {problems[:3]}" if problems else ""))


# ---------------------------------------------------------------------------
# 7. genus caveat honesty


def test_criterion_7_genus_one_warning():
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(["split", str(FIXTURES / "genus1-like.atlas")], out, err)
    text = out.getvalue()
    warned = f"warning: {GENUS_ONE_WARNING}" in text and "g != 1" in text
    # only verified statements: the verdict line matches the exit code, no split/non-split claim
    honest = "non-split" not in text.lower() and ("-> PASS" in text) == (code == 0)
    record(7, warned and honest and code in (0, 1),
           f"split on a genus-1-like atlas warns about the g != 1 hypothesis (exit {code})")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
