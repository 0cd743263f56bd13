"""Command line entry point: ``python -m superdeform.cli COMMAND ...``.

Exit codes: 0 pass, 1 checked and failed (the report carries the residual or
H^1 witness), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cech, deform
from .atlas import check_all, check_atlas_superconformal
from .errors import NotSuperconformal, ObstructionNonzero, SuperdeformError
from .identities import SUITES, verify_identity_suite
from .io import load_atlas, load_cochain, load_splitting, render_atlas, render_splitting
from .render import render_scalar
from .report import Entry, Report

# input problems and refused preconditions (exit 2)
INPUT_ERRORS = (SuperdeformError, SyntaxError, ZeroDivisionError, OSError)


class UsageError(Exception):
    pass


def _cochain_data(c: dict) -> dict:
    return {",".join(p): render_scalar(v) for p, v in c.items()}


def _emit_text(path, text, out):
    if path:
        Path(path).write_text(text)
        out.write(f"wrote {path}\n")
    else:
        out.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, out) -> Report:
    a = load_atlas(args.atlas)
    rep = check_atlas_superconformal(a) if args.superconformal else check_all(a)
    rep.command = "check"
    rep.data["atlas"] = a.name or args.atlas
    return rep


def cmd_ks(args, out) -> Report:
    a = load_atlas(args.atlas)
    try:
        ks = deform.extract_ks(a)
    except NotSuperconformal as exc:
        return _failed_superconformal(a, "ks", exc)
    rep = Report("ks", list(ks.cocycle_report.entries))
    for i, comp in ks.components.items():
        rep.data[f"KS{i} (2 psi{i})"] = _cochain_data(comp)
        rep.data[f"f{i}"] = _cochain_data(ks.f[i])
        rep.data[f"psi{i}"] = _cochain_data(ks.psi[i])
    rep.notes.append("class representative KS^a = 2 psi^a; raw f^a and psi^a listed as extracted")
    return rep


def _failed_superconformal(a, command, exc) -> Report:
    rep = check_atlas_superconformal(a)
    rep.command = command
    rep.notes.append(str(exc))
    return rep


def cmd_obstruction(args, out) -> Report:
    a = load_atlas(args.atlas)
    try:
        ob = deform.extract_obstruction(a)
    except NotSuperconformal as exc:
        return _failed_superconformal(a, "obstruction", exc)
    rep = Report("obstruction", notes=list(ob.notes))
    for i, comp in ob.p_part.items():
        rep.data[f"p-part f{i}"] = _cochain_data(comp)
    rep.data["iota-part g12"] = _cochain_data(ob.iota_part)
    rep.data["p-part trivial"] = {True: "yes", False: "no", None: "undecided on this cover"}[ob.p_trivial]
    rep.data["omega zero"] = "yes" if ob.is_zero() else "no"
    return rep


def cmd_build(args, out) -> Report:
    a, theta, g12 = load_atlas(args.atlas, with_directives=True)
    if args.kind == "construction":
        if theta is None:
            raise UsageError("build construction needs a [construction] section")
        built = deform.build_construction(a, theta)
    else:
        if g12 is None:
            raise UsageError("build twist needs a [twist] section")
        built = deform.twist_by_g12(a, g12)
    rep = check_all(built)
    rep.command = f"build {args.kind}"
    _emit_text(args.out, render_atlas(built), out)
    return rep


def cmd_split(args, out) -> Report:
    a = load_atlas(args.atlas)
    if a.genus == 1:
        out.write(f"warning: {deform.GENUS_ONE_WARNING}\n")
    try:
        s = deform.solve_splitting(a, args.half_twist, args.full_twist)
    except ObstructionNonzero as exc:
        w = exc.witness
        rep = Report("split", [Entry(f"{exc.component}-coboundary", "U,V", w.residual)])
        rep.data["witness"] = {
            "component": exc.component,
            "model": f"O({w.bundle.twist})",
            "h1 basis": ", ".join(f"x^{p}" for p in w.bundle.gap_powers()) or "(empty)",
            "h1 coordinates": ", ".join(render_scalar(c) for c in w.h1_coordinates),
        }
        rep.notes.append(str(exc))
        if a.genus == 1:
            rep.notes.append(deform.GENUS_ONE_WARNING)
        return rep
    rep = deform.verify_splitting(a, s)
    rep.command = "split"
    _emit_text(args.out, render_splitting(s), out)
    return rep


def cmd_verify_splitting(args, out) -> Report:
    a = load_atlas(args.atlas)
    s = load_splitting(args.splitting, a)
    if a.genus == 1:
        s.notes.append(deform.GENUS_ONE_WARNING)
    return deform.verify_splitting(a, s)


def cmd_cech_solve(args, out) -> Report:
    z = load_cochain(args.cochain, args.twist)
    if z.degree != 1:
        raise UsageError("cech-solve takes a degree-1 cochain")
    cls = cech.solve_coboundary(z)
    rep = Report("cech-solve", [Entry("h1-residual", "U,V", cls.residual)])
    rep.data["verdict"] = cls.verdict
    rep.data["model"] = f"O({cls.bundle.twist})"
    rep.data["trivializer"] = {k: render_scalar(v) for k, v in cls.trivializer.components.items()}
    if not cls.trivial:
        rep.data["witness"] = render_scalar(cls.residual)
        rep.data["h1 coordinates"] = ", ".join(
            f"x^{p}: {render_scalar(c)}" for p, c in zip(cls.bundle.gap_powers(), cls.h1_coordinates)
        )
    return rep


def cmd_verify_identities(args, out) -> Report:
    return verify_identity_suite(args.suite, tuple(args.drop_group or ()))


COMMANDS = {
    "check": cmd_check,
    "ks": cmd_ks,
    "obstruction": cmd_obstruction,
    "build": cmd_build,
    "split": cmd_split,
    "verify-splitting": cmd_verify_splitting,
    "cech-solve": cmd_cech_solve,
    "verify-identities": cmd_verify_identities,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="superdeform", description="Exact checks for odd deformations of super Riemann surfaces.")
    p.add_argument("--json", metavar="PATH", help="also write a machine-readable report")
    p.add_argument("-v", "--verbose", action="store_true", help="list passing checks too")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="superconformal, cocycle and cochain checks")
    c.add_argument("atlas")
    c.add_argument("--superconformal", action="store_true", help="only the superconformality relations")
    for name, text in (("ks", "Kodaira-Spencer cochains"), ("obstruction", "primary obstruction cocycle")):
        sub.add_parser(name, help=text).add_argument("atlas")

    b = sub.add_parser("build", help="build a Construction or twisted atlas from directives in the file")
    b.add_argument("kind", choices=("construction", "twist"))
    b.add_argument("atlas")
    b.add_argument("--out", help="write the atlas here instead of standard output")

    s = sub.add_parser("split", help="solve for a splitting map and verify it")
    s.add_argument("atlas")
    s.add_argument("--out", help="write the splitting map here instead of standard output")
    s.add_argument("--half-twist", type=int, default=1, help="Cech model for the psi solves")
    s.add_argument("--full-twist", type=int, default=2, help="Cech model for the g12 solve")

    v = sub.add_parser("verify-splitting", help="check a splitting map against an atlas")
    v.add_argument("atlas")
    v.add_argument("splitting")

    cs = sub.add_parser("cech-solve", help="classify a 1-cochain of O(k) on the two-chart cover")
    cs.add_argument("cochain")
    cs.add_argument("--twist", type=int, help="override the twist declared in the file")

    vi = sub.add_parser("verify-identities", help="reduce a proof-identity suite")
    vi.add_argument("--suite", required=True, choices=sorted(SUITES))
    vi.add_argument("--drop-group", action="append", help="withhold a rule group (repeatable)")

    # global flags may also follow the subcommand
    for sp in (c, b, s, v, cs, vi, *(sub.choices[k] for k in ("ks", "obstruction"))):
        sp.add_argument("--json", dest="json_sub", metavar="PATH", help=argparse.SUPPRESS)
        sp.add_argument("-v", "--verbose", dest="verbose_sub", action="store_true", help=argparse.SUPPRESS)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return 0 if not exc.code else 2
    json_path = getattr(args, "json_sub", None) or args.json
    verbose = args.verbose or getattr(args, "verbose_sub", False)
    try:
        rep = COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except INPUT_ERRORS as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    out.write(rep.to_text(verbose=verbose))
    if json_path:
        Path(json_path).write_text(rep.to_json())
    return 0 if rep.passed else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
