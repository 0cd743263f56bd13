"""Sectioned text files for atlases, cochains and splitting maps.

The layout is INI-like (read with :mod:`configparser`); a JSON object whose
keys are section names and whose values are key/value objects is accepted
too.  ``docs/formats.md`` has the full grammar.
"""

from __future__ import annotations

import configparser
import json
import re
from pathlib import Path

from . import cech
from .atlas import Atlas, Cover
from .deform import ChartSplitting, SplittingMap
from .errors import AtlasFormatError, ChartMismatch, ParityError
from .grassmann import EVEN, ODD, Supermorphism, make_morphism, monomial_name, morphism_invert
from .parser import parse_expression
from .render import render_scalar
from .scalar import RationalFunction

_NAMED = re.compile(r"^(f|g|psi|zeta)(\d+)$")
_GENERIC = re.compile(r"^(even|odd)\s*:\s*(.+)$")
_SPLIT_FIELDS = ("lambda1", "lambda2", "lambda12", "phi1", "phi2", "phi12")


def _read(text: str) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    cp.optionxform = str
    try:
        if text.lstrip().startswith("{"):
            cp.read_dict({k: {kk: str(vv) for kk, vv in v.items()} for k, v in json.loads(text).items()})
        else:
            cp.read_string(text)
    except (configparser.Error, json.JSONDecodeError, AttributeError) as exc:
        raise AtlasFormatError(f"malformed document: {exc}") from None
    return cp


def _sections(cp, kind):
    out = []
    for name in cp.sections():
        parts = name.split()
        if parts[0] == kind:
            out.append((parts[1:], cp[name]))
    return out


def _int(section, key, default=None):
    if key not in section:
        if default is None:
            raise AtlasFormatError(f"missing key {key!r}")
        return default
    try:
        return int(section[key])
    except ValueError:
        raise AtlasFormatError(f"{key} must be an integer, got {section[key]!r}") from None


def _monomial_from_indices(digits: str, n: int, theta: bool) -> tuple:
    idx = [int(ch) - 1 for ch in digits]
    if sorted(set(idx)) != idx or any(i < 0 or i >= n for i in idx):
        raise AtlasFormatError(f"bad xi index string {digits!r} for order {n}")
    return tuple(idx) + ((n,) if theta else ())


def _monomial_from_text(text: str, n: int) -> tuple:
    gens = []
    for g in text.replace(" ", "").split("*"):
        if g == "theta":
            gens.append(n)
        elif re.fullmatch(r"xi\d+", g) and 1 <= int(g[2:]) <= n:
            gens.append(int(g[2:]) - 1)
        elif g in ("", "1"):
            continue
        else:
            raise AtlasFormatError(f"unknown generator {g!r}")
    if sorted(set(gens)) != gens:
        raise AtlasFormatError(f"monomial {text!r} must list distinct generators in order")
    return tuple(gens)


def _coefficient_slot(key: str, n: int):
    """Map a pair key to ``(component, monomial)``."""
    m = _NAMED.match(key)
    if m:
        kind, digits = m.groups()
        k = len(digits)
        if kind == "f":
            comp, mono, ok = EVEN, _monomial_from_indices(digits, n, True), k % 2 == 1
        elif kind == "g":
            comp, mono, ok = EVEN, _monomial_from_indices(digits, n, False), k % 2 == 0
        elif kind == "psi":
            comp, mono, ok = ODD, _monomial_from_indices(digits, n, False), k % 2 == 1
        else:
            comp, mono, ok = ODD, _monomial_from_indices(digits, n, True), k % 2 == 0
        if not ok:
            raise ParityError(f"{key}: {kind} coefficients take {'an odd' if kind in ('f', 'psi') else 'an even'} number of xi indices")
        return comp, mono
    m = _GENERIC.match(key)
    if m:
        comp = EVEN if m.group(1) == "even" else ODD
        mono = _monomial_from_text(m.group(2), n)
        if len(mono) % 2 != comp:
            raise ParityError(f"{key}: monomial of parity {len(mono) % 2} in the {m.group(1)} component")
        return comp, mono
    raise AtlasFormatError(f"unknown pair key {key!r}")


def _expr(text, var, where):
    try:
        return parse_expression(text, var)
    except SyntaxError as exc:
        raise type(exc)(f"{where}: {exc}") from None


def load_atlas(path, with_directives: bool = False):
    """Read an atlas file; with ``with_directives`` also return the
    ``construction``/``twist`` cochains it declares."""
    return parse_atlas(Path(path).read_text(), with_directives, source=str(path))


def parse_atlas(text: str, with_directives: bool = False, source: str = "<text>"):
    cp = _read(text)
    if not cp.has_section("atlas"):
        raise AtlasFormatError("missing [atlas] section")
    head = cp["atlas"]
    n = _int(head, "order")
    genus = _int(head, "genus", -1)
    genus = None if genus == -1 else genus
    charts = []
    for names, sec in _sections(cp, "chart"):
        if len(names) != 1 or "coordinate" not in sec:
            raise AtlasFormatError("chart sections read [chart NAME] with a coordinate key")
        charts.append((names[0], sec["coordinate"].strip()))
    if not charts:
        raise AtlasFormatError("no charts declared")
    var = dict(charts)
    forward, inverses = {}, {}
    for names, sec in _sections(cp, "pair"):
        if len(names) != 2:
            raise AtlasFormatError("pair sections read [pair SOURCE TARGET]")
        u, v = names
        if u not in var or v not in var:
            raise ChartMismatch(f"pair ({u}, {v}) names an undeclared chart")
        where = f"pair {u} {v}"
        for key in ("f", "zeta"):
            if key not in sec:
                raise AtlasFormatError(f"{where}: missing {key}")
        even = {(): _expr(sec["f"], var[u], where)}
        odd = {(n,): _expr(sec["zeta"], var[u], where)}
        for key, text in sec.items():
            if key in ("f", "zeta"):
                continue
            if key == "inverse":
                inverses[(v, u)] = _expr(text, var[v], where)
                continue
            comp, mono = _coefficient_slot(key, n)
            target = even if comp == EVEN else odd
            if mono in target:
                raise AtlasFormatError(f"{where}: {key} duplicates a coefficient")
            target[mono] = _expr(text, var[u], where)
        forward[(u, v)] = make_morphism(u, v, var[u], var[v], n, even, odd)
    cover = Cover.build(charts, list(forward))
    transitions = dict(forward)
    for (u, v), m in forward.items():
        if (v, u) not in transitions:
            transitions[(v, u)] = morphism_invert(m, inverses.get((v, u)))
    meta = {"source": source}
    atlas = Atlas(cover, n, transitions, genus=genus, name=head.get("name", ""), meta=meta)
    if not with_directives:
        return atlas
    return atlas, _directive(cp, "construction", "theta", atlas), _directive(cp, "twist", "g12", atlas)


def _directive(cp, section, key, atlas):
    if not cp.has_section(section):
        return None
    out = {}
    for name, text in cp[section].items():
        parts = name.split()
        if len(parts) != 3 or parts[0] != key:
            raise AtlasFormatError(f"[{section}] keys read '{key} SOURCE TARGET'")
        u, v = parts[1:]
        if (u, v) not in atlas.cover.pairs:
            raise ChartMismatch(f"[{section}] names an unknown pair ({u}, {v})")
        out[(u, v)] = _expr(text, atlas.cover.var(u), f"[{section}] {name}")
    return out


def _slot_key(comp, mono, n):
    theta = n in mono
    xi = [g for g in mono if g != n]
    if n < 10 and xi:
        digits = "".join(str(g + 1) for g in xi)
        if comp == EVEN:
            return ("f" if theta else "g") + digits
        return ("zeta" if theta else "psi") + digits
    return f"{'even' if comp == EVEN else 'odd'}: {monomial_name(mono, n)}"


def render_atlas(a: Atlas, pairs=None) -> str:
    """Text form of an atlas; by default only forward pairs are written and
    the loader restores the reverses by inversion."""
    lines = ["[atlas]", f"order = {a.n}"]
    if a.genus is not None:
        lines.append(f"genus = {a.genus}")
    if a.name:
        lines.append(f"name = {a.name}")
    for name, var in a.cover.charts:
        lines += ["", f"[chart {name}]", f"coordinate = {var}"]
    for u, v in pairs or a.cover.forward_pairs():
        m: Supermorphism = a[(u, v)]
        lines += ["", f"[pair {u} {v}]", f"f = {render_scalar(m.body)}", f"zeta = {render_scalar(m.zeta)}"]
        for comp, field in ((EVEN, m.even), (ODD, m.odd)):
            for mono, c in field.terms():
                if mono == () or mono == (a.n,):
                    continue
                lines.append(f"{_slot_key(comp, mono, a.n)} = {render_scalar(c)}")
    return "\n".join(lines) + "\n"


def write_atlas(a: Atlas, path) -> None:
    Path(path).write_text(render_atlas(a))


def load_cochain(path, twist: int | None = None) -> cech.CechCochain:
    return parse_cochain(Path(path).read_text(), twist)


def parse_cochain(text: str, twist: int | None = None) -> cech.CechCochain:
    """``[cochain]`` with ``degree``, ``twist`` and components ``U V = expr``
    (degree 1) or ``U = expr`` / ``V = expr`` (degree 0)."""
    cp = _read(text)
    if not cp.has_section("cochain"):
        raise AtlasFormatError("missing [cochain] section")
    sec = cp["cochain"]
    degree = _int(sec, "degree")
    k = twist if twist is not None else _int(sec, "twist")
    comps = {}
    for key, text in sec.items():
        if key in ("degree", "twist"):
            continue
        parts = key.split()
        if degree == 1 and len(parts) == 2:
            comps[tuple(parts)] = _expr(text, "x", f"cochain {key}")
        elif degree == 0 and len(parts) == 1:
            comps[parts[0]] = _expr(text, cech.COORDS.get(parts[0], "x"), f"cochain {key}")
        else:
            raise AtlasFormatError(f"component key {key!r} does not fit degree {degree}")
    return cech.CechCochain(degree, cech.LineBundleModel(k), comps)


def load_splitting(path, atlas: Atlas) -> SplittingMap:
    return parse_splitting(Path(path).read_text(), atlas)


def parse_splitting(text: str, atlas: Atlas) -> SplittingMap:
    cp = _read(text)
    charts = {}
    for names, sec in _sections(cp, "splitting"):
        if len(names) != 1 or names[0] not in atlas.cover.chart_names:
            raise ChartMismatch(f"splitting section {names} names an unknown chart")
        var = atlas.cover.var(names[0])
        values = {}
        for key in _SPLIT_FIELDS:
            values[key] = _expr(sec[key], var, f"splitting {names[0]}") if key in sec else RationalFunction.constant(0, var)
        unknown = set(sec) - set(_SPLIT_FIELDS)
        if unknown:
            raise AtlasFormatError(f"unknown splitting keys {sorted(unknown)}")
        charts[names[0]] = ChartSplitting(**values)
    missing = set(atlas.cover.chart_names) - set(charts)
    if missing:
        raise AtlasFormatError(f"splitting map misses charts {sorted(missing)}")
    return SplittingMap(charts)


def render_splitting(s: SplittingMap) -> str:
    lines = []
    for chart, c in s.charts.items():
        if lines:
            lines.append("")
        lines.append(f"[splitting {chart}]")
        lines += [f"{k} = {render_scalar(v)}" for k, v in c.fields().items()]
    return "\n".join(lines) + "\n"
