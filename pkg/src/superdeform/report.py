"""Check reports: per-entry residuals plus human and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .render import render_scalar


@dataclass(frozen=True)
class Entry:
    tag: str
    location: str
    residual: object  # RationalFunction, DiffPolynomial or GaussianRational
    monomial: str = ""

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    def rendered(self) -> str:
        return render_scalar(self.residual)

    def as_dict(self) -> dict:
        d = {
            "tag": self.tag,
            "location": self.location,
            "pass": self.passed,
            "residual": self.rendered(),
        }
        if self.monomial:
            d["monomial"] = self.monomial
        return d


@dataclass
class Report:
    command: str
    entries: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if not e.passed]

    def extend(self, other: "Report"):
        self.entries.extend(other.entries)
        self.notes.extend(n for n in other.notes if n not in self.notes)
        self.data.update(other.data)
        return self

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "pass": self.passed,
            "entries": [e.as_dict() for e in self.entries],
            "notes": list(self.notes),
            "data": self.data,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self, verbose: bool = False) -> str:
        lines = [f"== {self.command} =="]
        for e in self.entries:
            if e.passed and not verbose:
                continue
            mono = f" [{e.monomial}]" if e.monomial else ""
            status = "PASS" if e.passed else "FAIL"
            lines.append(f"{status} {e.tag} @ {e.location}{mono}: residual {e.rendered()}")
        n_fail = len(self.failures())
        lines.append(
            f"{len(self.entries)} checks, {n_fail} failed -> {'PASS' if self.passed else 'FAIL'}"
        )
        for key, value in self.data.items():
            if isinstance(value, dict):
                lines.append(f"{key}:")
                lines.extend(f"  {k} = {v}" for k, v in value.items())
            else:
                lines.append(f"{key}: {value}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines) + "\n"


def superfield_entries(tag: str, location: str, residual) -> list:
    """One entry per nonzero monomial of a residual superfield (a single
    passing entry when it vanishes)."""
    from .grassmann import monomial_name
    from .scalar import RationalFunction

    if residual.is_zero():
        return [Entry(tag, location, RationalFunction.constant(0, residual.var))]
    return [
        Entry(tag, location, c, monomial_name(m, residual.n)) for m, c in residual.terms()
    ]
