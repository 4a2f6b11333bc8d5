"""Structured check reports and their JSON/text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

VERDICTS = ("pass", "fail", "inapplicable", "ledger-consistent", "inconclusive-above-truncation")


@dataclass
class Identity:
    description: str
    lhs: Any
    rhs: Any
    relation: str = "="      # "=", "<=" or ">="
    binding: bool = True     # non-binding identities are reported but do not decide the verdict

    @property
    def ok(self) -> bool:
        if self.relation == "=":
            return self.lhs == self.rhs
        if self.relation == "<=":
            return self.lhs <= self.rhs
        if self.relation == ">=":
            return self.lhs >= self.rhs
        raise ValueError(f"unknown relation {self.relation!r}")

    def to_json(self) -> dict:
        return {"description": self.description, "lhs": self.lhs, "rhs": self.rhs,
                "relation": self.relation, "pass": self.ok, "binding": self.binding}


@dataclass
class CheckReport:
    check: str
    inputs: dict = field(default_factory=dict)
    field_char: int = 0
    max_degree: int = 0
    certified_degree: int = 0
    certified_from: int = 0
    tables: dict = field(default_factory=dict)          # name -> dims over the certified window
    uncertified: dict = field(default_factory=dict)     # name -> {degree: dim} beyond the window
    identities: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    verdict: str | None = None
    seconds: float | None = None
    children: list = field(default_factory=list)        # sub-reports (preconditions)

    # ---- building
    def table(self, name: str, dims: list, lo: int | None = None):
        """Record dims for degrees lo, lo+1, ..; entries outside the window go to ``uncertified``."""
        lo = self.certified_from if lo is None else lo
        keep, extra = [], {}
        for k, d in enumerate(dims):
            n = lo + k
            if self.certified_from <= n <= self.certified_degree:
                keep.append(d)
            else:
                extra[str(n)] = d
        self.tables[name] = keep
        if extra:
            self.uncertified[name] = extra
        return keep

    def identity(self, description: str, lhs, rhs, relation: str = "=", binding: bool = True) -> bool:
        ident = Identity(description, lhs, rhs, relation, binding)
        self.identities.append(ident)
        return ident.ok

    def note(self, text: str):
        self.notes.append(text)

    @property
    def all_hold(self) -> bool:
        return all(i.ok for i in self.identities if i.binding)

    @property
    def failures(self) -> list:
        return [i for i in self.identities if i.binding and not i.ok]

    @property
    def observations(self) -> list:
        """Non-binding identities that do not hold."""
        return [i for i in self.identities if not i.binding and not i.ok]

    def finish(self, success: str = "pass") -> "CheckReport":
        if self.verdict is None:
            self.verdict = success if self.all_hold else "fail"
        return self

    # ---- output
    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "inputs": self.inputs,
            "field_char": self.field_char,
            "max_degree": self.max_degree,
            "certified_degree": self.certified_degree,
            "certified_from": self.certified_from,
            "tables": self.tables,
            "uncertified": self.uncertified,
            "identities": [i.to_json() for i in self.identities],
            "notes": self.notes,
            "verdict": self.verdict,
            "seconds": self.seconds,
        }
        if self.children:
            out["preconditions"] = [c.to_json() for c in self.children]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_text(self) -> str:
        lines = [f"check: {self.check}", f"verdict: {self.verdict}"]
        for k, v in self.inputs.items():
            lines.append(f"  {k}: {v}")
        lines.append(f"field characteristic {self.field_char}, truncation N = {self.max_degree}, "
                     f"certified degrees {self.certified_from}..{self.certified_degree}")
        if self.tables:
            lines.append("tables (certified):")
            width = max(len(n) for n in self.tables)
            for name, dims in self.tables.items():
                lines.append(f"  {name.ljust(width)}  {dims}")
        if self.uncertified:
            lines.append("uncertified (above truncation, not claimed):")
            for name, extra in self.uncertified.items():
                lines.append(f"  {name}  {extra}")
        bad, seen = self.failures, self.observations
        lines.append(f"identities: {len(self.identities) - len(bad) - len(seen)}/{len(self.identities)} hold")
        for i in bad:
            lines.append(f"  FAILED {i.description}: {i.lhs} {i.relation} {i.rhs}")
        for i in seen:
            lines.append(f"  does not hold (non-binding) {i.description}: {i.lhs} {i.relation} {i.rhs}")
        for c in self.children:
            lines.append(f"precondition {c.check}: {c.verdict}")
        for n in self.notes:
            lines.append(f"note: {n}")
        if self.seconds is not None:
            lines.append(f"seconds: {self.seconds:.3f}")
        return "\n".join(lines)


def exit_code(reports: list) -> int:
    verdicts = {r.verdict for r in reports}
    if "fail" in verdicts:
        return 1
    if "inapplicable" in verdicts or "inconclusive-above-truncation" in verdicts:
        return 2
    return 0
