"""The full battery of checks over the preset scenarios and the corpus."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .algebra import RadicalUnavailable, restrict_module
from .linalg import Field
from .presets import SCENARIOS, corpus, scenario
from .report import CheckReport
from . import verify as V


@dataclass
class SuiteConfig:
    N: int = 4
    characteristic: int = 0
    timing: bool = False
    scenarios: tuple = tuple(SCENARIOS)
    skip_slow: bool = True                # coefficient-free checks on T_2[Z/2] take tens of seconds
    corpus: bool = True
    slow: tuple = dc_field(default=("t2-in-t2z2",))


def _guard(fn, *args, **kw) -> CheckReport:
    try:
        return fn(*args, **kw)
    except (V.PreconditionError, RadicalUnavailable) as exc:
        rep = CheckReport(fn.__name__.replace("_", "-"))
        rep.verdict = "inapplicable"
        rep.note(str(exc))
        return rep


def scenario_reports(name: str, cfg: SuiteConfig) -> list:
    sc = scenario(name, Field(cfg.characteristic))
    N, t = cfg.N, cfg.timing
    out = []
    if sc.ideal is not None:
        out.append(V.check_hunital(sc.ideal, N, timing=t))
        if sc.morphism is None:
            for x, y in sc.tor_pairs():
                out.append(_guard(V.check_prop_extension, sc.algebra, sc.ideal, x, y, N, timing=t))
        elif sc.ideal.ambient is sc.morphism.source:
            for x, y in sc.tor_pairs():
                xb, yb = restrict_module(x, sc.morphism), restrict_module(y, sc.morphism)
                out.append(_guard(V.check_prop_extension, sc.morphism.source, sc.ideal, xb, yb, N, timing=t))
    phi = sc.morphism
    if phi is None:
        return out
    out.append(_guard(V.check_rflat, phi, timing=t))
    for x, y in sc.tor_pairs():
        out.append(_guard(V.check_jz_tor, phi, x, y, N, timing=t))
    rights = list(sc.right_modules.values())
    for x in rights:
        for z in rights:
            out.append(_guard(V.check_jz_ext, phi, x, z, N, timing=t))
    if phi.is_injective:
        if sc.bimodule is not None:
            out.append(_guard(V.check_jz_hh, phi, sc.bimodule, N, timing=t))
        if not (cfg.skip_slow and name in cfg.slow):
            out.append(_guard(V.check_jz_hc, phi, N, timing=t))
    if not (cfg.skip_slow and name in cfg.slow):
        out.append(_guard(V.check_all_in_one, phi, N, timing=t))
    for r in out:
        r.inputs.setdefault("preset", name)
    return out


def corpus_reports(cfg: SuiteConfig) -> list:
    out = []
    for a, rights, _ in corpus(Field(cfg.characteristic)):
        out.append(V.oracle_report(a, cfg.N, timing=cfg.timing))
        for x in rights.values():
            for z in rights.values():
                out.append(V.ext_duality_report(a, x, z, cfg.N, timing=cfg.timing))
    return out


def run_suite(cfg: SuiteConfig | None = None) -> list:
    cfg = cfg or SuiteConfig()
    out = []
    for name in cfg.scenarios:
        out += scenario_reports(name, cfg)
    if cfg.corpus:
        out += corpus_reports(cfg)
    return out


def suite_json(reports: list) -> str:
    return json.dumps({"reports": [r.to_json() for r in reports]}, indent=2, sort_keys=True)
