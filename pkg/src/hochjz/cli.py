"""Command-line interface: ``hochjz <subcommand> [options]``.

Exit codes: 0 all checks pass (or ledger-consistent), 1 a check failed,
2 inapplicable or a precondition failed, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .algebra import (
    Algebra, AlgebraMorphism, Ideal, Module, RadicalUnavailable, SpecError, regular_module, restrict_module,
)
from .linalg import Field
from .presets import PRESETS, SCENARIOS, build_preset, scenario
from .report import exit_code
from .specs import load_json, parse_algebra, parse_ideal, parse_module, parse_morphism, parse_span, parse_subalgebra
from .suite import SuiteConfig, run_suite, suite_json
from . import verify as V

COMMANDS = ("hh", "hc", "tor", "ext", "check-hunital", "check-rflat", "check-prop21", "check-jz-tor",
            "check-jz-ext", "check-jz-hh", "check-jz-hc", "check-all-in-one", "presets", "suite")

EXIT_PASS, EXIT_FAIL, EXIT_INAPPLICABLE, EXIT_INPUT = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class Inputs:
    field: Field
    algebra: Algebra | None = None
    morphism: AlgebraMorphism | None = None
    ideal: Ideal | None = None
    modules: list = dc_field(default_factory=list)
    preset: object = None            # a Scenario when --preset names one
    radical: list | None = None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", metavar="FILE", help="algebra spec (JSON structure constants)")
    common.add_argument("--subalgebra", metavar="FILE", help="subalgebra B of A as a list of vectors")
    common.add_argument("--module", metavar="FILE", action="append", default=[],
                        help="module spec; repeat for X then Y (or Z)")
    common.add_argument("--morphism", metavar="FILE", help='{"source": algebra, "images": [...]} into A')
    common.add_argument("--ideal", metavar="FILE", help="two-sided ideal as a list of vectors")
    common.add_argument("--radical", metavar="FILE", help="basis of the radical of B (needed in characteristic p)")
    common.add_argument("--preset", metavar="NAME", help="named scenario or algebra (see `presets`)")
    common.add_argument("--max-degree", type=int, default=4, metavar="N", help="truncation degree N (default 4)")
    common.add_argument("--field", type=int, default=None, metavar="P", help="0 or a prime (default 0)")
    common.add_argument("--report", choices=("json", "text"), default="text")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="record wall-clock seconds in reports")
    common.add_argument("--budget", type=int, default=200_000,
                        help="warn when a chain group is larger than this (default 200000)")
    p = argparse.ArgumentParser(prog="hochjz", description="Bar, Hochschild and cyclic complexes of "
                                "finite-dimensional algebras, and checks of their long exact sequences.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "hh": "Hochschild homology table (relative too with --subalgebra)",
        "hc": "cyclic homology table",
        "tor": "Tor table of a right module X and a left module Y",
        "ext": "Ext table of right modules X and Z",
        "check-hunital": "acyclicity of the Wodzicki complex of an ideal",
        "check-rflat": "flatness of A/B over B",
        "check-prop21": "Tor over B against Tor over B/I for an H-unital ideal I",
        "check-jz-tor": "Jacobi-Zariski sequence for Tor",
        "check-jz-ext": "Jacobi-Zariski sequence for Ext",
        "check-jz-hh": "Jacobi-Zariski sequence for Hochschild homology with coefficients",
        "check-jz-hc": "coefficient-free Hochschild and cyclic homology sequences",
        "check-all-in-one": "mapping cone of CH(B) -> CH(A) against HH(ker) and HH(A|B)",
        "presets": "list the named presets",
        "suite": "run every check over the presets and the corpus",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=helps[name], description=helps[name])
        if name == "suite":
            sp.add_argument("--all", action="store_true", help="include the slow coefficient-free runs")
    return p


# ---------------------------------------------------------------- input resolution

def _unwrap(x):
    return getattr(x, "algebra", x)


def resolve(args) -> Inputs:
    field = Field(args.field) if args.field is not None else None
    inp = Inputs(field or Field(0))
    if args.preset:
        if args.algebra:
            raise InputError("--preset and --algebra are mutually exclusive")
        if args.preset in SCENARIOS:
            sc = scenario(args.preset, inp.field)
            inp.preset = sc
            inp.algebra, inp.morphism, inp.ideal = sc.algebra, sc.morphism, sc.ideal
        elif args.preset in PRESETS:
            inp.algebra = _unwrap(build_preset(args.preset, inp.field))
        else:
            raise InputError(f"unknown preset {args.preset!r}; run `hochjz presets`")
    elif args.algebra:
        inp.algebra = parse_algebra(load_json(args.algebra), field, Path(args.algebra).stem, "algebra")
        inp.field = inp.algebra.field
    a = inp.algebra
    if args.subalgebra or args.morphism:
        if a is None:
            raise InputError("--subalgebra/--morphism need --algebra or --preset")
        if args.subalgebra and args.morphism:
            raise InputError("give either --subalgebra or --morphism")
        if args.subalgebra:
            inp.morphism = parse_subalgebra(load_json(args.subalgebra), a)
        else:
            inp.morphism = parse_morphism(load_json(args.morphism), a)
    if args.ideal:
        if a is None:
            raise InputError("--ideal needs --algebra or --preset")
        inp.ideal = parse_ideal(load_json(args.ideal), a)
    if args.radical:
        if inp.morphism is None:
            raise InputError("--radical needs a subalgebra or morphism")
        b = inp.morphism.source if inp.morphism.is_injective else None
        if b is None:
            raise InputError("--radical is only supported for subalgebra inclusions")
        inp.radical = parse_span(load_json(args.radical), b, "radical")
    for k, path in enumerate(args.module):
        if a is None:
            raise InputError("--module needs --algebra or --preset")
        inp.modules.append(parse_module(load_json(path), a, Path(path).stem, f"module[{k}]"))
    return inp


def _need(x, what: str):
    if x is None:
        raise InputError(f"this command needs {what}")
    return x


def _pairs(inp: Inputs, right_second: bool) -> list:
    """(X, Y) pairs from --module flags, or every preset pair."""
    if inp.modules:
        if len(inp.modules) != 2:
            raise InputError("give exactly two --module files (X then Y/Z)")
        x, y = inp.modules
        if x.right is None:
            raise InputError("module[0] must be a right (or bi) module")
        if right_second and y.right is None:
            raise InputError("module[1] must be a right (or bi) module")
        if not right_second and y.left is None:
            raise InputError("module[1] must be a left (or bi) module")
        return [(x.as_right() if x.parity == "bi" else x,
                 (y.as_right() if right_second else y.as_left()) if y.parity == "bi" else y)]
    sc = inp.preset
    if sc is None:
        raise InputError("this command needs two --module files or a scenario preset")
    rights = list(sc.right_modules.values())
    if right_second:
        return [(x, z) for x in rights for z in rights]
    return sc.tor_pairs()


def _bimodule(inp: Inputs) -> Module | None:
    if inp.modules:
        m = inp.modules[0]
        if m.parity != "bi":
            raise InputError("module[0] must be a bimodule")
        return m
    if inp.preset is not None and inp.preset.bimodule is not None:
        return inp.preset.bimodule
    return None


def _estimate(cmd: str, inp: Inputs, N: int) -> int:
    a = inp.algebra
    if a is None:
        return 0
    mdim = max([m.dim for m in inp.modules] or [1])
    if cmd in ("hc", "check-jz-hc"):
        return sum(a.dim ** (q + 1) for q in range(N + 1))
    if cmd in ("hh", "check-jz-hh", "check-all-in-one"):
        return max(mdim, a.dim) * a.dim ** N
    return mdim * mdim * a.dim ** N


def _cfg(inp: Inputs, N: int) -> V.CheckConfig:
    return V.CheckConfig(N, radical_basis=inp.radical)


def run_command(cmd: str, inp: Inputs, N: int, timing: bool) -> list:
    a = inp.algebra
    cfg = _cfg(inp, N)
    if cmd == "hh":
        incl = inp.morphism if inp.morphism is not None and inp.morphism.is_injective else None
        m = inp.modules[0] if inp.modules else None
        return [V.hh_report(_need(a, "--algebra or --preset"), m, N, incl, timing=timing)]
    if cmd == "hc":
        return [V.hc_report(_need(a, "--algebra or --preset"), N, timing=timing)]
    if cmd == "tor":
        incl = inp.morphism if inp.morphism is not None and inp.morphism.is_injective else None
        return [V.tor_report(_need(a, "--algebra"), x, y, N, incl, timing=timing) for x, y in _pairs(inp, False)]
    if cmd == "ext":
        incl = inp.morphism if inp.morphism is not None and inp.morphism.is_injective else None
        return [V.ext_report(_need(a, "--algebra"), x, z, N, incl, timing=timing) for x, z in _pairs(inp, True)]
    if cmd == "check-hunital":
        i = inp.ideal
        if i is None and inp.morphism is not None:
            i = inp.morphism.kernel()
        return [V.check_hunital(_need(i, "--ideal (or a morphism whose kernel is used)"), N, timing=timing)]
    if cmd == "check-rflat":
        return [V.check_rflat(_need(inp.morphism, "--subalgebra or --morphism"), radical_basis=inp.radical,
                              timing=timing)]
    if cmd == "check-prop21":
        i = _need(inp.ideal, "--ideal")
        b = i.ambient
        out = []
        for x, y in _pairs(inp, False):
            if x.algebra is not b and inp.morphism is not None and inp.morphism.source is b:
                x, y = restrict_module(x, inp.morphism), restrict_module(y, inp.morphism)
            out.append(V.check_prop_extension(b, i, x, y, N, timing=timing))
        return out
    phi = _need(inp.morphism, "--subalgebra or --morphism")
    if cmd == "check-jz-tor":
        return [V.check_jz_tor(phi, x, y, N, cfg, timing=timing) for x, y in _pairs(inp, False)]
    if cmd == "check-jz-ext":
        return [V.check_jz_ext(phi, x, z, N, cfg, timing=timing) for x, z in _pairs(inp, True)]
    if cmd == "check-jz-hh":
        m = _bimodule(inp) or regular_module(phi.target, "bi")
        return [V.check_jz_hh(phi, m, N, cfg, timing=timing)]
    if cmd == "check-jz-hc":
        return [V.check_jz_hc(phi, N, cfg, timing=timing)]
    if cmd == "check-all-in-one":
        return [V.check_all_in_one(phi, N, cfg, timing=timing)]
    raise InputError(f"unknown command {cmd!r}")


def _presets_listing() -> dict:
    out = {"scenarios": {}, "algebras": dict(PRESETS)}
    for name in SCENARIOS:
        sc = scenario(name)
        out["scenarios"][name] = {"description": sc.description, "kind": sc.kind}
    return out


def _render(reports: list, fmt: str) -> str:
    if fmt == "json":
        if len(reports) == 1:
            return json.dumps(reports[0].to_json(), indent=2, sort_keys=True) + "\n"
        return suite_json(reports) + "\n"
    return "\n\n".join(r.to_text() for r in reports) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list | None = None) -> int:
    args = build_parser().parse_args(argv)
    cmd = args.command
    if cmd == "presets":
        listing = _presets_listing()
        if args.report == "json":
            text = json.dumps(listing, indent=2, sort_keys=True) + "\n"
        else:
            lines = ["scenarios:"]
            lines += [f"  {k:14s} [{v['kind']}] {v['description']}" for k, v in listing["scenarios"].items()]
            lines.append("algebras:")
            lines += [f"  {k:22s} {v}" for k, v in listing["algebras"].items()]
            text = "\n".join(lines) + "\n"
        _emit(text, args.out)
        return EXIT_PASS
    if args.max_degree < 1:
        print("error: --max-degree must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    if cmd == "suite":
        cfg = SuiteConfig(N=args.max_degree, characteristic=args.field or 0, timing=args.timing,
                          skip_slow=not args.all)
        try:
            reports = run_suite(cfg)
        except RadicalUnavailable as exc:
            print(f"inapplicable: {exc}", file=sys.stderr)
            return EXIT_INAPPLICABLE
        _emit(suite_json(reports) + "\n" if args.report == "json" else _render(reports, "text"), args.out)
        return EXIT_FAIL if any(r.verdict == "fail" and r.check not in ("check-hunital", "check-rflat")
                                for r in reports) else EXIT_PASS
    try:
        inp = resolve(args)
        size = _estimate(cmd, inp, args.max_degree)
        if size > args.budget:
            print(f"warning: the largest chain group has about {size} dimensions "
                  f"(budget {args.budget}); this may be slow", file=sys.stderr)
        reports = run_command(cmd, inp, args.max_degree, args.timing)
    except (SpecError, InputError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (V.PreconditionError, RadicalUnavailable) as exc:
        print(f"inapplicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    _emit(_render(reports, args.report), args.out)
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
