"""Command-line entry point.

Exit codes: 0 success / counterexample confirmed, 1 computational failure,
2 precondition violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .algebra import AlgebraSpec
from .exactfield import NoSuchRoot, derive_a_bar, is_prime
from .homology import resolution_report
from .modules import ModuleRep, cyclic_u_module, free_module, simple_module
from .properties import run_property_suite
from .verify import (
    FIDELITY_NOTE,
    FieldUnsuitable,
    PreconditionViolated,
    run_corollary_demo,
    run_counterexample,
)
from .variety import support_variety

EXIT_OK, EXIT_FAIL, EXIT_PRECONDITION = 0, 1, 2

DESIGNATOR_HELP = "module designator: k | free:RANK | cyclic:L1,...,Lc | file:PATH (modrep JSON)"


class BadDesignator(ValueError):
    pass


class UsageError(ValueError):
    def __init__(self, clause: str, message: str):
        super().__init__(message)
        self.clause = clause


@dataclass
class RunConfig:
    c: int
    a: int
    p: int
    q_override: int | None
    lam: tuple[int, ...]
    mu: tuple[int, ...]
    depth: int
    seed: int
    output: str | None
    fmt: str


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def validate(cfg: RunConfig) -> AlgebraSpec:
    if cfg.c < 2:
        raise UsageError("c>=2", f"number of generators c must be >= 2, got {cfg.c}")
    if cfg.a < 2:
        raise UsageError("a>=2", f"truncation exponent a must be >= 2, got {cfg.a}")
    if not is_prime(cfg.p) or cfg.p > 2**31 - 1:
        raise UsageError("p-prime", f"p must be a prime below 2^31, got {cfg.p}")
    a_bar = derive_a_bar(cfg.a, cfg.p)
    if a_bar == 1:
        raise UsageError(
            "a_bar>1",
            f"a_bar = a/gcd(a,p) = 1 for a={cfg.a}, p={cfg.p}: q would be 1 and the algebra "
            "degenerates to a commutative one; choose p not dividing a",
        )
    try:
        return AlgebraSpec.create(cfg.c, cfg.a, cfg.p, cfg.q_override)
    except NoSuchRoot as exc:
        raise FieldUnsuitable(
            f"primitive a_bar-th root of unity: {exc} (a_bar = a/gcd(a,p) = {a_bar})"
        ) from exc


def parse_designator(spec: AlgebraSpec, text: str) -> ModuleRep:
    kind, _, arg = text.partition(":")
    try:
        if kind == "k" and not arg:
            return simple_module(spec)
        if kind == "free":
            rank = int(arg)
            if rank < 0:
                raise BadDesignator("free rank must be >= 0")
            return free_module(spec, rank)
        if kind == "cyclic":
            lam = _ints(arg)
            if len(lam) != spec.c:
                raise BadDesignator(f"cyclic:lambda needs {spec.c} coordinates")
            if all(x % spec.p == 0 for x in lam):
                raise BadDesignator("cyclic:lambda must be nonzero")
            return cyclic_u_module(spec, lam)
        if kind == "file":
            data = json.loads(Path(arg).read_text())
            m = ModuleRep.from_dict(data)
            if m.spec != spec:
                raise BadDesignator(f"module file is over {m.spec.to_dict()}, not {spec.to_dict()}")
            return m
    except (ValueError, argparse.ArgumentTypeError, OSError) as exc:
        if isinstance(exc, BadDesignator):
            raise
        raise BadDesignator(f"{text!r}: {exc}") from exc
    raise BadDesignator(f"unknown module designator {text!r}; {DESIGNATOR_HELP}")


def cmd_algebra_info(cfg: RunConfig, spec: AlgebraSpec, args) -> tuple[dict, int]:
    return {
        "c": spec.c,
        "a": spec.a,
        "p": spec.p,
        "a_bar": spec.field.a_bar,
        "q": spec.q,
        "dim": spec.dim,
        "relations": [f"x{i}^{spec.a}" for i in range(1, spec.c + 1)]
        + [f"x{i}x{j} - {spec.q}*x{j}x{i}" for i in range(1, spec.c + 1) for j in range(i + 1, spec.c + 1)],
    }, EXIT_OK


def cmd_variety(cfg: RunConfig, spec: AlgebraSpec, args) -> tuple[dict, int]:
    m = parse_designator(spec, args.module)
    out = {"module": args.module, "dim": m.dim}
    out.update(support_variety(m, workers=args.workers).to_dict())
    out["note"] = FIDELITY_NOTE
    return out, EXIT_OK


def cmd_resolve(cfg: RunConfig, spec: AlgebraSpec, args) -> tuple[dict, int]:
    if cfg.depth < 5:
        raise UsageError("depth>=5", f"resolution depth must be >= 5 for a complexity fit, got {cfg.depth}")
    m = parse_designator(spec, args.module)
    out = {"module": args.module, "dim": m.dim, "depth": cfg.depth}
    out.update(resolution_report(m, cfg.depth))
    out["note"] = "complexity is a polynomial-growth fit over the Betti window, not a proof"
    return out, EXIT_OK


def cmd_counterexample(cfg: RunConfig, spec: AlgebraSpec, args) -> tuple[dict, int]:
    ce = run_counterexample(cfg.c, cfg.a, cfg.p, cfg.lam, cfg.mu, cfg.q_override, workers=args.workers)
    cor = run_corollary_demo(cfg.c, cfg.a, cfg.p, cfg.lam, cfg.mu, cfg.q_override)
    ok = ce.passed and cor["verdict"] == "PASS"
    return {"counterexample": ce.to_dict(), "corollary": cor, "verdict": "PASS" if ok else "FAIL"}, (
        EXIT_OK if ok else EXIT_FAIL
    )


def cmd_suite(cfg: RunConfig, spec: AlgebraSpec, args) -> tuple[dict, int]:
    report = run_property_suite(cfg.seed, args.cases, fault=args.fault)
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def render_table(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not _flat_list(val):
                lines.append(f"{pad}{key}:")
                lines.append(render_table(val, indent + 1))
            else:
                lines.append(f"{pad}{key:<28} {json.dumps(val, sort_keys=True)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict) and "property" in item:
                lines.append(f"{pad}{item['status']:<5} {item['property']:<30} cases={item['cases']} failures={item['failures']}")
            else:
                lines.append(render_table(item, indent) if isinstance(item, (dict, list)) else f"{pad}{item}")
    return "\n".join(lines)


def _flat_list(val) -> bool:
    return isinstance(val, list) and all(not isinstance(x, dict) for x in val)


def emit(obj: dict, cfg: RunConfig) -> None:
    text = render_table(obj) if cfg.fmt == "table" else json.dumps(obj, sort_keys=True, indent=2)
    if cfg.output and cfg.output != "-":
        Path(cfg.output).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


COMMANDS = {
    "algebra": cmd_algebra_info,
    "variety": cmd_variety,
    "resolve": cmd_resolve,
    "counterexample": cmd_counterexample,
    "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--c", type=int, default=2, help="number of generators (default 2)")
    common.add_argument("--a", type=int, default=3, help="truncation exponent (default 3)")
    common.add_argument("--p", type=int, default=7, help="prime field size (default 7)")
    common.add_argument("--q", type=int, default=None, help="override the primitive root (default: smallest)")
    common.add_argument("--lambda", dest="lam", type=_ints, default=None, help="point lambda, e.g. 1,1 (default all ones)")
    common.add_argument("--mu", type=_ints, default=None, help="twist mu, e.g. 1,3 (default 1,3,...)")
    common.add_argument("--depth", type=int, default=10, help="resolution depth (default 10)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", default=None, help="output file (default stdout)")
    common.add_argument("--format", dest="fmt", choices=["json", "table"], default="json")
    common.add_argument("--workers", type=int, default=1, help="threads for projective scans")

    parser = argparse.ArgumentParser(
        prog="qcivar",
        description=(
            "Quantum complete intersections, rank varieties and the bimodule tensor "
            "counterexample. Defaults c=2, a=3, p=7, lambda=(1,1), mu=(1,3): the smallest "
            "case with a > 2 and a twist whose cubes differ."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("algebra", parents=[common], help="dimension, a_bar and q of A")
    for name, helptext in [("variety", "scan the support variety of a module"),
                           ("resolve", "minimal resolution, Betti numbers and complexity")]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--module", default="k", help=DESIGNATOR_HELP)
    sub.add_parser("counterexample", parents=[common], help="V(B (x) M) not contained in V(M), plus the intersection formula")
    sp = sub.add_parser("suite", parents=[common], help="structural property suite")
    sp.add_argument("--cases", type=int, default=50, help="cases per randomized property")
    sp.add_argument("--fault", choices=["rank-threshold"], default=None, help=argparse.SUPPRESS)
    return parser


def make_config(args) -> RunConfig:
    c = args.c
    lam = args.lam if args.lam is not None else (1,) * c
    mu = args.mu if args.mu is not None else (1, 3) + (1,) * (c - 2)
    return RunConfig(c, args.a, args.p, args.q, tuple(lam), tuple(mu), args.depth, args.seed, args.output, args.fmt)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = make_config(args)
    try:
        spec = validate(cfg)
        result, code = COMMANDS[args.command](cfg, spec, args)
    except UsageError as exc:
        emit({"error": "PreconditionViolated", "clause": exc.clause, "message": str(exc)}, cfg)
        return EXIT_PRECONDITION
    except PreconditionViolated as exc:
        emit({"error": "PreconditionViolated", "clause": exc.clause, "message": str(exc)}, cfg)
        return EXIT_PRECONDITION
    except FieldUnsuitable as exc:
        emit({"error": "FieldUnsuitable", "clause": "a_bar | p-1", "message": str(exc)}, cfg)
        return EXIT_PRECONDITION
    except BadDesignator as exc:
        emit({"error": "BadDesignator", "clause": "module-designator", "message": str(exc)}, cfg)
        return EXIT_PRECONDITION
    except ArithmeticError as exc:  # pragma: no cover
        emit({"error": type(exc).__name__, "message": str(exc)}, cfg)
        return EXIT_FAIL
    emit(result, cfg)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
