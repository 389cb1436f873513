"""
Supergrade - Command Line Entry Point
Version 1.0.0
- check: identity suite, annihilator and s-nilindex of an algebra file
- gr / natgrade: natural gradation layers and the naturally graded decision
- catalog list/show: the built-in laws, models and cochains
- classify list/run: the scripted classification scenarios

Exit codes: 0 all verdicts pass, 1 a verdict fails, 2 bad input, 3 internal error.
"""

import argparse
import random
import sys
import time
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Initialize Sentry as early as possible so import-time errors are captured.
# No PII is collected; algebra files stay local.
import sentry_sdk

from config import DEFAULT_SEED, ENVIRONMENT, MAX_DIM, SEED, SENTRY_DSN, TOOL_VERSION, logger

if SENTRY_DSN:
    sentry_sdk.init(
        dsn=SENTRY_DSN,
        traces_sample_rate=0.1,
        send_default_pii=False,
        environment=ENVIRONMENT,
        release=TOOL_VERSION,
    )

from supergrade import catalog, classify
from supergrade.deform import Cochain2, deform, is_infinitesimal_deformation, weight
from supergrade.errors import ArgumentRangeError, PreconditionError, SupergradeError
from supergrade.files import algebra_to_dict, cochain_to_dict, dump_algebra, dump_cochain, load_any
from supergrade.gradation import grading_defects, is_naturally_graded, natural_layers, s_nilindex
from supergrade.report import Verdict, build_report, emit
from supergrade.superalg import (
    LEIBNIZ,
    LIE,
    SuperAlgebra,
    check_identity,
    check_super_leibniz,
    ideal_generated,
    instantiate,
    is_lie_superalgebra,
    retag,
    right_annihilator,
    skew_ideal,
)

Outcome = Tuple[List[Verdict], Dict[str, Any], List[str]]


# ============================================================================
# HELPER FUNCTIONS
# ============================================================================

def _cap(alg: SuperAlgebra, max_dim: int) -> None:
    if alg.dim > max_dim:
        raise ArgumentRangeError(
            f"{alg.name} has dimension {alg.dim}, above the --max-dim cap {max_dim}",
            {"dim": alg.dim, "max_dim": max_dim},
        )


def _load(path: str, max_dim: int) -> SuperAlgebra:
    """An algebra file, or the deformed law base + c of a cochain file."""
    built = load_any(path)
    alg = deform(built.base, built) if isinstance(built, Cochain2) else built
    _cap(alg, max_dim)
    return alg


def _identity_verdict(alg: SuperAlgebra) -> Tuple[Verdict, List[Dict]]:
    violations = check_identity(alg)
    name = "super jacobi" if alg.kind == LIE else "super leibniz"
    detail = f"{len(violations)} failing triple(s), first {violations[0].label()}" if violations else "holds"
    return Verdict(name, not violations, detail), [v.to_dict() for v in violations]


def _sample_point(alg: SuperAlgebra, seed: int) -> Dict[str, int]:
    rng = random.Random(seed)
    return {p: rng.choice([-3, -2, -1, 1, 2, 3, 5]) for p in alg.parameters}


# ============================================================================
# COMMANDS
# ============================================================================

def cmd_check(args) -> Outcome:
    built = load_any(args.path)
    verdicts: List[Verdict] = []
    data: Dict[str, Any] = {}
    body: List[str] = []

    if isinstance(built, Cochain2):
        w = weight(built)
        declared = built.declared_weight
        verdicts.append(Verdict("infinitesimal deformation", is_infinitesimal_deformation(built),
                                f"{built.name} on {built.base.name}"))
        if declared is not None:
            verdicts.append(Verdict("declared weight", w == declared, f"declared {declared}, computed {w}"))
        data["cochain"] = {"name": built.name, "base": built.base.name, "weight": w,
                           "declared_weight": declared}
        alg = deform(built.base, built)
    else:
        alg = built
    _cap(alg, args.max_dim)
    body.append(str(alg))

    identity, violations = _identity_verdict(alg)
    verdicts.append(identity)
    data.update({"algebra": alg.name, "kind": alg.kind, "dims": [alg.even_dim, alg.odd_dim],
                 "violations": violations})

    if args.require_lie:
        verdicts.append(Verdict("lie superalgebra", is_lie_superalgebra(alg), "--require-lie"))
    if args.require_leibniz:
        as_leibniz = retag(alg, LEIBNIZ)
        verdicts.append(Verdict("leibniz superalgebra", not check_super_leibniz(as_leibniz), "--require-leibniz"))

    concrete = alg
    if alg.is_parametric():
        point = _sample_point(alg, args.seed)
        concrete = instantiate(alg, point)
        data["sample_point"] = point
        body.append(f"structure checked at {point} (seed {args.seed})")
        logger.info(f"[CLI] {alg.name} is parametric; structure sampled at {point}")

    try:
        p, q = s_nilindex(concrete)
        data["s_nilindex"] = [p, q]
        verdicts.append(Verdict("nilpotent", True, f"s-nilindex ({p},{q})"))
    except PreconditionError as e:
        data["s_nilindex"] = None
        verdicts.append(Verdict("nilpotent", False, e.message))

    if concrete.kind == LEIBNIZ:
        ann = right_annihilator(concrete)
        data["annihilator"] = ann.describe()
        verdicts.append(Verdict("Ann two-sided ideal",
                                ann.contains(ideal_generated(concrete, ann.vectors())),
                                f"dim Ann = ({ann.even_dim}|{ann.odd_dim})"))
        verdicts.append(Verdict("skew ideal in Ann", ann.contains(skew_ideal(concrete)), ""))
    return verdicts, data, body


def cmd_gr(args) -> Outcome:
    alg = _load(args.path, args.max_dim)
    layers = natural_layers(alg)
    defects = grading_defects(alg, layers)
    natural = is_naturally_graded(alg)
    data = {
        "layers": layers.to_dict(),
        "graded": not defects,
        "violations": [d.to_dict() for d in defects],
        "naturally_graded": natural.naturally_graded,
        "witness": natural.witness.to_dict() if natural.witness else None,
    }
    body = [f"layer {d}: even {e} odd {o}" for d, (e, o) in enumerate(layers.layout(), start=1)]
    detail = "graded in the flag basis" if not defects else defects[0].describe()
    return [Verdict("gr graded", not defects, detail)], data, body


def cmd_natgrade(args) -> Outcome:
    alg = _load(args.path, args.max_dim)
    result = is_naturally_graded(alg)
    return [Verdict("naturally graded", result.naturally_graded, result.reason)], result.to_dict(), []


def _catalog_args(args) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    if args.n is not None:
        out["n"] = args.n
    if args.m is not None:
        out["m"] = args.m
    for item in args.arg or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise ArgumentRangeError(f"--arg expects key=value, got {item!r}")
        out[key] = int(value) if value.lstrip("-").isdigit() else value
    if args.gamma:
        gammas = {}
        for item in args.gamma:
            key, sep, value = item.partition("=")
            if not sep:
                raise ArgumentRangeError(f"--gamma expects gammaN=value, got {item!r}")
            gammas[key] = value
        out["gammas"] = gammas
    return out


def cmd_catalog_list(args) -> Outcome:
    records = catalog.list_entries(kind=args.kind, n=args.n, m=args.m, role=None if args.role == "all" else args.role)
    body = [
        f"{r.id:<24} {r.kind:<8} ({r.dims[0]},{r.dims[1]}) {r.title}"
        + (f"  [erratum: {r.erratum}]" if r.erratum else "")
        for r in records
    ]
    return [], {"entries": [r.to_dict() for r in records]}, body


def cmd_catalog_show(args) -> Outcome:
    params = _catalog_args(args)
    record = catalog.entry(args.id, **params)
    built = record.build()
    if isinstance(built, Cochain2):
        document = cochain_to_dict(built)
        _cap(built.base, args.max_dim)
        if args.out:
            dump_cochain(built, args.out)
    else:
        document = algebra_to_dict(built)
        _cap(built, args.max_dim)
        if args.out:
            dump_algebra(built, args.out)
    body = [str(built.law if isinstance(built, Cochain2) else built)]
    if record.erratum:
        body.append(f"erratum: {record.erratum}")
    return [], {"entry": record.to_dict(), "algebra": document}, body


def cmd_classify_list(args) -> Outcome:
    rows = classify.list_scenarios()
    aliases = {sid: [a for a, target in classify.ALIASES.items() if target == sid] for sid, _ in rows}
    data = {"scenarios": [{"id": i, "title": t, "aliases": aliases[i]} for i, t in rows]}
    body = [f"{i:<24} {t}" + (f"  (also {', '.join(aliases[i])})" if aliases[i] else "") for i, t in rows]
    return [], data, body


def cmd_classify_run(args) -> Outcome:
    result = classify.run_scenario(args.id, args.source)
    body = [f"{result.scenario.title} [{result.source}]"]
    body += [f"  branch {b.describe()}" for b in result.branches]
    body += [f"  dead   {b.describe()}  ({b.contradiction})" for b in result.dead]
    for law in result.laws:
        found = law.entry.id if law.entry else "no catalog match"
        body.append(f"  law {law.law.name} -> {found}" + ("" if law.identity_ok else
                                                          f" (identity fails at {law.violations[0].label()})"))
    detail = f"expected {result.scenario.expectation()}, got {result.outcome}"
    return [Verdict(result.scenario.id, result.ok, detail)], result.to_dict(), body


# ============================================================================
# ARGUMENT PARSING
# ============================================================================

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--seed", type=int, default=None, help=f"seed for sampled checks (default {DEFAULT_SEED})")
    p.add_argument("--max-dim", type=int, default=None, help="cap on n+m of any algebra handled")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="supergrade", description="Naturally graded Lie and Leibniz superalgebras")
    ap.add_argument("--version", action="version", version=f"supergrade {TOOL_VERSION}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", help="identity suite, annihilator and s-nilindex of a file")
    p.add_argument("path")
    p.add_argument("--require-lie", action="store_true")
    p.add_argument("--require-leibniz", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gr", help="natural gradation layers of a file")
    p.add_argument("path")
    _common(p)
    p.set_defaults(func=cmd_gr)

    p = sub.add_parser("natgrade", help="decide whether a file's law is naturally graded")
    p.add_argument("path")
    _common(p)
    p.set_defaults(func=cmd_natgrade)

    cat = sub.add_parser("catalog", help="built-in laws").add_subparsers(dest="action", required=True)
    p = cat.add_parser("list")
    p.add_argument("--kind", choices=[LIE, LEIBNIZ])
    p.add_argument("--role", choices=list(catalog.ROLES) + ["all"], default=catalog.LAW)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    _common(p)
    p.set_defaults(func=cmd_catalog_list)
    p = cat.add_parser("show")
    p.add_argument("id")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--arg", action="append", metavar="KEY=VALUE")
    p.add_argument("--gamma", action="append", metavar="gammaN=VALUE")
    p.add_argument("--out", help="also write the algebra file here")
    _common(p)
    p.set_defaults(func=cmd_catalog_show)

    cls = sub.add_parser("classify", help="classification scenarios").add_subparsers(dest="action", required=True)
    p = cls.add_parser("list")
    _common(p)
    p.set_defaults(func=cmd_classify_list)
    p = cls.add_parser("run")
    p.add_argument("id")
    p.add_argument("--source", choices=list(classify.SOURCES))
    _common(p)
    p.set_defaults(func=cmd_classify_run)
    return ap


def _command_name(args) -> str:
    action = getattr(args, "action", None)
    return f"{args.cmd} {action}" if action else args.cmd


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.seed = SEED if args.seed is None else args.seed
    args.max_dim = MAX_DIM if args.max_dim is None else args.max_dim
    command = _command_name(args)
    started = time.perf_counter()
    logger.debug(f"[CLI] {command} {argv}")

    try:
        verdicts, data, body = args.func(args)
        report = build_report(command, argv, verdicts, data, started)
    except SupergradeError as e:
        logger.warning(f"[CLI] {command}: {e.message}")
        report = build_report(command, argv, [], None, started, error=e)
        body = []
    except Exception as e:
        logger.error(f"[CLI] {command} failed: {e}", exc_info=True)
        report = build_report(command, argv, [], None, started, error=e)
        body = []
    return emit(report, args.json, body)


if __name__ == "__main__":
    raise SystemExit(main())
