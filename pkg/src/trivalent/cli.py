"""Command-line interface.

Exit codes: 0 for success or a valid verdict, 1 for an invalid verdict or a
violation, 2 for usage and input errors. ``--json`` prints exactly one
document on stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from . import kernel
from .catalog import BoundTooLarge, full_report
from .consequence import ConditionalNotAllowed, Logic, dual_check, entails, parse_sequent
from .formula import FormulaSyntaxError, UnboundVariableError, atoms, parse, render
from .probability import (
    CredenceError,
    Credence,
    UndefinedOdds,
    ZeroProbability,
    check_adams,
    conditional_probability,
    decimal_odds,
    mcgee_demo,
    partition,
    probability,
    search_probabilistic_countermodel,
    triviality_witness,
)
from .semantics import CapExceeded, Mode, SemanticsConfig, UnassignedAtom, truth_table

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INVALID, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, **payload}
        sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _mode(args) -> Mode:
    return Mode.BIVALENT if args.bivalent else Mode.TRIVALENT


def _cfg(args) -> SemanticsConfig:
    return SemanticsConfig.from_name(args.semantics)


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    s = parse_sequent(args.sequent)
    logic = Logic(args.logic)
    cfg, mode = _cfg(args), _mode(args)
    kwargs = {"max_atoms": args.max_atoms}
    if logic is Logic.U:
        kwargs["exhaustive"] = args.exhaustive
    if args.dual and not args.bivalent:
        verdict = dual_check(logic, s, cfg, **kwargs)
    else:
        verdict = entails(logic, s, cfg, mode, **kwargs)
    lines = [f"{logic.name} ({cfg.name}, {mode.value}): {s}", f"verdict: {verdict.status.value}"]
    if verdict.conclusion_theorem:
        lines.append("conclusion is a C-theorem")
    if verdict.witness_subset is not None:
        chosen = [render(s.premises[i]) for i in verdict.witness_subset]
        lines.append(f"witness premises: {{{', '.join(chosen)}}}")
    if verdict.countermodel is not None:
        lines.append(f"countermodel: {verdict.countermodel}")
    if verdict.bivalent_only:
        lines.append("holds when atoms are restricted to classical values")
    if verdict.subset_countermodels:
        for subset, v in verdict.subset_countermodels.items():
            names = ", ".join(render(s.premises[i]) for i in subset) or "(none)"
            lines.append(f"  subset {{{names}}}: {v}")
    _emit(args, {"sequent": str(s), "semantics": cfg.name, "verdict": verdict.to_dict()}, "\n".join(lines))
    return EXIT_OK if verdict.valid else EXIT_INVALID


def cmd_table(args) -> int:
    f = parse(args.formula)
    cfg, mode = _cfg(args), _mode(args)
    rows = truth_table(f, cfg, mode, max_atoms=args.max_atoms)
    names = atoms(f)
    header = [*names, render(f)]
    body = [[str(v[n]) for n in names] + [str(x)] for v, x in rows]
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    text = "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header, *body])
    payload = {
        "formula": render(f),
        "semantics": cfg.name,
        "mode": mode.value,
        "atoms": list(names),
        "rows": [{"valuation": {n: str(v[n]) for n in names}, "value": str(x)} for v, x in rows],
    }
    _emit(args, payload, text)
    return EXIT_OK


def _load_credence(path: str) -> Credence:
    try:
        return Credence.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read credence file: {exc}") from None


def _odds_str(x) -> str:
    return "inf" if x == math.inf else str(x)


def cmd_prob(args) -> int:
    cr = _load_credence(args.credence)
    cfg = _cfg(args)
    f = parse(args.formula)
    part = partition(f, cr, cfg)
    try:
        odds = _odds_str(decimal_odds(f, cr, cfg))
    except UndefinedOdds:
        odds = None
    payload = {
        "formula": render(f),
        "semantics": cfg.name,
        "partition": {
            "true": str(part.true_mass),
            "indeterminate": str(part.indeterminate_mass),
            "false": str(part.false_mass),
        },
        "probability": str(part.probability),
        "decimal_odds": odds,
    }
    text = (
        f"p({render(f)}) = {part.probability}\n"
        f"c(T) = {part.true_mass}, c(I) = {part.indeterminate_mass}, c(F) = {part.false_mass}\n"
        f"decimal odds: {odds if odds is not None else 'undefined'}"
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_adams(args) -> int:
    cr = _load_credence(args.credence)
    cfg = _cfg(args)
    a, c = parse(args.antecedent), parse(args.consequent)
    residual = check_adams(a, c, cr, cfg)
    p_cond = probability(parse(f"({args.antecedent}) -> ({args.consequent})"), cr, cfg)
    cp = conditional_probability(c, a, cr)
    payload = {
        "antecedent": render(a),
        "consequent": render(c),
        "p_conditional": str(p_cond),
        "conditional_probability": str(cp),
        "residual": str(residual),
        "holds": residual == 0,
    }
    text = f"p({render(a)} -> {render(c)}) = {p_cond}\np({render(c)} | {render(a)}) = {cp}\nresidual: {residual}"
    _emit(args, payload, text)
    return EXIT_OK if residual == 0 else EXIT_INVALID


def cmd_countermodel_search(args) -> int:
    s = parse_sequent(args.sequent)
    cfg, mode = _cfg(args), _mode(args)
    result = search_probabilistic_countermodel(s, cfg, args.budget, args.seed, mode=mode)
    if result is None:
        _emit(
            args,
            {"sequent": str(s), "found": False, "certificates": []},
            f"{s}\nno probabilistic countermodel found (inconclusive at budget {args.budget})",
        )
        return EXIT_OK
    certs = [
        {
            "subset": list(c.subset),
            "conjunction": render(c.conjunction),
            "credence": c.credence.to_dict(),
            "p_conjunction": str(c.p_conjunction),
            "p_conclusion": str(c.p_conclusion),
        }
        for c in result.certificates
    ]
    lines = [str(s), "every premise subset fails:"]
    for c in result.certificates:
        weights = ", ".join(f"{k}: {w}" for k, w in c.credence.to_dict()["weights"].items())
        lines.append(
            f"  {render(c.conjunction)}: p = {c.p_conjunction} > {c.p_conclusion} under {{{weights}}}"
        )
    _emit(args, {"sequent": str(s), "found": True, "certificates": certs}, "\n".join(lines))
    return EXIT_INVALID


def cmd_principles(args) -> int:
    cfg = _cfg(args)
    report = full_report(cfg, depth_bound=args.depth)
    lines = []
    for r in report.rows:
        flag = "ok  " if r.ok else "MISMATCH"
        cm = f"  [{r.countermodel}]" if r.countermodel is not None else ""
        lines.append(
            f"{flag:8} {r.name:40} {r.logic.name:2} {r.mode.value:9} "
            f"{r.mark.value:4} expected {r.expected.value:7} computed {r.computed.value:7}{cm}"
        )
    lines.append(f"{len(report.mismatches)} mismatches ({cfg.name})")
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK if not report.mismatches else EXIT_INVALID


def cmd_mcgee(args) -> int:
    report = mcgee_demo(tuple(args.weights))
    d = report.to_dict()
    lines = [
        f"weights (Reagan, Carter, Anderson): {', '.join(map(str, args.weights))}",
        *(f"premise    p({p['formula']}) = {p['probability']}" for p in d["premises"]),
        f"conclusion p({d['conclusion']['formula']}) = {d['conclusion']['probability']}",
        "total probability: p(n) = {} = {}".format(*d["total_probability"]),
        "nested total probability: p(n | ~r) = {} = {}".format(*d["nested_total_probability"]),
    ]
    _emit(args, d, "\n".join(lines))
    return EXIT_OK if report.decompositions_hold else EXIT_INVALID


def cmd_triviality(args) -> int:
    report = triviality_witness(args.samples, args.seed)
    d = report.to_dict()
    lines = [
        f"p(a -> c) = {report.p_conditional}, p(c) = {report.p_consequent}",
        f"a compatible with c and ~c: {report.compatible}",
        f"preservation: {report.preservation_triggered} of {report.preservation_checked} "
        f"credences triggered, {len(report.preservation_violations)} violations",
    ]
    _emit(args, d, "\n".join(lines))
    return EXIT_OK if report.witnessed and not report.preservation_violations else EXIT_INVALID


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--semantics", default="cooper-quasi", choices=list(SemanticsConfig.NAMES),
        help="conditional table and connective family (default: cooper-quasi)",
    )
    shared.add_argument("--bivalent", action="store_true", help="restrict atoms to classical values")
    shared.add_argument("--json", action="store_true", help="emit one JSON document")
    shared.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
    shared.add_argument("--budget", type=int, default=1000, help="random samples per search (default: 1000)")
    shared.add_argument("--max-atoms", type=int, default=None, help="override the enumeration cap")

    parser = argparse.ArgumentParser(prog="trivalent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s (kernel: {kernel.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[shared], help="decide a sequent")
    p.add_argument("--logic", required=True, choices=[x.value for x in Logic])
    p.add_argument("--exhaustive", action="store_true", help="U: one countermodel per premise subset")
    p.add_argument("--dual", action="store_true", help="also check with classical atoms")
    p.add_argument("sequent", help='e.g. "a -> b; a |- b"')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table", parents=[shared], help="print a truth table")
    p.add_argument("formula")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("prob", parents=[shared], help="probability of a formula under a credence")
    p.add_argument("--credence", required=True, help="credence JSON file")
    p.add_argument("formula")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("adams", parents=[shared], help="compare p(a -> c) with p(c | a)")
    p.add_argument("--credence", required=True, help="bivalent credence JSON file")
    p.add_argument("antecedent")
    p.add_argument("consequent")
    p.set_defaults(func=cmd_adams)

    p = sub.add_parser("countermodel-search", parents=[shared], help="search failing credences for U")
    p.add_argument("sequent")
    p.set_defaults(func=cmd_countermodel_search)

    p = sub.add_parser("principles", parents=[shared], help="recompute the principles table")
    p.add_argument("--depth", type=int, default=None, help="meta-rule depth bound (default: per rule)")
    p.set_defaults(func=cmd_principles)

    p = sub.add_parser("mcgee", parents=[shared], help="the election counterexample to Modus Ponens")
    p.add_argument(
        "--weights", type=int, nargs=3, default=[85, 14, 1], metavar=("REAGAN", "CARTER", "ANDERSON")
    )
    p.set_defaults(func=cmd_mcgee)

    p = sub.add_parser("triviality", parents=[shared], help="blocked collapse of p(a -> c) to p(c)")
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_triviality)
    return parser


_INPUT_ERRORS = (
    FormulaSyntaxError,
    UnboundVariableError,
    UnassignedAtom,
    CapExceeded,
    CredenceError,
    ConditionalNotAllowed,
    ZeroProbability,
    BoundTooLarge,
    UsageError,
    ValueError,
)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"trivalent {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
