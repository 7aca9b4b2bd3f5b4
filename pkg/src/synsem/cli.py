"""Command-line interface.

Exit status: 0 on success, 1 when a check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .rewrite import FuelExhausted, RuleSet, format_position, format_step, normalize, successors
from .sorts import SortError, SortTranslation, format_sort
from .stdlib import BUILTINS, UnknownBuiltin, builtin, builtin_text
from .syntax import (
    ParseError,
    load_representation,
    load_signature,
    parse_context,
    parse_representation,
    parse_term,
    print_term,
)
from .templates import ElaborationError
from .terms import TermError, sort_of
from .translation import (
    Representation,
    TranslationError,
    check_all_rules,
    check_faithful,
    check_monad_morphism,
    check_satisfies,
    retype_context,
    translate,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _signature(spec: str) -> RuleSet:
    if Path(spec).is_file():
        return load_signature(spec)
    entry = builtin(spec)
    if not isinstance(entry, RuleSet):
        raise UsageError(f"{spec!r} is a representation, not a signature")
    return entry


def _representation(spec: str, overrides: dict[str, str]):
    if Path(spec).is_file():
        return load_representation(spec, overrides=overrides or None)
    if not overrides:
        return builtin(spec)
    # reparse so that overrides see the block's let-bound names
    from .stdlib import _language

    return parse_representation(builtin_text(spec), _language, spec, f"<builtin {spec}>", overrides)


def _overrides(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for item in items or ():
        name, sep, body = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--fix-via expects ARITY=TEMPLATE, got {item!r}")
        out[name.strip()] = body.strip()
    return out


def _need(args, attr: str, flag: str):
    value = getattr(args, attr)
    if value is None:
        raise UsageError(f"{args.command} requires {flag}")
    return value


def _load_rep(args) -> Representation:
    rep = _representation(_need(args, "rep", "--rep"), _overrides(args.fix_via))
    if isinstance(rep, SortTranslation):
        raise UsageError(f"{args.rep!r} has sort clauses only")
    return rep


def _emit(args, text: str, data: dict) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


# -- subcommands ----------------------------------------------------------------------

def cmd_check(args) -> int:
    if args.rep:
        rep = _representation(args.rep, _overrides(args.fix_via))
        if isinstance(rep, SortTranslation):
            _emit(args, f"ok: sort translation with {len(rep.clauses)} clauses",
                  {"kind": "sort-translation", "ok": True, "clauses": len(rep.clauses)})
            return EXIT_OK
        missing = rep.missing
        text = f"ok: representation with {len(rep.terms)} term clauses"
        if missing:
            text += f" (partial, unrepresented: {', '.join(missing)})"
        _emit(args, text, {"kind": "representation", "ok": True, "clauses": len(rep.terms),
                           "unrepresented": missing})
        return EXIT_OK
    rs = _signature(_need(args, "sig", "--sig or --rep"))
    sig = rs.signature
    if args.term is not None:
        ctx = parse_context(sig.sorts, args.ctx)
        t = parse_term(sig, ctx, args.term)
        s = format_sort(sort_of(sig, ctx, t))
        _emit(args, s, {"kind": "term", "ok": True, "sort": s})
        return EXIT_OK
    text = (f"ok: {len(sig.sorts.constructors)} sort constructors, "
            f"{len(sig.arities)} arities, {len(rs.rules)} rules")
    _emit(args, text, {"kind": "signature", "ok": True, "sorts": len(sig.sorts.constructors),
                       "arities": len(sig.arities), "rules": [r.name for r in rs.rules]})
    return EXIT_OK


def _term_args(args):
    rs = _signature(_need(args, "sig", "--sig"))
    ctx = parse_context(rs.signature.sorts, args.ctx)
    t = parse_term(rs.signature, ctx, _need(args, "term", "--term"))
    return rs, ctx, t


def _steps_json(steps, style):
    return [{"rule": s.rule, "position": format_position(s.position),
             "before": print_term(s.before, style), "after": print_term(s.after, style)} for s in steps]


def cmd_reduce(args) -> int:
    rs, ctx, t = _term_args(args)
    res = normalize(rs, ctx, t, args.fuel)
    exhausted = isinstance(res, FuelExhausted)
    out = print_term(res.term, args.style)
    text = out + (f"\n# fuel exhausted after {len(res.steps)} steps" if exhausted else "")
    _emit(args, text, {"kind": "reduce", "normal": not exhausted, "term": out, "steps": len(res.steps)})
    return EXIT_FAIL if exhausted else EXIT_OK


def cmd_trace(args) -> int:
    rs, ctx, t = _term_args(args)
    res = normalize(rs, ctx, t, args.fuel)
    exhausted = isinstance(res, FuelExhausted)
    show = lambda u: print_term(u, args.style)  # noqa: E731
    lines = [format_step(s, show) for s in res.steps]
    if exhausted:
        lines.append(f"# fuel exhausted after {len(res.steps)} steps")
    _emit(args, "\n".join(lines) if lines else "# already normal",
          {"kind": "trace", "normal": not exhausted, "steps": _steps_json(res.steps, args.style)})
    return EXIT_FAIL if exhausted else EXIT_OK


def cmd_translate(args) -> int:
    rep = _load_rep(args)
    sig = rep.source.signature
    ctx = parse_context(sig.sorts, args.ctx)
    t = parse_term(sig, ctx, _need(args, "term", "--term"))
    image = translate(rep, ctx, t)
    out = print_term(image, args.style)
    tctx = retype_context(rep.sorts, ctx)
    _emit(args, out, {"kind": "translate", "term": out,
                      "sort": format_sort(sort_of(rep.target.signature, tctx, image)),
                      "context": [format_sort(s) for s in tctx]})
    return EXIT_OK


def _report_json(report) -> dict:
    return {"law": report.law, "passed": report.passed, "checked": report.checked,
            "fuel": report.fuel,
            "failures": [{"context": [format_sort(s) for s in f.ctx], "term": print_term(f.term),
                          "detail": f.detail,
                          "other": print_term(f.other) if f.other is not None else None}
                         for f in report.failures[:20]],
            "failure_count": len(report.failures)}


def _report_text(report) -> str:
    verdict = "PASS" if report.passed else "FAIL"
    lines = [f"{verdict} {report.law}: {report.checked} instances, {len(report.failures)} failures"]
    for f in report.failures[:10]:
        ctx = ", ".join(format_sort(s) for s in f.ctx)
        lines.append(f"  [{ctx}] {print_term(f.term)}: {f.detail}")
    return "\n".join(lines)


def cmd_laws(args) -> int:
    rep = _load_rep(args)
    report = check_monad_morphism(rep, args.max_nodes or 4, args.ctx_len)
    _emit(args, _report_text(report), {"kind": "laws", **_report_json(report)})
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_faithful(args) -> int:
    rep = _load_rep(args)
    report = check_faithful(rep, args.max_nodes or 4, args.ctx_len, args.fuel)
    _emit(args, _report_text(report), {"kind": "faithful", **_report_json(report)})
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_satisfy(args) -> int:
    rep = _load_rep(args)
    nat_range = range(args.nat_range + 1)
    if args.rule:
        results = [check_satisfies(rep, rep.source.rule(r), args.fuel, nat_range) for r in args.rule]
    else:
        results = check_all_rules(rep, args.fuel, nat_range)
    lines, data = [], []
    for s in results:
        for k, reach, lhs, rhs in s.results:
            label = s.rule if k is None else f"{s.rule} (k={k})"
            if reach.found:
                lines.append(f"PASS {label}: {len(reach.path)} steps")
            else:
                why = "fuel exhausted" if reach.exhausted else "unreachable"
                lines.append(f"FAIL {label}: {why} after {reach.expansions} expansions")
            data.append({"rule": s.rule, "k": k, "passed": reach.found,
                         "exhausted": reach.exhausted, "expansions": reach.expansions,
                         "lhs": print_term(lhs, args.style), "rhs": print_term(rhs, args.style),
                         "witness": _steps_json(reach.path, args.style)})
    ok = all(s.passed for s in results)
    failed = sorted({s.rule for s in results if not s.passed})
    if failed:
        lines.append(f"failed rules: {', '.join(failed)}")
    _emit(args, "\n".join(lines), {"kind": "satisfy", "passed": ok, "fuel": args.fuel,
                                   "failed": failed, "results": data})
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "check": (cmd_check, "load a signature or representation, or sort-check a term"),
    "reduce": (cmd_reduce, "normalize a term (outermost-leftmost)"),
    "trace": (cmd_trace, "print each reduction step"),
    "translate": (cmd_translate, "translate a term along a representation"),
    "laws": (cmd_laws, "check that translation commutes with substitution"),
    "satisfy": (cmd_satisfy, "check that a representation satisfies the source rules"),
    "faithful": (cmd_faithful, "check that source steps map to target reductions"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synsem",
        description="Typed syntax with binding, rewriting and checked translations.",
        epilog=f"builtins: {', '.join(BUILTINS)}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--sig", help="signature file or builtin name")
        p.add_argument("--rep", help="representation file or builtin name")
        p.add_argument("--ctx", default="", help="comma-separated sorts, innermost first")
        p.add_argument("--term", help="term in canonical syntax")
        p.add_argument("--fuel", type=int, default=64)
        p.add_argument("--nat-range", type=int, default=3, help="check natural rule instances 0..N")
        p.add_argument("--max-nodes", type=int)
        p.add_argument("--ctx-len", type=int, default=2)
        p.add_argument("--style", choices=("canonical", "paper"), default="canonical")
        p.add_argument("--fix-via", action="append", metavar="ARITY=TEMPLATE",
                       help="replace a term clause of the representation")
        p.add_argument("--rule", action="append", help="restrict satisfy to this rule")
        p.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except (UsageError, ParseError, UnknownBuiltin, KeyError, SortError, TermError,
            ElaborationError, TranslationError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and not isinstance(e, UnknownBuiltin) else e
        print(f"synsem: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
