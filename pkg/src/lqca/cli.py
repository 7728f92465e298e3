"""Command line front end: ``lqca check|simulate|oracle|reduce|examples``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .core import Configuration, LocalRule, RuleError, Tolerances
from .decision import Verdict, decide_unitarity
from .oracle import OracleCapExceeded, oracle_columns_orthonormal, oracle_row_norm
from .reduce import reduce_neighborhood
from .rulefile import format_rule, parse_rule_file
from .simulate import apply_steps

EXIT_CODES = {
    Verdict.UNITARY: 0,
    Verdict.NOT_UNITARY: 2,
    Verdict.INVALID_RULE: 3,
    Verdict.INDETERMINATE: 4,
}
EXIT_ERROR = 1


class CLIError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors must not collide with the NOT_UNITARY exit code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def load_rule(source: str) -> LocalRule:
    """Read a rule file, falling back to a catalog name when no such file exists."""
    path = Path(source)
    if path.is_file():
        return parse_rule_file(path.read_text(encoding="utf-8"))
    try:
        return catalog.get(source)
    except KeyError:
        raise CLIError(f"no such rule file or example: {source}") from None


def parse_state(text: str, rule: LocalRule) -> Configuration:
    """``"pos:sym,pos:sym"``; an empty string is the all-quiescent configuration."""
    cells = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        pos, sep, sym = item.partition(":")
        if not sep:
            raise CLIError(f"bad cell {item!r}, expected pos:sym")
        try:
            p = int(pos)
        except ValueError:
            raise CLIError(f"bad position in {item!r}") from None
        if sym not in rule.table.all_symbols:
            raise CLIError(f"unknown symbol {sym!r}")
        if p in cells:
            raise CLIError(f"position {p} given twice")
        cells[p] = sym
    return Configuration(cells, quiescent=rule.quiescent)


def _conf_dict(c: Configuration) -> dict[str, str]:
    return {str(p): s for p, s in c.items()}


def _conf_text(c: Configuration) -> str:
    return ",".join(f"{p}:{s}" for p, s in c.items()) or "(quiescent)"


def _tolerances(args) -> Tolerances:
    return Tolerances.from_env(
        eps_zero=args.eps_zero, eps_norm=args.eps_norm, eps_fix=args.eps_fix,
        eps_sum=args.eps_sum, max_iter=args.max_iter,
    )


def cmd_check(args) -> int:
    rule = load_rule(args.rule)
    report = decide_unitarity(rule, _tolerances(args))
    if args.json:
        print(report.to_json(indent=2))
    else:
        print(f"verdict: {report.verdict.value}")
        for st in report.stages:
            mark = {True: "pass", False: "FAIL", None: "-"}[st.passed]
            print(f"  {st.name:<15} {mark}")
    return EXIT_CODES[report.verdict]


def cmd_simulate(args) -> int:
    rule = load_rule(args.rule)
    tol = _tolerances(args)
    state = apply_steps(rule, parse_state(args.state, rule), args.steps, tol)
    terms = sorted(state.items(), key=lambda kv: kv[0])
    if args.json:
        print(json.dumps({
            "steps": args.steps,
            "norm": state.norm(),
            "terms": [
                {"configuration": _conf_dict(c), "amplitude": [a.real, a.imag]} for c, a in terms
            ],
        }, indent=2))
    else:
        for c, a in terms:
            print(f"{a.real:+.12f}{a.imag:+.12f}i  {_conf_text(c)}")
        print(f"norm = {state.norm():.12f}  ({len(state)} terms)")
    return 0


def cmd_oracle(args) -> int:
    rule = load_rule(args.rule)
    tol = _tolerances(args)
    a, b = args.interval
    out = {"interval": [a, b], "columns": oracle_columns_orthonormal(rule, (a, b), tol).to_dict()}
    if args.row is not None:
        row = parse_state(args.row, rule)
        out["row"] = {"configuration": _conf_dict(row), "partial_sums": oracle_row_norm(rule, row, args.depth)}
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        cols = out["columns"]
        print(f"columns orthonormal on [{a}, {b}]: {str(cols['orthonormal']).lower()}")
        if cols["witness"]:
            print(f"  witness: {cols['witness'][0]} / {cols['witness'][1]} ({cols['reason']})")
        if "row" in out:
            for h, v in enumerate(out["row"]["partial_sums"]):
                print(f"  depth {h:3d}: {v:.15f}")
    return 0


def cmd_reduce(args) -> int:
    rule = load_rule(args.rule)
    reduced, enc = reduce_neighborhood(rule)
    text = format_rule(reduced, comment=(
        f"reduced from neighborhood {list(rule.neighborhood)}: "
        f"blocks of {enc.block_width}, shift {enc.shift}"
    ))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_examples(args) -> int:
    if not args.name:
        for name, (_, desc) in catalog.CATALOG.items():
            print(f"{name:<10} {desc}")
        return 0
    try:
        sys.stdout.write(catalog.rule_text(args.name))
    except KeyError as exc:
        raise CLIError(str(exc.args[0])) from None
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lqca", description="Unitarity checks for linear quantum cellular automata.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument("--eps-zero", type=float)
    tol.add_argument("--eps-norm", type=float)
    tol.add_argument("--eps-fix", type=float)
    tol.add_argument("--eps-sum", type=float)
    tol.add_argument("--max-iter", type=int)

    p = sub.add_parser("check", parents=[tol], help="decide unitarity of a rule")
    p.add_argument("rule", help="rule file or example name")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("simulate", parents=[tol], help="apply the global evolution")
    p.add_argument("rule")
    p.add_argument("--state", default="", help='cells as "pos:sym,pos:sym"')
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle", parents=[tol], help="brute-force checks on a finite interval")
    p.add_argument("rule")
    p.add_argument("--interval", type=int, nargs=2, metavar=("A", "B"), required=True)
    p.add_argument("--row", help="also sum antecedents of this row configuration")
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reduce", help="rewrite a rule with neighborhood {0, 1}")
    p.add_argument("rule")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("examples", help="print a shipped rule file")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CLIError, RuleError, OracleCapExceeded, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
