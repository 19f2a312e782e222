"""``lca`` command line: analyze, invert, evolve, spacetime, oracle.

Exit codes: 0 success, 1 parse/usage error, 2 semantic error (bad modulus,
coefficient out of range, non-invertible rule), 3 resource budget exceeded.
All machine output is JSON with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .ca import (
    FiniteConfiguration,
    LinearCA,
    config_from_dict,
    config_to_dict,
    evolve,
    from_poly,
    rule_from_dict,
    rule_to_dict,
    to_poly,
)
from .entropy import algebraic_entropy, shift_equivalent_exponent, topological_entropy_of_dual
from .errors import BudgetExceeded, DomainError, LCAError, NotInvertible
from .laurent import PolyParseError, format_poly, parse_poly
from .oracle import METHODS, entropy_slope, trajectory_sizes, verdict
from .structure import check_inverse, classify, decompose, invert, permutivity, shift_power_identity

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_BUDGET = 0, 1, 2, 3
DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _read_json(source: str, what: str) -> Any:
    if source == "-":
        text, name = sys.stdin.read(), "<stdin>"
    else:
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {what} file {source}: {exc.strerror}") from None
        name = str(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{name}:{exc.lineno}:{exc.colno}: invalid JSON in {what}: {exc.msg}") from None


def load_rule(args) -> LinearCA:
    if args.poly is not None:
        if args.rule is not None:
            raise UsageError("give either a rule file or --poly, not both")
        if args.modulus is None:
            raise UsageError("--poly needs --modulus")
        try:
            return from_poly(parse_poly(args.poly, args.modulus))
        except PolyParseError as exc:
            raise UsageError(str(exc)) from None
    if args.rule is None:
        raise UsageError("a rule file (or --poly with --modulus) is required")
    return rule_from_dict(_read_json(args.rule, "rule"), reduce=args.reduce)


def load_config(args, S: LinearCA) -> FiniteConfiguration:
    if args.config is None:
        return FiniteConfiguration.unit(S.modulus, 0)
    c = config_from_dict(_read_json(args.config, "configuration"), reduce=args.reduce)
    if c.m != S.m:
        raise DomainError(f"configuration is over Z_{c.m} but the rule is over Z_{S.m}")
    return c


def _emit(obj: Any) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


# -- reports -------------------------------------------------------------------


def analyze(S: LinearCA) -> dict[str, Any]:
    """The full structural and entropy report for one rule."""
    cls = classify(S)
    comps = []
    for (p, k), comp, d in zip(S.modulus.factors, decompose(S).components, cls.component_degrees):
        comps.append(
            {
                "prime": p,
                "exponent": k,
                "modulus": p**k,
                "rule": rule_to_dict(comp),
                "poly": format_poly(to_poly(comp)),
                "support": sorted(comp.support()),
                "unit_support": sorted(comp.unit_support()),
                "degree": d,
            }
        )
    report: dict[str, Any] = {
        "rule": rule_to_dict(S),
        "poly": format_poly(to_poly(S)),
        "support": sorted(S.support()),
        "unit_support": sorted(S.unit_support()),
        "degree": cls.degree,
        "components": comps,
        "classification": cls.as_dict(),
        "entropy": {
            "algebraic": algebraic_entropy(S).as_dict(),
            "dual_topological": topological_entropy_of_dual(S).as_dict(),
        },
        "shift_equivalent_exponent": shift_equivalent_exponent(S),
        "permutivity": None if S.is_zero() else permutivity(S)._asdict(),
        "inverse": None,
        "shift_power_identity": None,
    }
    if cls.s_surjective:
        report["inverse"] = rule_to_dict(invert(S))
        if S.modulus.is_prime_power:
            e, n = shift_power_identity(S)
            report["shift_power_identity"] = {"exponent": e, "shift_power": n}
    return report


def _pretty_analysis(rep: dict[str, Any]) -> str:
    cls = rep["classification"]
    lines = [
        f"rule            A(X) = {rep['poly']}  over Z_{rep['rule']['m']}",
        f"supp / supp*    {rep['support']} / {rep['unit_support']}",
        f"degree          {rep['degree']}",
    ]
    for c in rep["components"]:
        lines.append(
            f"  Z_{c['modulus']:<6}      A = {c['poly']:<20} supp* {c['unit_support']}  degree {c['degree']}"
        )
    for key in ("s_injective", "s_surjective", "t_injective", "t_surjective", "invertible_with_ca_inverse"):
        lines.append(f"{key:<28}{cls[key]}")
    ent = rep["entropy"]["algebraic"]
    terms = " + ".join(f"{d}*log {b}" for b, d in ent["terms"])
    lines.append(f"entropy         {terms} = {ent['nats']:.12g} nats")
    lines.append(f"shift-equivalent exponent  {rep['shift_equivalent_exponent']}")
    if rep["permutivity"] is not None:
        perm = rep["permutivity"]
        lines.append("permutivity     " + (", ".join(k for k, v in perm.items() if v) or "none"))
    if rep["inverse"] is not None:
        lines.append(f"inverse         {json.dumps(rep['inverse']['lambda'], sort_keys=True)}")
    if rep["shift_power_identity"] is not None:
        spi = rep["shift_power_identity"]
        lines.append(f"S^{spi['exponent']} = sigma^{spi['shift_power'] * spi['exponent']}")
    return "\n".join(lines)


def render_spacetime(S: LinearCA, c: FiniteConfiguration, steps: int, width: int, decimal: bool = False) -> str:
    m = S.m
    decimal = decimal or m > len(DIGITS)
    rows = []
    for state in evolve(S, c, steps):
        cells = state.window(-width, width)
        if decimal:
            rows.append(" ".join(str(v) for v in cells))
        else:
            rows.append("".join(DIGITS[v] for v in cells))
    return "\n".join(rows)


# -- commands ------------------------------------------------------------------


def cmd_analyze(args) -> int:
    rep = analyze(load_rule(args))
    if args.pretty:
        print(_pretty_analysis(rep))
    else:
        _emit(rep)
    return EXIT_OK


def cmd_invert(args) -> int:
    S = load_rule(args)
    try:
        inv = invert(S)
    except NotInvertible as exc:
        _emit(
            {
                "error": "NotInvertible",
                "message": str(exc),
                "component": exc.component,
                "component_modulus": exc.modulus,
                "unit_support_size": exc.unit_support_size,
            }
        )
        return EXIT_SEMANTIC
    if not check_inverse(S, inv):
        raise AssertionError("computed inverse failed the composition check")
    _emit(rule_to_dict(inv))
    return EXIT_OK


def _check_steps(S: LinearCA, steps: int, budget: int) -> None:
    if steps < 0:
        raise DomainError(f"--steps must be >= 0, got {steps}")
    span = 0 if S.is_zero() else S.r - S.l
    if steps * max(span, 1) > budget:
        raise BudgetExceeded(f"{steps} steps of span {span} exceed the evolution budget {budget}", budget)


def cmd_evolve(args) -> int:
    S = load_rule(args)
    c = load_config(args, S)
    _check_steps(S, args.steps, args.budget)
    _emit(config_to_dict(evolve(S, c, args.steps)[-1]))
    return EXIT_OK


def cmd_spacetime(args) -> int:
    S = load_rule(args)
    c = load_config(args, S)
    _check_steps(S, args.steps, args.budget)
    if args.width < 0:
        raise DomainError(f"--width must be >= 0, got {args.width}")
    print(render_spacetime(S, c, args.steps, args.width, args.decimal))
    return EXIT_OK


def cmd_oracle(args) -> int:
    S = load_rule(args)
    s, t = args.window
    try:
        table = trajectory_sizes(S, s, t, args.steps, method=args.method, budget=args.budget)
    except BudgetExceeded as exc:
        done = exc.completed
        out = {"error": "BudgetExceeded", "message": str(exc), "completed_steps": 0}
        if done is not None:
            out["completed_steps"] = done.steps
            out["table"] = done.as_dict()
        _emit(out)
        return EXIT_BUDGET
    expected = algebraic_entropy(S)
    out: dict[str, Any] = {"table": table.as_dict(), "expected": expected.as_dict()}
    if table.steps >= 3:
        slope = entropy_slope(table)
        out["slope"] = {
            "ratio": [str(slope.ratio.numerator), str(slope.ratio.denominator)],
            "stable": slope.stable,
            "nats": slope.nats,
        }
        out["verdict"] = verdict(table)
    else:
        out["slope"] = None
        out["verdict"] = "insufficient-steps"
    _emit(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lca", description="Linear cellular automata over Z_m: structure, inverses and entropy.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def rule_args(p, config=False):
        p.add_argument("rule", nargs="?", help="rule JSON file ({\"m\": 6, \"lambda\": {\"-1\": 4}}), or - for stdin")
        if config:
            p.add_argument("config", nargs="?", help="configuration JSON file (default: e_0)")
        p.add_argument("--poly", help="rule given as A_S(X), e.g. '4*X + 3' (needs --modulus)")
        p.add_argument("-m", "--modulus", type=int, help="modulus for --poly")
        p.add_argument("--reduce", action="store_true", help="reduce coefficients mod m instead of rejecting them")

    p = sub.add_parser("analyze", help="structure, classification and entropy report")
    rule_args(p)
    p.add_argument("--pretty", action="store_true", help="human-readable text instead of JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("invert", help="print the inverse rule")
    rule_args(p)
    p.set_defaults(func=cmd_invert)

    for name, func, help_ in (
        ("evolve", cmd_evolve, "apply the rule repeatedly and print the final configuration"),
        ("spacetime", cmd_spacetime, "text space-time diagram"),
    ):
        p = sub.add_parser(name, help=help_)
        rule_args(p, config=True)
        p.add_argument("--steps", type=int, required=True)
        p.add_argument("--budget", type=int, default=10**6, help="cap on steps * rule span")
        if name == "spacetime":
            p.add_argument("--width", type=int, default=20, help="show cells in [-width, width]")
            p.add_argument("--decimal", action="store_true", help="space-separated decimal cells")
        p.set_defaults(func=func)

    p = sub.add_parser("oracle", help="brute-force trajectory growth vs the closed-form entropy")
    rule_args(p)
    p.add_argument("--window", nargs=2, type=int, metavar=("S", "T"), default=(-2, 2))
    p.add_argument("--steps", type=int, default=8)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--budget", type=int, default=10**6, help="closure element budget")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lca: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"lca: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, LCAError) as exc:
        print(f"lca: error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
