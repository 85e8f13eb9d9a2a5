"""Command-line interface.

Subcommands: verify, bound, sweep, means, corpus.  Stdout carries only the
machine-readable payload (JSON by default, a plain table behind --pretty);
diagnostics go to stderr.  Exit codes are a stable contract:

* 0 success / bound valid / residual within tolerance
* 1 verification failed or bound violated
* 2 usage error (bad flags, syntax error, parameters out of domain)
* 3 numeric failure (tolerance unreachable, non-finite samples)
* 4 convexity gate failed (bound subcommand)

Every flag has a config-file equivalent (plain-text key=value, '#'
comments); command-line flags override file values.  The INEQ_TOL
environment variable overrides the built-in default tolerance.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import analysis
from .bounds import BoundRequest, Family, Variant, evaluate
from .corpus import corpus, load_corpus_file
from .errors import (
    DomainError,
    EqualArgumentsError,
    Error,
    ExprSyntaxError,
    MaxSubdivisionsError,
    NonFiniteSampleError,
    OrderOverflowError,
    ParamOutOfDomainError,
    UnsupportedOrderError,
)
from .expr import parse
from .identity import RuleForm, verify_identity
from .means import (
    MeanPair,
    arithmetic_mean,
    generalized_log_mean_pow,
    logarithmic_mean,
    power_gap,
    proposition1_bound,
    proposition2_bound,
)
from .quadrature import Interval

DEFAULT_VERIFY_TOL = 1e-9
DEFAULT_BOUND_TOL = 1e-10

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_CONVEXITY = 4

_USAGE_ERRORS = (
    ExprSyntaxError,
    ParamOutOfDomainError,
    EqualArgumentsError,
    UnsupportedOrderError,
    ValueError,
)
_NUMERIC_ERRORS = (
    MaxSubdivisionsError,
    NonFiniteSampleError,
    DomainError,
    OrderOverflowError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ostrowski",
        description="Evaluate and certify integral-remainder bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="key=value config file; flags override it")
        p.add_argument("--pretty", action="store_true", help="human-readable output")

    def add_function(p):
        p.add_argument("--fn", help="expression in t, e.g. 'exp(t)'")
        p.add_argument("--a", type=float, help="left endpoint")
        p.add_argument("--b", type=float, help="right endpoint")

    def add_form(p):
        p.add_argument("--x", type=float, help="rule point in [a, b]")
        p.add_argument("--midpoint", action="store_true", help="use x = (a+b)/2")
        p.add_argument("--trapezoid", action="store_true", help="endpoint-averaged form")

    p_verify = sub.add_parser("verify", help="check the exact-representation identity")
    add_common(p_verify)
    add_function(p_verify)
    add_form(p_verify)
    p_verify.add_argument("--n", type=int, help="derivative order, n >= 1")
    p_verify.add_argument("--tol", type=float, help="residual tolerance")

    p_bound = sub.add_parser("bound", help="evaluate one bound family")
    add_common(p_bound)
    add_function(p_bound)
    add_form(p_bound)
    p_bound.add_argument("--n", type=int, help="derivative order, n >= 1")
    p_bound.add_argument(
        "--family", choices=[f.value for f in Family], help="bound family"
    )
    p_bound.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.CORRECTED.value,
        help="corrected (default) or the stated printed form",
    )
    p_bound.add_argument("--p", type=float, help="holder exponent, p > 1")
    p_bound.add_argument("--q", type=float, help="power-mean exponent, q >= 1")
    p_bound.add_argument("--tol", type=float, help="validity slack tolerance")

    p_sweep = sub.add_parser("sweep", help="parameter sweep with file output")
    add_common(p_sweep)
    add_function(p_sweep)
    p_sweep.add_argument("--spec", help="sweep spec file (key=value)")
    p_sweep.add_argument("--n-values", help="comma list, e.g. 1,2,3")
    p_sweep.add_argument("--x-count", type=int, help="uniform rule-point count")
    p_sweep.add_argument("--x-values", help="comma list of rule points")
    p_sweep.add_argument("--families", help="comma list of family names")
    p_sweep.add_argument("--p-values", help="comma list of p exponents")
    p_sweep.add_argument("--q-values", help="comma list of q exponents")
    p_sweep.add_argument("--variants", help="comma list: corrected,paper")
    p_sweep.add_argument("--workers", type=int, default=1, help="evaluation threads")
    p_sweep.add_argument("--out", help="output path (default sweep.<format>)")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")

    p_means = sub.add_parser("means", help="special means and their gap bounds")
    add_common(p_means)
    p_means.add_argument(
        "--op", choices=("a", "l", "ln", "prop1", "prop2"), help="operation"
    )
    p_means.add_argument("--alpha", type=float, help="first argument (> 0)")
    p_means.add_argument("--beta", type=float, help="second argument (> 0)")
    p_means.add_argument("--n", type=int, help="power order, |n| >= 1")
    p_means.add_argument("--x", type=float, help="probe point in [alpha, beta]")
    p_means.add_argument("--q", type=float, help="power-mean exponent, q >= 1")

    p_corpus = sub.add_parser("corpus", help="list corpus entries")
    add_common(p_corpus)
    p_corpus.add_argument("--file", help="load entries from a ';'-separated file")

    return parser


def _read_config(path: str) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        values[key.strip().replace("_", "-")] = value.strip()
    return values


_TRUTHY = {"1", "true", "yes", "on"}


def _config_argv(parser, command: str, config: dict) -> list:
    """Turn config entries into flag tokens valid for this subcommand."""
    sub_actions = None
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            sub_actions = action.choices[command]._actions
            break
    flags = {}
    store_true = set()
    for action in sub_actions:
        for option in action.option_strings:
            if option.startswith("--"):
                flags[option[2:]] = option
                if isinstance(action, argparse._StoreTrueAction):
                    store_true.add(option[2:])
    argv = []
    for key, value in config.items():
        if key not in flags or key == "config":
            continue
        if key in store_true:
            if value.lower() in _TRUTHY:
                argv.append(flags[key])
        else:
            argv.extend([flags[key], value])
    return argv


def _env_tol(default: float) -> float:
    raw = os.environ.get("INEQ_TOL")
    if raw is None:
        return default
    return float(raw)


def _emit(payload, pretty: bool) -> None:
    if pretty:
        for line in _pretty_lines(payload, indent=""):
            print(line)
    else:
        print(json.dumps(payload, indent=2))


def _pretty_lines(payload, indent: str):
    if isinstance(payload, dict):
        for key, value in payload.items():
            if isinstance(value, (dict, list)):
                yield f"{indent}{key}:"
                yield from _pretty_lines(value, indent + "  ")
            else:
                yield f"{indent}{key:<20} {value}"
    elif isinstance(payload, list):
        for item in payload:
            yield from _pretty_lines(item, indent)
            yield ""
    else:
        yield f"{indent}{payload}"


def _require(args, names) -> None:
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        flags = ", ".join("--" + name.replace("_", "-") for name in missing)
        raise ValueError(f"missing required flags: {flags}")


def _rule_form(args) -> RuleForm:
    chosen = [args.x is not None, args.midpoint, args.trapezoid]
    if sum(chosen) != 1:
        raise ValueError("exactly one of --x, --midpoint, --trapezoid is required")
    if args.x is not None:
        return RuleForm.point(args.x)
    if args.midpoint:
        return RuleForm.midpoint()
    return RuleForm.trapezoid()


def _cmd_verify(args) -> int:
    _require(args, ("fn", "a", "b", "n"))
    fn = parse(args.fn)
    iv = Interval(args.a, args.b)
    form = _rule_form(args)
    tol = args.tol if args.tol is not None else _env_tol(DEFAULT_VERIFY_TOL)
    report = verify_identity(fn, args.n, iv, form, tol)
    payload = dataclasses.asdict(report)
    payload["tol"] = tol
    _emit(payload, args.pretty)
    return EXIT_OK if report.ok else EXIT_FAILED


def _cmd_bound(args) -> int:
    _require(args, ("fn", "a", "b", "n", "family"))
    fn = parse(args.fn)
    iv = Interval(args.a, args.b)
    form = _rule_form(args)
    req = BoundRequest(
        family=Family(args.family),
        n=args.n,
        form=form,
        p=args.p,
        q=args.q,
        variant=Variant(args.variant),
    )
    req.validate(iv)
    report = evaluate(req, fn, iv)
    payload = dataclasses.asdict(report)
    payload["family"] = req.family.value
    payload["variant"] = req.variant.value
    _emit(payload, args.pretty)
    if report.valid:
        return EXIT_OK
    if not report.convexity.convex:
        return EXIT_CONVEXITY
    return EXIT_FAILED


def _parse_list(text, convert):
    return tuple(convert(token) for token in text.split(",") if token.strip())


def _sweep_spec_from(values: dict) -> analysis.SweepSpec:
    fn = parse(values["fn"])
    iv = Interval(float(values["a"]), float(values["b"]))
    kwargs = {}
    if values.get("n-values"):
        kwargs["n_values"] = _parse_list(values["n-values"], int)
    if values.get("x-values"):
        kwargs["x_grid"] = _parse_list(values["x-values"], float)
    elif values.get("x-count"):
        kwargs["x_grid"] = int(values["x-count"])
    if values.get("families"):
        kwargs["families"] = _parse_list(values["families"], Family)
    if values.get("p-values"):
        kwargs["p_values"] = _parse_list(values["p-values"], float)
    if values.get("q-values"):
        kwargs["q_values"] = _parse_list(values["q-values"], float)
    if values.get("variants"):
        kwargs["variants"] = _parse_list(values["variants"], Variant)
    return analysis.SweepSpec(fn=fn, iv=iv, label=values.get("label", ""), **kwargs)


def _cmd_sweep(args) -> int:
    if args.spec:
        specs = [_sweep_spec_from(_read_config(args.spec))]
    elif args.fn is not None:
        _require(args, ("a", "b"))
        values = {
            "fn": args.fn,
            "a": args.a,
            "b": args.b,
            "n-values": args.n_values,
            "x-values": args.x_values,
            "x-count": args.x_count,
            "families": args.families,
            "p-values": args.p_values,
            "q-values": args.q_values,
            "variants": args.variants,
        }
        specs = [_sweep_spec_from({k: v for k, v in values.items() if v is not None})]
    else:
        specs = list(analysis.default_specs())

    result = analysis.sweep_many(specs, workers=args.workers)
    out = Path(args.out) if args.out else Path(f"sweep.{args.format}")
    if args.format == "csv":
        analysis.write_csv(result.records, out)
    else:
        analysis.write_json(result.records, out)

    findings = analysis.errata_report(result.records)
    findings_path = None
    if findings:
        findings_path = out.with_suffix(".findings.json")
        analysis.write_findings(findings, findings_path)

    for skip in result.skips:
        print(
            f"skip: {skip.function} family={skip.family} n={skip.n} x={skip.x} "
            f"p={skip.p} q={skip.q}: {skip.reason}",
            file=sys.stderr,
        )

    payload = {
        "records": len(result.records),
        "skips": len(result.skips),
        "valid": sum(1 for r in result.records if r.valid),
        "errors": sum(1 for r in result.records if r.error is not None),
        "out": str(out),
        "findings": str(findings_path) if findings_path else None,
    }
    _emit(payload, args.pretty)
    return EXIT_OK if result.all_valid else EXIT_FAILED


def _cmd_means(args) -> int:
    _require(args, ("op", "alpha", "beta"))
    pair = MeanPair(args.alpha, args.beta)
    payload = {"op": args.op, "alpha": pair.alpha, "beta": pair.beta}
    if args.op == "a":
        payload["value"] = arithmetic_mean(pair)
    elif args.op == "l":
        payload["value"] = logarithmic_mean(pair)
    elif args.op == "ln":
        _require(args, ("n",))
        payload["n"] = args.n
        payload["value"] = generalized_log_mean_pow(pair, args.n)
    else:
        _require(args, ("n", "x"))
        payload["n"] = args.n
        payload["x"] = args.x
        lhs = power_gap(pair, args.n, args.x)
        if args.op == "prop1":
            rhs = proposition1_bound(pair, args.n, args.x)
        else:
            _require(args, ("q",))
            payload["q"] = args.q
            rhs = proposition2_bound(pair, args.n, args.x, args.q)
        payload.update({"lhs": lhs, "rhs": rhs, "slack": rhs - lhs})
    _emit(payload, args.pretty)
    return EXIT_OK


def _cmd_corpus(args) -> int:
    entries = load_corpus_file(args.file) if args.file else corpus()
    payload = [
        {
            "name": e.name,
            "expression": e.expression,
            "a": e.interval.a,
            "b": e.interval.b,
            "max_n": e.max_n,
            "negative_control": e.negative_control,
        }
        for e in entries
    ]
    _emit(payload, args.pretty)
    return EXIT_OK


_HANDLERS = {
    "verify": _cmd_verify,
    "bound": _cmd_bound,
    "sweep": _cmd_sweep,
    "means": _cmd_means,
    "corpus": _cmd_corpus,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if args.config:
        try:
            config = _read_config(args.config)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        command_at = argv.index(args.command)
        merged = (
            argv[: command_at + 1]
            + _config_argv(parser, args.command, config)
            + argv[command_at + 1 :]
        )
        try:
            args = parser.parse_args(merged)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    handler = _HANDLERS[args.command]
    try:
        return handler(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERIC_ERRORS as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
