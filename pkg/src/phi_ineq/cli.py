"""The ``phi-ineq`` command line tool.

Subcommands: ``selftest`` (invariant battery), ``verify`` (one parameter
point), ``sweep`` (grid of points from a JSON plan or the default plan)
and ``coeffs`` (printed-form vs oracle discrepancy ledger).

Exit codes: 0 all checks pass, 1 at least one inequality FAIL, 2 usage
error, 3 internal numerical error.  Output is CSV or JSON with a fixed
column order; identical configurations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .bounds import EvalParams
from .convexity import PhiKernel
from .errors import DomainError, PhiIneqError, UsageError
from .functions import resolve_function
from .report import build_ledger
from .selftest import run_selftest
from .verify import (
    SweepPlan,
    default_sweep_plan,
    hermite_hadamard_check,
    identity_check,
    sweep,
    sweep_summary,
    verify_point,
)

REPORT_COLUMNS = (
    "function", "kernel", "theorem", "a", "b", "x", "lambda", "alpha",
    "q", "p", "s", "lhs", "rhs", "margin", "hypothesis_ok", "status",
)
LEDGER_COLUMNS = (
    "coefficient", "alpha", "lambda", "s", "p", "printed", "oracle",
    "abs_diff", "verdict",
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _report_values(r):
    return (r.function, r.kernel, r.theorem, r.a, r.b, r.x, r.lam, r.alpha,
            r.q, r.p, r.s, r.lhs, r.rhs, r.margin, r.hypothesis_ok, r.status)


def reports_to_csv(reports):
    lines = [",".join(REPORT_COLUMNS)]
    for r in reports:
        lines.append(",".join(_cell(v) for v in _report_values(r)))
    return "\n".join(lines) + "\n"


def reports_to_json(reports):
    payload = {"reports": [
        dict(zip(REPORT_COLUMNS, _report_values(r)), message=r.message)
        for r in reports
    ]}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _ledger_values(e):
    return (e.coefficient, e.alpha, e.lam, e.s, e.p, e.printed, e.oracle,
            e.abs_diff, e.verdict)


def ledger_to_csv(entries):
    lines = [",".join(LEDGER_COLUMNS)]
    for e in entries:
        lines.append(",".join(_cell(v) for v in _ledger_values(e)))
    return "\n".join(lines) + "\n"


def ledger_to_json(entries):
    payload = {"entries": [dict(zip(LEDGER_COLUMNS, _ledger_values(e))) for e in entries]}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


@dataclass
class RunConfig:
    command: str
    function: str | None = None
    a: float | None = None
    b: float | None = None
    x: float | None = None
    lam: float | None = None
    alpha: float = 1.0
    q: float = 1.0
    s: float | None = None
    kernel: PhiKernel | None = None
    theorem: str = "t1"
    preset: str | None = None
    plan: SweepPlan | None = None
    out: str | None = None
    fmt: str = "csv"
    quad_tol: float = 1e-12
    tol: float = 1e-9
    inject_bound_scale: float = 1.0


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError([message])


def _add_common(parser):
    parser.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--quad-tol", type=float, default=1e-12,
                        help="base absolute quadrature tolerance")


def _build_parser():
    parser = _ArgumentParser(prog="phi-ineq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("selftest", help="run the full invariant battery")

    pv = sub.add_parser("verify", help="verify one parameter point")
    pv.add_argument("--fn", required=True,
                    help="registry name (e.g. t^3) or expression (e.g. 2*t^4 - t)")
    pv.add_argument("--a", type=float)
    pv.add_argument("--b", type=float)
    pv.add_argument("--x", type=float)
    pv.add_argument("--lambda", dest="lam", type=float)
    pv.add_argument("--alpha", type=float, default=1.0)
    pv.add_argument("--q", type=float, default=1.0)
    pv.add_argument("--s", type=float)
    pv.add_argument("--kernel", choices=("constant", "power", "mt"), default="constant")
    pv.add_argument("--theorem", choices=("t1", "t2", "hh", "lemma1"), default="t1")
    pv.add_argument("--preset", choices=("c2", "c5"),
                    help="midpoint presets: x=(a+b)/2, lambda in {1/3, 0, 1}, phi=1")
    pv.add_argument("--tol", type=float, default=1e-9)
    pv.add_argument("--inject-bound-scale", type=float, default=1.0,
                    help="test hook: multiply computed bounds by this factor")
    _add_common(pv)

    ps = sub.add_parser("sweep", help="run a parameter sweep")
    ps.add_argument("--config", metavar="PATH", help="JSON sweep plan")
    ps.add_argument("--tol", type=float, default=None,
                    help="margin tolerance (overrides the plan's value)")
    ps.add_argument("--inject-bound-scale", type=float, default=1.0,
                    help="test hook: multiply computed bounds by this factor")
    _add_common(ps)

    pc = sub.add_parser("coeffs", help="emit the printed-form discrepancy ledger")
    _add_common(pc)
    return parser


def _parse_kernel_token(token, violations):
    token = token.strip()
    if token == "constant":
        return PhiKernel.constant()
    if token == "mt":
        return PhiKernel.mt()
    if token.startswith("power:"):
        try:
            return PhiKernel.power(float(token.split(":", 1)[1]))
        except (ValueError, DomainError) as exc:
            violations.append(f"bad kernel spec {token!r}: {exc}")
            return None
    violations.append(f"unknown kernel spec {token!r} (use constant, power:S or mt)")
    return None


_PLAN_KEYS = {"functions", "kernels", "x", "lambda", "alpha", "q", "tol"}


def _plan_from_file(path, violations):
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        violations.append(f"cannot read config {path}: {exc}")
        return None
    except json.JSONDecodeError as exc:
        violations.append(f"config {path} is not valid JSON: {exc}")
        return None
    if not isinstance(raw, dict):
        violations.append(f"config {path} must hold a JSON object")
        return None
    unknown = sorted(set(raw) - _PLAN_KEYS)
    if unknown:
        violations.append(f"unknown config fields: {', '.join(unknown)}")
        return None
    default = default_sweep_plan()
    kernels = default.kernels
    if "kernels" in raw:
        kernels = tuple(
            k for k in (_parse_kernel_token(t, violations) for t in raw["kernels"])
            if k is not None
        )
    try:
        return SweepPlan(
            function_names=tuple(raw.get("functions", default.function_names)),
            kernels=kernels,
            x_rel=tuple(raw.get("x", default.x_rel)),
            lam=tuple(raw.get("lambda", default.lam)),
            alpha=tuple(raw.get("alpha", default.alpha)),
            q=tuple(raw.get("q", default.q)),
            tol=float(raw.get("tol", default.tol)),
        )
    except (DomainError, TypeError, ValueError) as exc:
        violations.append(f"invalid sweep plan: {exc}")
        return None


def parse_config(argv):
    """Parse flags (and any config file) into a validated RunConfig;
    raises UsageError listing every violation."""
    ns = _build_parser().parse_args(argv)
    violations = []
    cfg = RunConfig(command=ns.command)
    if ns.command == "selftest":
        return cfg

    cfg.out = ns.out
    cfg.fmt = ns.format
    cfg.quad_tol = ns.quad_tol
    if not cfg.quad_tol > 0.0:
        violations.append(f"--quad-tol must be positive, got {cfg.quad_tol}")

    if ns.command == "coeffs":
        if violations:
            raise UsageError(violations)
        return cfg

    cfg.tol = ns.tol
    cfg.inject_bound_scale = ns.inject_bound_scale

    if ns.command == "sweep":
        if ns.config is not None:
            cfg.plan = _plan_from_file(ns.config, violations)
        else:
            cfg.plan = default_sweep_plan()
        if ns.tol is not None and cfg.plan is not None:
            # command-line flags override config-file values
            if not ns.tol > 0.0:
                violations.append(f"--tol must be positive, got {ns.tol}")
            else:
                cfg.plan = replace(cfg.plan, tol=ns.tol)
        if violations:
            raise UsageError(violations)
        return cfg

    # verify
    cfg.function = ns.fn
    cfg.a, cfg.b = ns.a, ns.b
    cfg.x, cfg.lam = ns.x, ns.lam
    cfg.alpha, cfg.q, cfg.s = ns.alpha, ns.q, ns.s
    cfg.theorem = ns.theorem
    cfg.preset = ns.preset
    if ns.kernel == "power":
        if ns.s is None:
            violations.append("--kernel power requires --s")
        else:
            try:
                cfg.kernel = PhiKernel.power(ns.s)
            except DomainError as exc:
                violations.append(str(exc))
    else:
        cfg.kernel = PhiKernel.constant() if ns.kernel == "constant" else PhiKernel.mt()
    if cfg.a is not None and cfg.b is not None and not cfg.a < cfg.b:
        violations.append(f"interval needs a < b, got a={cfg.a}, b={cfg.b}")
    if cfg.lam is not None and not 0.0 <= cfg.lam <= 1.0:
        violations.append(f"lambda must lie in [0, 1], got {cfg.lam}")
    if not cfg.alpha > 0.0:
        violations.append(f"alpha must be positive, got {cfg.alpha}")
    if not cfg.q >= 1.0:
        violations.append(f"q must be >= 1, got {cfg.q}")
    if cfg.s is not None and not 0.0 < cfg.s <= 1.0:
        violations.append(f"s must lie in (0, 1], got {cfg.s}")
    if cfg.theorem == "t2" and cfg.q <= 1.0 and cfg.preset is None:
        violations.append("theorem t2 requires q > 1 (p is derived as q/(q-1))")
    if violations:
        raise UsageError(violations)
    return cfg


def _emit(cfg, text):
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _reports_exit(reports):
    statuses = {r.status for r in reports}
    if "FAIL" in statuses:
        return EXIT_FAIL
    if "ERROR" in statuses:
        return EXIT_NUMERICAL
    return EXIT_PASS


def _run_verify(cfg):
    fn = resolve_function(cfg.function, cfg.a, cfg.b)
    interval = fn.domain
    x = cfg.x if cfg.x is not None else 0.5 * (interval.a + interval.b)
    lam = cfg.lam if cfg.lam is not None else 0.0

    if cfg.preset is not None:
        theorem = "T1" if cfg.preset == "c2" else "T2"
        q = cfg.q if (cfg.preset == "c2" or cfg.q > 1.0) else 2.0
        reports = []
        for lam_preset in (1.0 / 3.0, 0.0, 1.0):
            params = EvalParams(interval, x=0.5 * (interval.a + interval.b),
                                lam=lam_preset, alpha=cfg.alpha, q=q)
            reports.append(verify_point(
                fn, params, PhiKernel.constant(), theorem,
                tol=cfg.tol, quad_tol=cfg.quad_tol, rhs_scale=cfg.inject_bound_scale,
            ))
        return reports

    if cfg.theorem == "hh":
        return [hermite_hadamard_check(fn, interval, quad_tol=cfg.quad_tol)]
    params = EvalParams(interval, x=x, lam=lam, alpha=cfg.alpha, q=cfg.q, s=cfg.s)
    if cfg.theorem == "lemma1":
        return [identity_check(fn, params, quad_tol=cfg.quad_tol)]
    return [verify_point(
        fn, params, cfg.kernel, cfg.theorem.upper(),
        tol=cfg.tol, quad_tol=cfg.quad_tol, rhs_scale=cfg.inject_bound_scale,
    )]


def execute(config):
    """Run a validated RunConfig; returns the process exit code."""
    if config.command == "selftest":
        return run_selftest()
    if config.command == "coeffs":
        entries = build_ledger(quad_tol=config.quad_tol)
        text = ledger_to_csv(entries) if config.fmt == "csv" else ledger_to_json(entries)
        _emit(config, text)
        return EXIT_PASS
    if config.command == "sweep":
        reports = sweep(config.plan, quad_tol=config.quad_tol,
                        rhs_scale=config.inject_bound_scale)
        text = reports_to_csv(reports) if config.fmt == "csv" else reports_to_json(reports)
        _emit(config, text)
        counts = sweep_summary(reports)
        print(
            f"sweep: {counts['total']} points, {counts['PASS']} pass, "
            f"{counts['FAIL']} fail, {counts['HYPOTHESIS_UNMET']} hypothesis-unmet, "
            f"{counts['ERROR']} error",
            file=sys.stderr,
        )
        return _reports_exit(reports)
    # verify
    reports = _run_verify(config)
    text = reports_to_csv(reports) if config.fmt == "csv" else reports_to_json(reports)
    _emit(config, text)
    return _reports_exit(reports)


def main(argv=None):
    try:
        config = parse_config(argv if argv is not None else sys.argv[1:])
        return execute(config)
    except UsageError as exc:
        for violation in exc.violations:
            print(f"usage error: {violation}", file=sys.stderr)
        return EXIT_USAGE
    except PhiIneqError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
