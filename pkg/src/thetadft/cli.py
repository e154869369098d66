"""Command-line front end.

Every subcommand builds a list of flat result rows and a pass flag, then
writes them as JSON, CSV or text. Exit status: 0 when every check in the
invocation is within tolerance, 1 when one is not, 2 on usage or domain
errors. Output depends only on the arguments, so repeated runs are
byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import eigenstates, gram, identities, theta, twovar
from .theta import TruncationError

ENV_TOL = "THETA_DFT_TOL"
COMMANDS = ("theta", "eigenstate", "dft-check", "gram", "sweep", "identities", "twovar")


class UsageError(Exception):
    """Bad flag values that argparse cannot catch on its own."""


@dataclass
class RunConfig:
    command: str
    params: dict[str, Any] = field(default_factory=dict)
    tol: float = 1e-9
    format: str = "text"
    output_path: str | None = None


@dataclass
class RunResult:
    rows: list[dict[str, Any]]
    passed: bool


def _flatten(row: dict[str, Any]) -> dict[str, Any]:
    out = {}
    for key, value in row.items():
        if isinstance(value, complex):
            out[f"{key}_re"], out[f"{key}_im"] = value.real, value.imag
        else:
            out[key] = value
    return out


# ---- subcommands -----------------------------------------------------------

def _cmd_theta(p, tol):
    z, tau = complex(p["z"]), complex(p["tau_re"], p["tau_im"])
    order, kind = p["derivative"], p["kind"]
    if order:
        if kind != 3:
            raise UsageError("--derivative is only available for --kind 3")
        value = theta.theta3_z_derivative(z, tau, order)
    else:
        value = {2: theta.theta2, 3: theta.theta3, 4: theta.theta4}[kind](z, tau)
    return RunResult([_flatten({"kind": kind, "derivative": order, "z": z, "tau": tau,
                                "value": complex(value)})], True)


def _cmd_eigenstate(p, tol):
    N, n, xi, rep = p["N"], p["n"], p["xi"], p["representation"]
    if rep == "direct":
        state = eigenstates.eigenstate_direct(N, n, xi)
    elif xi != 1.0:
        raise UsageError(f"representation {rep!r} needs --xi 1")
    elif rep == "dual":
        state = eigenstates.eigenstate_dual(N, n)
    else:
        state = eigenstates.eigenstate_theta_taylor(N, n)
    rows = [_flatten({"N": N, "n": n, "xi": xi, "j": j, "value": complex(v)})
            for j, v in enumerate(state.values)]
    return RunResult(rows, True)


def _cmd_dft_check(p, tol):
    N, xi = p["N"], p["xi"]
    indices = [p["n"]] if p["n"] is not None else range(min(p["index_max"], N - 1) + 1)
    rows, passed = [], True
    for n in indices:
        rep = eigenstates.eigen_residual(N, n, xi, tol)
        degenerate = rep.extra["degenerate"]
        row = {"N": N, "n": n, "xi": xi, "degenerate": degenerate,
               "residual": rep.residual, "tol": tol,
               "passed": rep.passed or degenerate,
               "norm": rep.extra["norm"],
               "fitted_constant_re": rep.extra.get("fitted_constant_re"),
               "fitted_constant_im": rep.extra.get("fitted_constant_im"),
               "expected_constant": rep.extra.get("expected_constant"),
               "literal_residual": rep.extra.get("literal_residual")}
        passed &= row["passed"]
        rows.append(row)
    return RunResult(rows, passed)


def _gram_rows(report, normalization):
    rows = []
    for N, n, m, entry, degenerate in report.rows():
        if normalization == "diagonal" and not degenerate:
            entry = gram.normalized_inner_product(N, n, m, "diagonal")
        rows.append(_flatten({"N": N, "n": n, "m": m, "entry": complex(entry),
                              "abs": abs(entry), "mod4_equal": (n - m) % 4 == 0,
                              "degenerate": degenerate}))
    return rows


def _cmd_gram(p, tol):
    report = gram.gram_report(p["N"], p["n_max"], cross_check=not p["no_cross_check"])
    rows = _gram_rows(report, p["normalization"])
    summary = {"N": report.N, "k": report.k, "max_off_mod4": report.max_off_mod4,
               "conjecture_violation": report.conjecture_violation,
               "hermitian_error": report.hermitian_error, "diagonal_error": report.diagonal_error,
               "closed_form_error": report.closed_form_error,
               "degenerate": " ".join(map(str, report.degenerate))}
    passed = max(report.max_off_mod4, report.hermitian_error, report.diagonal_error) <= tol
    if report.closed_form_error is not None:
        passed &= report.closed_form_error <= p["closed_form_tol"]
    return RunResult(rows + [{"record": "summary", **summary}], bool(passed))


def _cmd_sweep(p, tol):
    if p["n_min"] < 1 or p["n_max"] < p["n_min"]:
        raise UsageError("need 1 <= --n-min <= --n-max")
    reports = gram.conjecture_sweep(range(p["n_min"], p["n_max"] + 1), p["index_max"],
                                    cross_check=False)
    rows = [row for r in reports for row in _gram_rows(r, p["normalization"])]
    passed = all(r.max_off_mod4 <= tol for r in reports)
    return RunResult(rows, bool(passed))


def _cmd_identities(p, tol):
    result = identities.run_identity_suite(p["suite"], tol)
    rows = [{"record": "check", **_flatten(r.as_row())} for r in result.reports]
    rows += [{"record": "constant_fit", **f.as_row()} for f in result.fits]
    return RunResult(rows, result.passed)


def _cmd_twovar(p, tol):
    N, m, n = p["N"], p["m"], p["n"]
    state = twovar.two_var_state(N, m, n)
    rows, passed = [], True
    for vrep in (twovar.conjugation_residual(state, tol), twovar.eigen2d_residual(state, tol)):
        for r in vrep.rows:
            rows.append({"record": vrep.check, "N": N, "m": m, "n": n, "variant": r.name,
                         "residual": r.residual, "tol": tol, "passed": r.passed,
                         "selected": r.name == vrep.selected})
        passed &= vrep.passed
    par = twovar.parseval_residual(state, tol)
    rows.append({"record": "parseval", "N": N, "m": m, "n": n, "residual": par.residual,
                 "tol": tol, "passed": par.passed})
    passed &= par.passed
    if p["m2"] is not None or p["n2"] is not None:
        m2 = p["m2"] if p["m2"] is not None else m
        n2 = p["n2"] if p["n2"] is not None else n
        value = twovar.overlap_sum(N, m, n, m2, n2, p["overlap_reading"], normalized=True)
        must_vanish = (m + n - m2 - n2) % 4 != 0
        ok = abs(value) <= tol if must_vanish else True
        rows.append(_flatten({"record": "overlap", "N": N, "m": m, "n": n, "m2": m2, "n2": n2,
                              "reading": p["overlap_reading"], "value": complex(value),
                              "abs": abs(value), "must_vanish": must_vanish, "passed": ok}))
        passed &= ok
    return RunResult(rows, passed)


HANDLERS = {
    "theta": _cmd_theta,
    "eigenstate": _cmd_eigenstate,
    "dft-check": _cmd_dft_check,
    "gram": _cmd_gram,
    "sweep": _cmd_sweep,
    "identities": _cmd_identities,
    "twovar": _cmd_twovar,
}


# ---- writers ---------------------------------------------------------------

def _plain(value):
    return value.item() if isinstance(value, np.generic) else value


def _text_value(value):
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _json_value(value):
    value = _plain(value)
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render(config: RunConfig, result: RunResult) -> str:
    if config.format == "json":
        doc = {
            "command": config.command,
            "params": {k: _json_value(v) for k, v in sorted(_flatten(config.params).items())},
            "results": [{k: _json_value(v) for k, v in row.items()} for row in result.rows],
            "pass": result.passed,
        }
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if config.format == "csv":
        header: dict[str, None] = {}
        for row in result.rows:
            header.update(dict.fromkeys(row))
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in result.rows:
            writer.writerow(_text_value(row.get(key)) for key in header)
        return buf.getvalue()
    lines = [f"{config.command}: {'pass' if result.passed else 'FAIL'}"]
    lines += [" ".join(f"{k}={_text_value(v)}" for k, v in row.items()) for row in result.rows]
    return "\n".join(lines) + "\n"


# ---- entry points ----------------------------------------------------------

def run(config: RunConfig) -> int:
    """Execute one configured command and write its output; return the exit code."""
    if config.command not in HANDLERS:
        print(f"error: unknown command {config.command!r}", file=sys.stderr)
        return 2
    try:
        result = HANDLERS[config.command](config.params, config.tol)
    except (UsageError, ValueError, TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(config, result)
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if result.passed else 1


def _default_tol() -> float:
    raw = os.environ.get(ENV_TOL)
    if raw is None:
        return 1e-9
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{ENV_TOL}={raw!r} is not a number") from None
    if not value > 0:
        raise UsageError(f"{ENV_TOL} must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--output", default=None, help="write to this file instead of stdout")
    common.add_argument("--tol", type=float, default=None,
                        help=f"check tolerance (default: ${ENV_TOL} or 1e-9)")

    parser = argparse.ArgumentParser(prog="thetadft",
                                     description="Theta-function DFT eigenstate toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theta", parents=[common], help="evaluate theta2/3/4 or a z-derivative")
    p.add_argument("--z", type=complex, default=0j, help="complex argument, e.g. 0.3+0.1j")
    p.add_argument("--tau-re", type=float, default=0.0)
    p.add_argument("--tau-im", type=float, required=True)
    p.add_argument("--kind", type=int, choices=(2, 3, 4), default=3)
    p.add_argument("--derivative", type=int, default=0)

    p = sub.add_parser("eigenstate", parents=[common], help="print f_n(j, xi) for j = 0..N-1")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--xi", type=float, default=1.0)
    p.add_argument("--representation", choices=("direct", "dual", "theta-taylor"),
                   default="direct")

    p = sub.add_parser("dft-check", parents=[common], help="eigen-relation residuals")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="single index (default: all up to --index-max)")
    p.add_argument("--index-max", type=int, default=10)
    p.add_argument("--xi", type=float, default=1.0)

    for name, helptext in (("gram", "normalised Gram matrix for one N"),
                           ("sweep", "Gram rows (N, n, m), n >= m, over a range of N")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if name == "gram":
            p.add_argument("--N", type=int, required=True)
            p.add_argument("--n-max", type=int, default=8)
            p.add_argument("--no-cross-check", action="store_true")
            p.add_argument("--closed-form-tol", type=float, default=1e-8)
        else:
            p.add_argument("--n-min", type=int, required=True)
            p.add_argument("--n-max", type=int, required=True)
            p.add_argument("--index-max", type=int, default=6)
        p.add_argument("--normalization", choices=("cosine", "diagonal"), default="cosine")

    p = sub.add_parser("identities", parents=[common], help="theta identity residual suite")
    p.add_argument("--suite", choices=("all",) + identities.SUITES, default="all")

    p = sub.add_parser("twovar", parents=[common], help="two-variable state checks")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m2", type=int, default=None)
    p.add_argument("--n2", type=int, default=None)
    p.add_argument("--overlap-reading", choices=("literal", "inner"), default="literal")
    return parser


def parse_config(argv=None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    command, fmt, output, tol = (args.pop(k) for k in ("command", "format", "output", "tol"))
    if tol is None:
        tol = _default_tol()
    elif not tol > 0:
        raise UsageError("--tol must be positive")
    return RunConfig(command, args, tol, fmt, output)


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
