"""Batch command-line front end.

Commands:

* ``solve``       one Tikhonov minimization at ``alpha`` for data with noise level ``delta``
* ``select``      discrepancy-principle grid search at noise level ``delta``
* ``sweep``       the convergence table over ``deltas``
* ``diagnostics`` ratio curves for the auxiliary-element and parameter-choice bounds

Configuration comes from an optional JSON file whose keys are exactly the
:class:`RunConfig` field names; command-line flags override file values.
"""

import argparse
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import auxiliary
from .discrepancy import DiscrepancyConfig, _fmt, select_alpha, write_trace_csv
from .exceptions import ConfigurationError
from .experiment import TABLE1_DELTAS, NoiseSpec, perturb, run_sweep, write_sweep_csv
from .model import make_paper_problem
from .solver import minimize_tikhonov

COMMANDS = ("solve", "select", "sweep", "diagnostics")


@dataclass(frozen=True)
class RunConfig:
    N: int = 6000
    c: float = 0.9
    kappa: float = 1.8
    a: float = 1.0
    radius: float = 3.0
    alpha0: float = 0.9
    theta: float = 10.0
    k: float = 3.0
    deltas: tuple = TABLE1_DELTAS
    seed: int = 0
    command: str = "sweep"
    output_path: str = None
    format: str = "csv"
    alpha: float = None
    delta: float = None
    accept: str = "lower"

    @property
    def discrepancy(self):
        return DiscrepancyConfig(k=self.k, theta=self.theta, alpha0=self.alpha0, accept=self.accept)


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}


def _positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ConfigurationError(f"{name} must be a positive finite number, got {value!r}")


def _validate(cfg):
    if not isinstance(cfg.N, int) or isinstance(cfg.N, bool) or cfg.N < 2:
        raise ConfigurationError(f"N must be an integer >= 2, got {cfg.N!r}")
    for name in ("c", "kappa", "a", "radius", "alpha0"):
        _positive(name, getattr(cfg, name))
    # ||G|| = b_1**-(2a+2) = 1 for b_n = n
    if cfg.c >= 1.0:
        raise ConfigurationError(f"c must satisfy c * ||G|| < 1 with ||G|| = 1, got c = {cfg.c}")
    if not cfg.k > 1:
        raise ConfigurationError(f"k must be > 1, got {cfg.k}")
    if not cfg.theta > 1:
        raise ConfigurationError(f"theta must be > 1, got {cfg.theta}")
    if not cfg.deltas:
        raise ConfigurationError("deltas must be nonempty")
    for d in cfg.deltas:
        _positive("deltas entry", d)
        if cfg.c * d >= 1:
            raise ConfigurationError(f"deltas entry {d} violates c * delta < 1")
    if list(cfg.deltas) != sorted(cfg.deltas, reverse=True):
        raise ConfigurationError("deltas must be in descending order")
    if not isinstance(cfg.seed, int) or isinstance(cfg.seed, bool):
        raise ConfigurationError(f"seed must be an integer, got {cfg.seed!r}")
    if cfg.command not in COMMANDS:
        raise ConfigurationError(f"command must be one of {COMMANDS}, got {cfg.command!r}")
    if cfg.format not in ("csv", "json"):
        raise ConfigurationError(f"format must be 'csv' or 'json', got {cfg.format!r}")
    if cfg.accept not in ("lower", "upper"):
        raise ConfigurationError(f"accept must be 'lower' or 'upper', got {cfg.accept!r}")
    for name in ("alpha", "delta"):
        if getattr(cfg, name) is not None:
            _positive(name, getattr(cfg, name))
    if cfg.delta is not None and cfg.c * cfg.delta >= 1:
        raise ConfigurationError("delta violates c * delta < 1")
    if cfg.command == "solve" and (cfg.alpha is None or cfg.delta is None):
        raise ConfigurationError("solve needs both alpha and delta")
    if cfg.command == "select" and cfg.delta is None:
        raise ConfigurationError("select needs delta")


def parse_config(text=None, overrides=None):
    """Build a validated :class:`RunConfig` from JSON text and flag overrides.

    Missing keys take the defaults of the reference experiment.
    """
    values = {}
    if text is not None and text.strip():
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config is not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigurationError("config must be a JSON object")
        values.update(doc)
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    unknown = sorted(set(values) - set(_FIELDS))
    if unknown:
        raise ConfigurationError(f"unknown config keys: {', '.join(unknown)}")
    if "deltas" in values:
        if not isinstance(values["deltas"], (list, tuple)):
            raise ConfigurationError("deltas must be a list")
        values["deltas"] = tuple(float(d) for d in values["deltas"])
    for name in ("c", "kappa", "a", "radius", "alpha0", "theta", "k", "alpha", "delta"):
        if isinstance(values.get(name), int) and not isinstance(values[name], bool):
            values[name] = float(values[name])
    cfg = RunConfig(**values)
    _validate(cfg)
    return cfg


def emit_config(cfg):
    doc = dataclasses.asdict(cfg)
    doc["deltas"] = list(cfg.deltas)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _open_output(cfg):
    if cfg.output_path in (None, "-"):
        return sys.stdout, False
    return open(cfg.output_path, "w", newline=""), True


def _run_solve(cfg, problem, source):
    f_delta = perturb(problem.f_true, NoiseSpec(cfg.delta, cfg.seed))
    sol = minimize_tikhonov(problem, f_delta, cfg.alpha)
    fh, own = _open_output(cfg)
    try:
        if cfg.format == "json":
            doc = {
                "alpha": sol.alpha, "delta": cfg.delta, "seed": cfg.seed,
                "residual": sol.residual, "penalty": sol.penalty, "objective": sol.objective,
                "error": float(np.linalg.norm(sol.u - problem.u_true)),
                "u": sol.u.tolist(),
            }
            fh.write(json.dumps(doc) + "\n")
        else:
            fh.write("n,u\n")
            for i, value in enumerate(sol.u, start=1):
                fh.write(f"{i},{_fmt(value)}\n")
    finally:
        if own:
            fh.close()


def _run_select(cfg, problem, source):
    f_delta = perturb(problem.f_true, NoiseSpec(cfg.delta, cfg.seed))
    sel = select_alpha(problem, f_delta, cfg.delta, cfg.discrepancy)
    fh, own = _open_output(cfg)
    try:
        if cfg.format == "json":
            doc = {
                "alpha_star": _fmt(sel.alpha_star) if math.isinf(sel.alpha_star) else sel.alpha_star,
                "grid_index": sel.grid_index,
                "residual": sel.solution.residual,
                "k_delta": cfg.k * cfg.delta,
                "error": float(np.linalg.norm(sel.solution.u - problem.u_true)),
                "trace": [dataclasses.asdict(e) for e in sel.trace],
            }
            fh.write(json.dumps(doc) + "\n")
        else:
            write_trace_csv(fh, sel.trace, cfg.k * cfg.delta)
    finally:
        if own:
            fh.close()


def _run_sweep(cfg, problem, source):
    rows = run_sweep(problem, source, cfg.deltas, cfg.discrepancy, cfg.seed)
    fh, own = _open_output(cfg)
    try:
        if cfg.format == "json":
            docs = []
            for row in rows:
                doc = dataclasses.asdict(row)
                doc["alpha_star"] = "inf" if math.isinf(row.alpha_star) else row.alpha_star
                docs.append(doc)
            fh.write(json.dumps(docs) + "\n")
        else:
            write_sweep_csv(fh, rows)
    finally:
        if own:
            fh.close()
    return rows


def run_diagnostics(cfg, problem, source, directory):
    """Write lemma33.csv, lemma35.csv, lemma44.csv, lemma45.csv and chi.csv into ``directory``."""
    os.makedirs(directory, exist_ok=True)
    scale, phi = problem.scale, source.phi
    r = scale.r

    alphas = np.logspace(-14, math.log10(0.5), 57)
    auxiliary.lemma33_check(scale, phi, problem.u_true, problem.u_bar, alphas).to_csv(
        os.path.join(directory, "lemma33.csv"), "alpha")

    deltas = np.logspace(-12, -3, 37)
    auxiliary.lemma35_ratios(phi, deltas, scale.smoothing_order_a).to_csv(
        os.path.join(directory, "lemma35.csv"), "delta")

    ts = np.logspace(-12, 0, 49)
    _, curves = auxiliary.chi_lower_bound_check(ts, r, phi.kappa, phi.c)
    curves.to_csv(os.path.join(directory, "chi.csv"), "t")

    rows = run_sweep(problem, source, cfg.deltas, cfg.discrepancy, cfg.seed)
    good = [row for row in rows if not row.failed]
    low = auxiliary.lemma44_lower_bound_check(good, phi, r)
    finite = [row for row in good if math.isfinite(row.alpha_star)]
    _write_rows(os.path.join(directory, "lemma44.csv"), ("delta", "alpha_star", "beta", "ratio1"),
                [(row.delta, row.alpha_star, auxiliary.a_priori_beta(phi, row.delta, r), v)
                 for row, v in zip(finite, low.values)])
    up = auxiliary.lemma45_bound_check(good, phi, scale.smoothing_order_a)
    _write_rows(os.path.join(directory, "lemma45.csv"), ("delta", "penalty_norm", "scale", "ratio1"),
                [(row.delta, row.penalty_norm, float(auxiliary.lemma45_scale(phi, row.delta, scale.smoothing_order_a)), v)
                 for row, v in zip(good, up.values)])


def _write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def run(cfg):
    """Dispatch ``cfg.command``; returns a process exit status."""
    problem, source = make_paper_problem(cfg.N, cfg.radius, cfg.c, cfg.kappa, cfg.a)
    if cfg.command == "solve":
        _run_solve(cfg, problem, source)
    elif cfg.command == "select":
        _run_select(cfg, problem, source)
    elif cfg.command == "sweep":
        _run_sweep(cfg, problem, source)
    else:
        run_diagnostics(cfg, problem, source, cfg.output_path or "diagnostics")
    return 0


def _error_report(exc, status):
    report = {"status": "error", "type": type(exc).__name__, "message": str(exc), "exit_code": status}
    sys.stderr.write(json.dumps(report) + "\n")
    return status


def build_parser():
    parser = argparse.ArgumentParser(prog="hilbert-tikhonov", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", metavar="PATH", help="JSON config file (keys = RunConfig fields)")
    parser.add_argument("--command", choices=COMMANDS)
    parser.add_argument("--output", metavar="PATH", dest="output_path",
                        help="output file (directory for diagnostics); stdout if omitted")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--delta", type=float)
    parser.add_argument("--format", choices=("csv", "json"))
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    overrides = {k: v for k, v in vars(args).items() if k != "config"}
    try:
        text = None
        if args.config:
            with open(args.config) as fh:
                text = fh.read()
        cfg = parse_config(text, overrides)
    except (ConfigurationError, OSError) as exc:
        return _error_report(exc, 2)
    try:
        return run(cfg)
    except Exception as exc:  # reported as JSON on stderr, never a traceback
        return _error_report(exc, 1)


if __name__ == "__main__":
    sys.exit(main())
