"""Command-line front end: kernel tables, bounds, W1 oracle, Bayesian
experiments and the self-test battery, emitted as CSV or JSON.

Exit codes: 0 ok, 2 config error, 3 numeric error, 4 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .circle_core import QuadratureGrid
from .distributions import DistributionSpec, Family, von_mises
from .errors import ContractError, NumericError
from .selftest import run_selftest
from .stein_core import circular_kernel_closed, circular_kernel_numeric, classical_kernel
from .w1_oracle import circular_w1
from .wasserstein_bounds import bayes_envelope, bayes_posteriors, sandwich_bounds

__all__ = ["main", "run"]

_CLOSED_FORM_FAMILIES = (
    Family.VON_MISES,
    Family.UNIFORM,
    Family.BINGHAM,
    Family.WRAPPED_CAUCHY,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circstein",
        description="Stein kernels and Wasserstein bounds for circular distributions.",
    )
    parser.add_argument(
        "command",
        choices=["kernel", "bound", "w1", "bayes", "selftest"],
        help="operation to run",
    )
    parser.add_argument("--config", metavar="PATH", help="JSON config file; flags override it")
    parser.add_argument(
        "--family",
        action="append",
        default=None,
        help="distribution family (repeat for two distributions)",
    )
    parser.add_argument(
        "--location", action="append", type=float, default=None, help="location parameter"
    )
    parser.add_argument(
        "--concentration",
        action="append",
        type=float,
        default=None,
        help="concentration parameter",
    )
    parser.add_argument("--grid", type=int, default=None, metavar="N", help="quadrature nodes")
    parser.add_argument("--seed", type=int, default=None, metavar="S", help="sampling seed")
    parser.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    parser.add_argument("--format", choices=["csv", "json"], default=None)
    parser.add_argument("--kappa", type=float, default=None, help="bayes: likelihood kappa")
    parser.add_argument("--kappa-star", type=float, default=None, help="bayes: prior kappa*")
    parser.add_argument(
        "--n-values",
        default=None,
        metavar="N1,N2,...",
        help="bayes: comma-separated sample sizes",
    )
    return parser


def _default_grid_size() -> int:
    env = os.environ.get("CIRCSTEIN_GRID")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"CIRCSTEIN_GRID must be an integer, got {env!r}") from exc
    return 4096


def _load_config(args: argparse.Namespace) -> dict:
    """Merge defaults, an optional JSON config file and command-line flags."""
    cfg = {
        "command": args.command,
        "distributions": [],
        "grid_size": _default_grid_size(),
        "seed": 0,
        "output_path": None,
        "format": "json",
        "kappa": 2.0,
        "kappa_star": 1.0,
        "n_values": [100, 400, 1600],
        "data": {"family": "von_mises", "location": 0.5, "concentration": 2.0},
    }
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            file_cfg = json.load(fh)
        if not isinstance(file_cfg, dict):
            raise ValueError("config file must contain a JSON object")
        cfg.update(file_cfg)
    if args.family is not None:
        locs = args.location or []
        cons = args.concentration or []
        cfg["distributions"] = [
            {
                "family": fam,
                "location": locs[i] if i < len(locs) else 0.0,
                "concentration": cons[i] if i < len(cons) else 0.0,
            }
            for i, fam in enumerate(args.family)
        ]
    if args.grid is not None:
        cfg["grid_size"] = args.grid
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.out is not None:
        cfg["output_path"] = args.out
    if args.format is not None:
        cfg["format"] = args.format
    if args.kappa is not None:
        cfg["kappa"] = args.kappa
    if args.kappa_star is not None:
        cfg["kappa_star"] = args.kappa_star
    if args.n_values is not None:
        cfg["n_values"] = [int(v) for v in str(args.n_values).split(",") if v]
    return cfg


def _validate(cfg: dict) -> tuple[list[DistributionSpec], QuadratureGrid]:
    if cfg["command"] not in ("kernel", "bound", "w1", "bayes", "selftest"):
        raise ValueError(f"unknown command {cfg['command']!r}")
    grid_size = int(cfg["grid_size"])
    if grid_size < 16:
        raise ValueError(f"grid_size must be >= 16, got {grid_size}")
    dists = [DistributionSpec.from_dict(d) for d in cfg["distributions"]]
    need = {"kernel": 1, "bound": 2, "w1": 2, "bayes": 0, "selftest": 0}[cfg["command"]]
    if len(dists) != need:
        raise ValueError(
            f"command {cfg['command']!r} needs {need} distribution(s), got {len(dists)}"
        )
    if cfg["command"] == "bayes":
        if float(cfg["kappa"]) <= 0 or float(cfg["kappa_star"]) <= 0:
            raise ValueError("bayes: kappa and kappa_star must be > 0")
        if not cfg["n_values"] or any(int(n) < 1 for n in cfg["n_values"]):
            raise ValueError("bayes: n_values must be positive integers")
    return dists, QuadratureGrid(grid_size)


def _meta(cfg: dict) -> dict:
    return {
        "tool": "circstein",
        "version": __version__,
        "command": cfg["command"],
        "grid_size": int(cfg["grid_size"]),
        "seed": int(cfg["seed"]),
    }


def _emit(cfg: dict, header: list[str], rows: list[list], payload: dict) -> None:
    """Write the result as CSV (rows) or JSON (payload), to file or stdout."""
    meta = _meta(cfg)
    if cfg["format"] == "csv":
        lines = [
            "# " + " ".join(f"{k}={v}" for k, v in meta.items()),
            ",".join(header),
        ]
        for row in rows:
            lines.append(
                ",".join("" if v is None else (f"{v:.17g}" if isinstance(v, float) else str(v)) for v in row)
            )
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps({**meta, **payload}, indent=2, sort_keys=True) + "\n"
    if cfg["output_path"]:
        with open(cfg["output_path"], "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_kernel(cfg: dict, dists, grid: QuadratureGrid) -> int:
    dist = dists[0]
    thetas = np.linspace(-math.pi, math.pi, 722)[1:]
    tau = np.asarray(classical_kernel(dist, thetas, grid))
    tau_num = np.asarray(circular_kernel_numeric(dist, thetas, grid))
    if dist.family in _CLOSED_FORM_FAMILIES:
        tau_closed = [float(v) for v in np.asarray(circular_kernel_closed(dist, thetas))]
    else:
        tau_closed = [None] * thetas.size
    rows = [
        [float(t), float(a), c, float(n)]
        for t, a, c, n in zip(thetas, tau, tau_closed, tau_num)
    ]
    payload = {
        "distribution": json.loads(dist.to_json()),
        "rows": [
            {
                "theta": r[0],
                "tau_classical": r[1],
                "tau_circular_closed": r[2],
                "tau_circular_numeric": r[3],
            }
            for r in rows
        ],
    }
    _emit(cfg, ["theta", "tau_classical", "tau_circular_closed", "tau_circular_numeric"], rows, payload)
    return 0


def _run_bound(cfg: dict, dists, grid: QuadratureGrid) -> int:
    report = sandwich_bounds(dists[0], dists[1], grid)
    d = report.to_dict()
    header = ["base_family", "base_location", "base_concentration",
              "target_family", "target_location", "target_concentration",
              "lower", "upper", "oracle_w1", "envelope"]
    row = [
        d["base"]["family"], float(d["base"]["location"]), float(d["base"]["concentration"]),
        d["target"]["family"], float(d["target"]["location"]), float(d["target"]["concentration"]),
        float(d["lower"]), float(d["upper"]),
        None if d["oracle_w1"] is None else float(d["oracle_w1"]),
        None if d["envelope"] is None else float(d["envelope"]),
    ]
    _emit(cfg, header, [row], d)
    return 0


def _run_w1(cfg: dict, dists, grid: QuadratureGrid) -> int:
    result = circular_w1(dists[0], dists[1], grid)
    payload = {
        "p": json.loads(dists[0].to_json()),
        "q": json.loads(dists[1].to_json()),
        "w1": result.value,
        "c_star": result.c_star,
    }
    header = ["p_family", "p_location", "p_concentration",
              "q_family", "q_location", "q_concentration", "w1", "c_star"]
    row = [
        dists[0].family.value, dists[0].location, dists[0].concentration,
        dists[1].family.value, dists[1].location, dists[1].concentration,
        float(result.value), float(result.c_star),
    ]
    _emit(cfg, header, [row], payload)
    return 0


def _run_bayes(cfg: dict, grid: QuadratureGrid) -> int:
    data_spec = DistributionSpec.from_dict(cfg["data"])
    kappa = float(cfg["kappa"])
    kappa_star = float(cfg["kappa_star"])
    seed = int(cfg["seed"])
    rows = []
    for n in cfg["n_values"]:
        data = data_spec.sample(int(n), seed, grid)
        post = bayes_posteriors(data, kappa, kappa_star)
        env = bayes_envelope(data, kappa, kappa_star)
        w1 = circular_w1(post.model1(), post.model2(), grid).value
        rows.append(
            [int(n), post.psi, post.kappa_R, post.psi_star, post.R_star, float(env), float(w1)]
        )
    header = ["n", "psi", "kappa_R", "psi_star", "R_star", "envelope", "oracle_w1"]
    payload = {
        "data": json.loads(data_spec.to_json()),
        "kappa": kappa,
        "kappa_star": kappa_star,
        "rows": [dict(zip(header, r)) for r in rows],
    }
    _emit(cfg, header, rows, payload)
    return 0


def run(cfg: dict) -> int:
    """Execute a validated configuration; returns the process exit code."""
    dists, grid = _validate(cfg)
    command = cfg["command"]
    if command == "selftest":
        failures = run_selftest()
        return 4 if failures else 0
    if command == "kernel":
        return _run_kernel(cfg, dists, grid)
    if command == "bound":
        return _run_bound(cfg, dists, grid)
    if command == "w1":
        return _run_w1(cfg, dists, grid)
    return _run_bayes(cfg, grid)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        dists_grid = _validate(cfg)  # fail fast, before any computation
    except (ValueError, ContractError, OSError, json.JSONDecodeError) as exc:
        print(f"circstein: config error: {exc}", file=sys.stderr)
        return 2
    del dists_grid
    try:
        return run(cfg)
    except NumericError as exc:
        print(f"circstein: numeric error in {cfg['command']}: {exc}", file=sys.stderr)
        return 3
    except ContractError as exc:
        print(f"circstein: config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
