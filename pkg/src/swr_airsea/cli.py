"""Command-line experiment harness.

Four subcommands cover the desk-scale experiments: `equilibrium`
(stationary profiles), `xi-sweep` (convergence-factor tables),
`swr-run` (one waveform-relaxation convergence experiment) and
`compare` (nonlinear vs linearized transmission conditions).  Commands
emit CSV data plus a JSON metadata sidecar; no plotting.

Numbers are serialized as the shortest round-trip decimal of the
binary64 value, so parse -> re-emit is byte-identical.
"""

import argparse
import json
import os
import sys
import time as _time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .analysis import (omega_plus_f_sweep, sweep_xi, xi0_linear, xi0_quadratic)
from .config import FRICTION_CHOICES, load_config
from .errors import ConfigError, SwrError
from .friction import LinearConstant, LinearizedQuadratic, Quadratic
from .model import ATMOSPHERE, OCEAN
from .solver import compute_equilibrium, solve_monolithic
from .swr import SwrConfig, empirical_xi, run_swr
from .analysis import xi_linear_values

THREADS_ENV = "SWR_AIRSEA_THREADS"


def fmt(x):
    """Shortest round-trip decimal representation of a binary64."""
    return repr(float(x))


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _thread_count():
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{THREADS_ENV} must be an integer") from exc
    return max(1, n)


def _map_batch(fn, items):
    """Apply fn over items, parallel when the env var allows; results
    keep the input order either way."""
    n = _thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _friction_law(name, alpha_c, eq_a, eq_o, alpha_e):
    if name == "linear":
        return LinearConstant(alpha_c=alpha_c)
    if name == "quadratic":
        return Quadratic()
    if name == "linearized":
        return LinearizedQuadratic.from_equilibrium(eq_a, eq_o, alpha_e)
    raise ConfigError(f"unknown friction law '{name}'")


def _swr_setup(cfg):
    """Shared preparation of every run: equilibrium state and alpha_c."""
    eq_a, eq_o, alpha_e = compute_equilibrium(cfg.params, cfg.grid)
    alpha_c = cfg.alpha_c if cfg.alpha_c is not None else alpha_e
    return eq_a, eq_o, alpha_e, alpha_c


def cmd_equilibrium(cfg, out_dir):
    """Write equilibrium.csv (domain,z,u,v) and print alpha_e."""
    eq_a, eq_o, alpha_e = compute_equilibrium(cfg.params, cfg.grid)
    rows = []
    for side, state in ((ATMOSPHERE, eq_a), (OCEAN, eq_o)):
        z = cfg.grid.cell_centers(side)
        for zi, ui in zip(z, state.u):
            rows.append([side, fmt(zi), fmt(ui.real), fmt(ui.imag)])
    path = os.path.join(out_dir, "equilibrium.csv")
    write_csv(path, ["domain", "z", "u", "v"], rows)
    print(f"alpha_e = {fmt(alpha_e)}")
    print(f"wrote {path}")
    return 0


def cmd_xi_sweep(cfg, out_dir, thetas, omega_min, omega_max, omega_points):
    """Tabulate the convergence factors over (theta, omega)."""
    _, _, _, alpha_c = _swr_setup(cfg)
    wpf = omega_plus_f_sweep(omega_min, omega_max, omega_points)

    def one_theta(theta):
        return theta, sweep_xi(cfg.params, cfg.grid, theta, alpha_c, wpf,
                               dt=cfg.time.dt)

    results = _map_batch(one_theta, thetas)
    rows = []
    skipped_total = 0
    beyond_total = 0
    for theta, (sweep_rows, skipped) in results:
        skipped_total += skipped
        for r in sweep_rows:
            beyond_total += int(r.beyond_nyquist)
            rows.append([fmt(theta), fmt(r.omega), fmt(r.xi_linear),
                         fmt(r.xi_dnwr), fmt(r.xi0_linear), fmt(r.xi0_quadratic)])
    path = os.path.join(out_dir, "xi_sweep.csv")
    write_csv(path, ["theta", "omega", "xi_linear", "xi_dnwr",
                     "xi0_linear", "xi0_quadratic"], rows)
    print(f"wrote {path} ({len(rows)} rows; {skipped_total} degenerate "
          f"frequencies skipped; {beyond_total} rows beyond the Nyquist "
          f"frequency pi/dt)")
    return 0


def _write_run_outputs(out_dir, stem, cfg, report, alpha_c, wall):
    """errors.csv + JSON sidecar (+ empirical_xi.csv for linear runs)."""
    rows = []
    for i in range(report.iterations):
        rows.append([str(i + 1), fmt(report.err_atm[i]), fmt(report.err_oce[i]),
                     fmt(report.err_total[i]), fmt(report.ratio[i])])
    csv_path = os.path.join(out_dir, stem + ".csv")
    write_csv(csv_path, ["iteration", "err_atm", "err_oce", "err_total",
                         "ratio"], rows)
    eps = cfg.params.epsilon
    if report.friction == "linear":
        xi0 = xi0_linear(report.theta, eps, cfg.params.nu_a, cfg.params.nu_o)
    else:
        xi0 = xi0_quadratic(report.theta, eps, cfg.params.nu_a, cfg.params.nu_o)
    meta = {
        "seed": report.seed,
        "theta": report.theta,
        "friction": report.friction,
        "xi0_predicted": xi0,
        "diverged": report.diverged,
        "iterations": report.iterations,
        "wall_seconds": wall,
    }
    json_path = os.path.join(out_dir, stem + ".json")
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
    written = [csv_path, json_path]
    if report.friction == "linear" and len(report.interface_errors_atm) >= 2:
        # ratio of the second/third iterate spectra (first pair past the
        # transient); fall back to the first pair on short runs
        k = 2 if len(report.interface_errors_atm) >= 3 else 1
        omegas, ratios = empirical_xi(report.interface_errors_atm[k - 1],
                                      report.interface_errors_atm[k],
                                      cfg.time.dt)
        predicted = xi_linear_values(cfg.params, cfg.grid, report.theta,
                                     alpha_c, omegas)
        xi_rows = [[fmt(w), fmt(r), fmt(p)]
                   for w, r, p in zip(omegas, ratios, predicted)]
        xi_path = os.path.join(out_dir, "empirical_xi.csv")
        write_csv(xi_path, ["omega", "ratio", "predicted_xi"], xi_rows)
        written.append(xi_path)
    return written


def cmd_swr_run(cfg, out_dir, thetas):
    """Run the waveform relaxation for each theta; write errors tables."""
    eq_a, eq_o, alpha_e, alpha_c = _swr_setup(cfg)
    law = _friction_law(cfg.friction, alpha_c, eq_a, eq_o, alpha_e)
    reference = solve_monolithic(cfg.params, cfg.grid, cfg.time, law,
                                 (eq_a, eq_o))

    def one_theta(theta):
        swr_cfg = SwrConfig(theta=theta, max_iters=cfg.swr.max_iters,
                            tol=cfg.swr.tol,
                            noise_amplitude=cfg.swr.noise_amplitude,
                            seed=cfg.swr.seed)
        t0 = _time.perf_counter()
        report, _ = run_swr(cfg.params, cfg.grid, cfg.time, law, swr_cfg,
                            (eq_a, eq_o), reference=reference)
        return report, _time.perf_counter() - t0

    results = _map_batch(one_theta, thetas)
    for theta, (report, wall) in zip(thetas, results):
        stem = "errors" if len(thetas) == 1 else f"errors_theta{fmt(theta)}"
        written = _write_run_outputs(out_dir, stem, cfg, report, alpha_c, wall)
        flag = " (diverged)" if report.diverged else ""
        print(f"theta={fmt(theta)}: {report.iterations} iterations{flag}; "
              f"wrote {', '.join(written)}")
    return 0


def cmd_compare(cfg, out_dir, thetas):
    """Nonlinear vs linearized transmission conditions, shared seed."""
    eq_a, eq_o, alpha_e, alpha_c = _swr_setup(cfg)
    law_nl = Quadratic()
    law_lin = LinearizedQuadratic.from_equilibrium(eq_a, eq_o, alpha_e)
    ref_nl = solve_monolithic(cfg.params, cfg.grid, cfg.time, law_nl,
                              (eq_a, eq_o))
    ref_lin = solve_monolithic(cfg.params, cfg.grid, cfg.time, law_lin,
                               (eq_a, eq_o))
    for theta in thetas:
        swr_cfg = SwrConfig(theta=theta, max_iters=cfg.swr.max_iters,
                            tol=cfg.swr.tol,
                            noise_amplitude=cfg.swr.noise_amplitude,
                            seed=cfg.swr.seed)
        rep_nl, _ = run_swr(cfg.params, cfg.grid, cfg.time, law_nl, swr_cfg,
                            (eq_a, eq_o), reference=ref_nl)
        rep_lin, _ = run_swr(cfg.params, cfg.grid, cfg.time, law_lin, swr_cfg,
                             (eq_a, eq_o), reference=ref_lin)
        k = min(rep_nl.iterations, rep_lin.iterations)
        rows = [[str(i + 1), fmt(rep_nl.err_total[i]), fmt(rep_lin.err_total[i])]
                for i in range(k)]
        stem = "compare" if len(thetas) == 1 else f"compare_theta{fmt(theta)}"
        path = os.path.join(out_dir, stem + ".csv")
        write_csv(path, ["iteration", "err_nl", "err_lin"], rows)
        print(f"theta={fmt(theta)}: wrote {path} ({k} rows)")
    return 0


def _parse_theta_list(raw):
    items = [s for s in (part.strip() for part in raw.split(",")) if s]
    if not items:
        raise argparse.ArgumentTypeError("theta list must not be empty")
    try:
        return [float(s) for s in items]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad theta list '{raw}'") from exc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="swr-airsea",
        description="Waveform-relaxation experiments for the coupled "
                    "ocean-atmosphere column model")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", metavar="PATH", default=None,
                       help="flat key=value config file (defaults built in)")
        p.add_argument("--out-dir", metavar="PATH", default=".",
                       help="directory for emitted files")

    p_eq = sub.add_parser("equilibrium", help="stationary profiles and alpha_e")
    common(p_eq)

    p_xi = sub.add_parser("xi-sweep", help="convergence-factor tables")
    common(p_xi)
    p_xi.add_argument("--theta", type=_parse_theta_list, default=None,
                      help="comma-separated relaxation parameters")
    p_xi.add_argument("--omega-min", type=float, default=1e-10,
                      help="lower bound of the omega+f sweep (s^-1)")
    p_xi.add_argument("--omega-max", type=float, default=1e2,
                      help="upper bound of the omega+f sweep (s^-1)")
    p_xi.add_argument("--omega-points", type=int, default=200,
                      help="number of logarithmic sweep points")

    p_run = sub.add_parser("swr-run", help="one convergence experiment")
    common(p_run)
    p_run.add_argument("--theta", type=_parse_theta_list, default=None)
    p_run.add_argument("--friction", choices=FRICTION_CHOICES, default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--iters", type=int, default=None,
                       help="maximum number of waveform iterations")

    p_cmp = sub.add_parser("compare", help="nonlinear vs linearized runs")
    common(p_cmp)
    p_cmp.add_argument("--theta", type=_parse_theta_list, default=None)
    p_cmp.add_argument("--seed", type=int, default=None)
    p_cmp.add_argument("--iters", type=int, default=None)
    return parser


def _apply_overrides(cfg, args):
    swr = cfg.swr
    seed = getattr(args, "seed", None)
    iters = getattr(args, "iters", None)
    if seed is not None or iters is not None:
        swr = SwrConfig(theta=swr.theta,
                        max_iters=iters if iters is not None else swr.max_iters,
                        tol=swr.tol, noise_amplitude=swr.noise_amplitude,
                        seed=seed if seed is not None else swr.seed)
        cfg.swr = swr
    friction = getattr(args, "friction", None)
    if friction is not None:
        cfg.friction = friction
    return cfg


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        cfg = _apply_overrides(cfg, args)
        os.makedirs(args.out_dir, exist_ok=True)
        thetas = getattr(args, "theta", None)
        if thetas is None:
            thetas = [cfg.swr.theta]
        if args.command == "equilibrium":
            return cmd_equilibrium(cfg, args.out_dir)
        if args.command == "xi-sweep":
            return cmd_xi_sweep(cfg, args.out_dir, thetas, args.omega_min,
                                args.omega_max, args.omega_points)
        if args.command == "swr-run":
            return cmd_swr_run(cfg, args.out_dir, thetas)
        if args.command == "compare":
            return cmd_compare(cfg, args.out_dir, thetas)
        parser.error(f"unknown command {args.command}")
    except (SwrError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
