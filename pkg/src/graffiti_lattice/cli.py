"""Command-line front end: run orchestration and result persistence.

Subcommands: mcmc (block-Gibbs chain), oracle (exact small-lattice
marginal and sampler comparison), meanfield (free-energy minimization,
transition location, tricritical scan, phase diagram), bounds (rigorous
bound report), abm (agent-based run).

Every parameter can come from an INI config file (one section per
subcommand) via --config; command-line flags override file values. The
environment variable GI_SEED supplies the default seed. Each run that
writes files also writes a manifest alongside them. All floats print
with 12 significant digits.
"""

from __future__ import annotations

import argparse
import configparser
import os
import sys

import numpy as np

from .lattice import CouplingParams, Lattice, SpinConfig, measure, write_snapshot
from .sampler import ChainSpec, run_chain, write_timeseries_csv
from .enumeration import compare_to_oracle, exact_eta_marginal, all_eta_configs
from .meanfield import (
    MFParams,
    minimize_phi,
    phase_diagram,
    transition,
    tricritical_scan,
    write_phase_diagram_csv,
)
from .bounds import bound_report, sparse_report, write_bounds_csv
from .abm import AbmConfig, abm_run, write_index_csv, write_snapshot_csvs
from .manifest import now, write_manifest

F = "%.12g"


def _default_seed():
    env = os.environ.get("GI_SEED")
    if env is not None:
        return int(env)
    return 0


def _coupling_args(p):
    p.add_argument("--j", type=float, default=None, help="bond coupling J >= 0")
    p.add_argument("--k", type=float, default=None, help="on-site coupling K >= 0")
    p.add_argument("--alpha", type=float, default=None, help="occupation bias alpha")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="graffiti stiffness lambda > 0")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="graffiti-lattice",
        description="Two-gang graffiti lattice model: sampling, oracles, "
        "mean-field analysis, rigorous bounds, and the agent-based model.",
    )
    parser.add_argument("--config", default=None,
                        help="INI config file; flags override file values")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("mcmc", help="run a block-Gibbs chain on a torus")
    p.add_argument("--l", type=int, default=None, help="torus side length (>= 3)")
    _coupling_args(p)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--burn-in", type=int, default=None, help="burn-in sweeps")
    p.add_argument("--sweeps", type=int, default=None, help="measurement sweeps")
    p.add_argument("--thinning", type=int, default=None)
    p.add_argument("--init", default=None,
                   choices=["all_red", "all_blue", "empty", "random"])
    p.add_argument("--p-occupy", type=float, default=None,
                   help="occupation probability for random init")
    p.add_argument("--output-dir", default=None,
                   help="write timeseries CSV, final snapshot, and manifest here")

    p = sub.add_parser("oracle", help="exact small-lattice marginal and sampler TV")
    p.add_argument("--l", type=int, default=None)
    _coupling_args(p)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--burn-in", type=int, default=None)
    p.add_argument("--sweeps", type=int, default=None,
                   help="total recorded samples for the TV comparison; "
                   "0 skips the sampler comparison")
    p.add_argument("--thinning", type=int, default=None)
    p.add_argument("--chains", type=int, default=None,
                   help="number of parallel chains for the comparison")
    p.add_argument("--output-dir", default=None,
                   help="write the exact marginal CSV and manifest here")

    p = sub.add_parser("meanfield", help="free-energy minimization and transitions")
    p.add_argument("--b-r", type=float, default=None, help="ambient occupancy in (0, 1)")
    p.add_argument("--mu", type=float, default=None,
                   help="reduced coupling; if given, minimize at this point")
    p.add_argument("--transition", action="store_true",
                   help="locate the transition in mu for this b_r")
    p.add_argument("--tricritical", action="store_true",
                   help="scan for the tricritical ambient occupancy")
    p.add_argument("--phase-diagram", action="store_true",
                   help="sweep mu and write a phase-diagram CSV")
    p.add_argument("--mu-min", type=float, default=None)
    p.add_argument("--mu-max", type=float, default=None)
    p.add_argument("--mu-points", type=int, default=None)
    p.add_argument("--resolution", type=int, default=None, help="grid-scan resolution")
    p.add_argument("--output-dir", default=None)

    p = sub.add_parser("bounds", help="rigorous bound report at one parameter point")
    _coupling_args(p)
    p.add_argument("--output-dir", default=None, help="write a one-row bounds CSV here")

    p = sub.add_parser("abm", help="agent-based segregation run")
    p.add_argument("--side", type=int, default=None)
    p.add_argument("--n-red", type=int, default=None)
    p.add_argument("--n-blue", type=int, default=None)
    p.add_argument("--p-m-unmarked", type=float, default=None)
    p.add_argument("--p-m-marked", type=float, default=None)
    p.add_argument("--p-g", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--snapshot-times", default=None,
                   help="comma-separated step numbers")
    p.add_argument("--decay", default=None, choices=["binomial", "multiplicative"])
    p.add_argument("--output-dir", default=None)
    return parser


# per-subcommand defaults, applied after config-file and flag merging
_DEFAULTS = {
    "mcmc": dict(l=16, j=1.0, k=1.0, alpha=0.0, lam=1.0, burn_in=1000,
                 sweeps=10000, thinning=1, init="random", p_occupy=0.5),
    "oracle": dict(l=3, j=0.5, k=0.5, alpha=0.0, lam=1.0, burn_in=200,
                   sweeps=100000, thinning=1, chains=256),
    "meanfield": dict(b_r=0.5, mu_points=200, resolution=800),
    "bounds": dict(j=1.0, k=1.0, alpha=0.0, lam=1.0),
    "abm": dict(side=100, n_red=100000, n_blue=100000, p_m_unmarked=0.1,
                p_m_marked=1.0, p_g=0.25, steps=1000, snapshot_times="",
                decay="binomial"),
}

_TYPES = {
    "l": int, "j": float, "k": float, "alpha": float, "lam": float,
    "seed": int, "burn_in": int, "sweeps": int, "thinning": int,
    "p_occupy": float, "chains": int, "b_r": float, "mu": float,
    "mu_min": float, "mu_max": float, "mu_points": int, "resolution": int,
    "side": int, "n_red": int, "n_blue": int, "p_m_unmarked": float,
    "p_m_marked": float, "p_g": float, "steps": int,
}


def _merge_options(args):
    """Resolve each option as: flag > config file > built-in default."""
    opts = dict(_DEFAULTS.get(args.command, {}))
    if getattr(args, "config", None):
        cp = configparser.ConfigParser()
        if not cp.read(args.config):
            raise UsageError("config file not found: %s" % args.config)
        if cp.has_section(args.command):
            for key, raw in cp.items(args.command):
                key = key.replace("-", "_")
                conv = _TYPES.get(key, str)
                try:
                    opts[key] = conv(raw)
                except ValueError:
                    raise UsageError(
                        "config value %s = %r is not a valid %s"
                        % (key, raw, conv.__name__)
                    )
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None and value is not False:
            opts[key] = value
    if opts.get("seed") is None:
        opts["seed"] = _default_seed()
    return opts


class UsageError(Exception):
    pass


def _print_kv(key, value):
    if isinstance(value, (float, np.floating)):
        print("%s: %s" % (key, F % value))
    else:
        print("%s: %s" % (key, value))


def _manifest(out_dir, command, opts, outputs, started):
    path = os.path.join(out_dir, "%s_manifest.txt" % command)
    params = {k: v for k, v in opts.items() if v is not None}
    seed = params.pop("seed", "none")
    write_manifest(path, command, params, seed, outputs, started, now())


def _cmd_mcmc(opts):
    started = now()
    params = CouplingParams(j=opts["j"], k=opts["k"], alpha=opts["alpha"],
                            lam=opts["lam"])
    lattice = Lattice.torus2d(opts["l"])
    spec = ChainSpec(seed=opts["seed"], burn_in_sweeps=opts["burn_in"],
                     sweeps=opts["sweeps"], thinning=opts["thinning"],
                     init=opts["init"], p_occupy=opts["p_occupy"])
    stats, series, config = run_chain(lattice, params, spec)
    for name in ("b", "n", "G", "energy_per_site"):
        _print_kv("mean_%s" % name, stats.mean[name])
        _print_kv("stderr_%s" % name, stats.std_error[name])
        _print_kv("iact_%s" % name, stats.iact[name])
    _print_kv("binder_cumulant", stats.binder_cumulant)
    _print_kv("samples", stats.num_samples)
    out_dir = opts.get("output_dir")
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        ts = os.path.join(out_dir, "mcmc_timeseries.csv")
        write_timeseries_csv(series, ts)
        snaps = write_snapshot(config, lattice, params, opts["seed"],
                               os.path.join(out_dir, "mcmc_final"))
        _manifest(out_dir, "mcmc", opts, [ts] + list(snaps), started)
    return 0


def _cmd_oracle(opts):
    started = now()
    params = CouplingParams(j=opts["j"], k=opts["k"], alpha=opts["alpha"],
                            lam=opts["lam"])
    lattice = Lattice.torus2d(opts["l"])
    probs = exact_eta_marginal(lattice, params)
    _print_kv("num_configs", probs.size)
    _print_kv("max_probability", float(probs.max()))
    if opts["sweeps"] > 0:
        spec = ChainSpec(seed=opts["seed"], burn_in_sweeps=opts["burn_in"],
                         sweeps=opts["sweeps"], thinning=opts["thinning"])
        tv = compare_to_oracle(lattice, params, spec, num_chains=opts["chains"])
        _print_kv("tv_distance", tv)
    out_dir = opts.get("output_dir")
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, "oracle_marginal.csv")
        with open(path, "w") as fh:
            fh.write("index," + ",".join(
                "eta_%d" % i for i in range(lattice.num_sites)) + ",probability\n")
            for idx, eta in enumerate(all_eta_configs(lattice.num_sites)):
                fh.write("%d,%s,%s\n" % (
                    idx, ",".join(str(int(e)) for e in eta), F % probs[idx]))
        _manifest(out_dir, "oracle", opts, [path], started)
    return 0


def _print_solution(sol):
    _print_kv("b", sol.b)
    _print_kv("n", sol.n)
    _print_kv("phi", sol.phi_value)
    _print_kv("trivial", sol.is_trivial)
    _print_kv("residual_b", sol.residuals[0])
    _print_kv("residual_n", sol.residuals[1])


def _cmd_meanfield(opts):
    started = now()
    if opts.get("tricritical"):
        point = tricritical_scan()
        _print_kv("tricritical_b_r", point.b_r)
        _print_kv("tricritical_alpha", point.alpha)
        return 0
    b_r = opts["b_r"]
    if opts.get("phase_diagram"):
        mu_spinodal = 1.0 / b_r
        mu_lo = opts.get("mu_min")
        mu_hi = opts.get("mu_max")
        if mu_lo is None:
            mu_lo = 0.5 * mu_spinodal
        if mu_hi is None:
            mu_hi = 2.0 * mu_spinodal
        mus = np.linspace(mu_lo, mu_hi, opts["mu_points"])
        rows = phase_diagram([b_r], mus, resolution=opts["resolution"])
        out_dir = opts.get("output_dir") or "."
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, "phase_diagram_b%s.csv" % (F % b_r))
        write_phase_diagram_csv(rows, path)
        _manifest(out_dir, "meanfield", opts, [path], started)
        print("wrote %s" % path)
        return 0
    if opts.get("transition") or opts.get("mu") is None:
        report = transition(b_r, resolution=opts["resolution"])
        _print_kv("mu_T", report.mu_T)
        _print_kv("mu_S", report.mu_S)
        _print_kv("order", report.order)
        _print_kv("n_jump", report.n_jump)
        return 0
    sol = minimize_phi(MFParams(b_r=b_r, mu=opts["mu"]),
                       resolution=opts["resolution"])
    _print_solution(sol)
    return 0


def _cmd_bounds(opts):
    started = now()
    params = CouplingParams(j=opts["j"], k=opts["k"], alpha=opts["alpha"],
                            lam=opts["lam"])
    rep = bound_report(params)
    for pattern, value in sorted(rep.logz_per_site.items()):
        _print_kv("logz_%s" % pattern, value)
    _print_kv("bound_00", rep.bound_00)
    _print_kv("bound_pm", rep.bound_pm)
    _print_kv("bound_p0", rep.bound_p0)
    _print_kv("epsilon", rep.epsilon)
    _print_kv("lambda2", rep.lambda2)
    _print_kv("peierls_total", rep.peierls_total)
    _print_kv("epsilon0", rep.epsilon0)
    _print_kv("piy_epsilon", rep.piy_epsilon)
    sparse = sparse_report(params)
    _print_kv("delta_alpha_min", sparse.delta_alpha)
    _print_kv("classification", rep.classification)
    out_dir = opts.get("output_dir")
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, "bounds.csv")
        write_bounds_csv([params], path)
        _manifest(out_dir, "bounds", opts, [path], started)
    return 0


def _cmd_abm(opts):
    started = now()
    snap_raw = opts.get("snapshot_times") or ""
    snap_times = tuple(int(s) for s in str(snap_raw).split(",") if s.strip())
    config = AbmConfig(side=opts["side"], n_red=opts["n_red"],
                       n_blue=opts["n_blue"],
                       p_m_unmarked=opts["p_m_unmarked"],
                       p_m_marked=opts["p_m_marked"], p_g=opts["p_g"],
                       steps=opts["steps"], seed=opts["seed"],
                       snapshot_times=snap_times, decay=opts["decay"])
    indices, state, snapshots = abm_run(config)
    tail = max(1, config.steps // 10)
    _print_kv("final_index", float(indices[-1]))
    _print_kv("mean_index_final_tenth", float(np.mean(indices[-tail:])))
    _print_kv("total_graffiti", int(state.red_graffiti.sum()
                                    + state.blue_graffiti.sum()))
    out_dir = opts.get("output_dir")
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        idx_path = os.path.join(out_dir, "abm_index.csv")
        write_index_csv(indices, idx_path)
        outputs = [idx_path]
        outputs += write_snapshot_csvs(snapshots, os.path.join(out_dir, "abm"))
        _manifest(out_dir, "abm", opts, outputs, started)
    return 0


_COMMANDS = {
    "mcmc": _cmd_mcmc,
    "oracle": _cmd_oracle,
    "meanfield": _cmd_meanfield,
    "bounds": _cmd_bounds,
    "abm": _cmd_abm,
}


def run_cli(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        opts = _merge_options(args)
        return _COMMANDS[args.command](opts)
    except (UsageError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print("runtime error: %s" % exc, file=sys.stderr)
        return 1


def main(argv=None):
    return run_cli(argv)


if __name__ == "__main__":
    sys.exit(main())
