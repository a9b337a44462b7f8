"""Command-line front end: solve | sweep | evolve | green | check.

Configuration comes from an optional JSON file (--config) with explicit
flags taking precedence over file values.  Outputs are plain CSV/JSON plus
a PNG figure beside each CSV (suppress with --no-plot).  The default output
directory is $HALFWAVE_OUT, falling back to the working directory.

Exit codes: 0 success, 1 assertion/convergence failure, 2 usage, 3 I/O.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import figures
from .checks import CRITERIA, ProfileCache, run_acceptance
from .diagnostics import pohozaev_check, scaling_suite, virial_rate
from .evolution import UnstableEvolutionError, evolve, trace_to_csv
from .greenfn import green_eval, green_grid_csv, decay_bound_check
from .solver import (
    FromProfile,
    NonConvergenceError,
    SolveConfig,
    WaveProfile,
    load_profile,
    profile_to_csv,
    solve_profile,
    sweep,
    warm_start,
)
from .spectral import make_grid

EXIT_OK = 0
EXIT_ASSERT = 1
EXIT_USAGE = 2
EXIT_IO = 3


@dataclass
class RunConfig:
    """Run settings; nests to/from the JSON file layout losslessly."""

    n: int = 4096
    length: float = 200.0
    gamma: float = 4.0 / 3.0
    tol_residual: float = 1e-10
    tol_increment: float = 1e-12
    max_iter: int = 2000
    guess_width: float = 4.0
    gauge: str = "phase_peak_real"
    v: list[float] = field(default_factory=list)
    T: float = 10.0
    dt: float = 1e-3
    stride: int = 100
    suite: str = "all"
    out_dir: str = ""
    seed: int = 1234
    plot: bool = True

    def to_dict(self) -> dict:
        return {
            "grid": {"n": self.n, "L": self.length},
            "solver": {
                "gamma": self.gamma,
                "tol_residual": self.tol_residual,
                "tol_increment": self.tol_increment,
                "max_iter": self.max_iter,
                "guess_width": self.guess_width,
                "gauge": self.gauge,
            },
            "sweep": {"v": list(self.v)},
            "evolution": {"T": self.T, "dt": self.dt, "stride": self.stride},
            "diagnostics": {"suite": self.suite},
            "out_dir": self.out_dir,
            "seed": self.seed,
            "plot": self.plot,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        cfg = cls()
        grid = d.get("grid", {})
        solver = d.get("solver", {})
        sweep_d = d.get("sweep", {})
        evo = d.get("evolution", {})
        diag = d.get("diagnostics", {})
        return replace(
            cfg,
            n=int(grid.get("n", cfg.n)),
            length=float(grid.get("L", cfg.length)),
            gamma=float(solver.get("gamma", cfg.gamma)),
            tol_residual=float(solver.get("tol_residual", cfg.tol_residual)),
            tol_increment=float(solver.get("tol_increment", cfg.tol_increment)),
            max_iter=int(solver.get("max_iter", cfg.max_iter)),
            guess_width=float(solver.get("guess_width", cfg.guess_width)),
            gauge=str(solver.get("gauge", cfg.gauge)),
            v=[float(x) for x in sweep_d.get("v", cfg.v)],
            T=float(evo.get("T", cfg.T)),
            dt=float(evo.get("dt", cfg.dt)),
            stride=int(evo.get("stride", cfg.stride)),
            suite=str(diag.get("suite", cfg.suite)),
            out_dir=str(d.get("out_dir", cfg.out_dir)),
            seed=int(d.get("seed", cfg.seed)),
            plot=bool(d.get("plot", cfg.plot)),
        )

    def solve_config(self) -> SolveConfig:
        from .solver import GaussianPacket

        return SolveConfig(
            gamma=self.gamma,
            tol_residual=self.tol_residual,
            tol_increment=self.tol_increment,
            max_iter=self.max_iter,
            guess=GaussianPacket(width=self.guess_width),
            gauge=self.gauge,
        )


def _error_json(kind: str, message: str) -> None:
    print(json.dumps({"error": kind, "message": message}))


def _parse_v_list(spec: str) -> list[float]:
    """'0.9:0.99:0.01' (inclusive range), '0.1,0.3,0.5', or a single value."""
    if ":" in spec:
        lo, hi, step = (float(s) for s in spec.split(":"))
        count = int(round((hi - lo) / step))
        vals = [round(lo + i * step, 12) for i in range(count + 1)]
        return [v for v in vals if v <= hi + 1e-12]
    return [float(s) for s in spec.split(",")]


def _out_dir(cfg: RunConfig) -> str:
    return cfg.out_dir or os.environ.get("HALFWAVE_OUT", ".")


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _prepare_out(cfg: RunConfig) -> str:
    out = _out_dir(cfg)
    os.makedirs(out, exist_ok=True)
    probe = os.path.join(out, ".write_probe")
    with open(probe, "w") as fh:
        fh.write("")
    os.remove(probe)
    return out


def _profile_summary(p: WaveProfile) -> str:
    r1, r2 = pohozaev_check(p) if p.converged else (float("nan"), float("nan"))
    return (
        f"v={p.v:g} converged={p.converged} iterations={p.iterations} "
        f"residual={p.residual_l2:.3e} mass={p.report.mass:.9f} "
        f"momentum={p.report.momentum_term:.6f} pohozaev=({r1:.3e}, {r2:.3e})"
    )


def cmd_solve(cfg: RunConfig, args) -> int:
    if len(cfg.v) != 1:
        _error_json("usage", "solve needs exactly one --v")
        return EXIT_USAGE
    v = cfg.v[0]
    if not 0.0 < v < 1.0:
        _error_json("usage", f"v out of range (0, 1): {v}")
        return EXIT_USAGE
    try:
        out = _prepare_out(cfg)
    except OSError as err:
        _error_json("io", str(err))
        return EXIT_IO
    grid = make_grid(cfg.n, cfg.length)
    solve_cfg = cfg.solve_config()
    if args.warm_from:
        try:
            prev = load_profile(args.warm_from)
        except OSError as err:
            _error_json("io", str(err))
            return EXIT_IO
        solve_cfg = replace(solve_cfg, guess=FromProfile(warm_start(prev, v)))
    try:
        p = solve_profile(v, grid, solve_cfg)
    except NonConvergenceError as err:
        p = err.profile
    path = os.path.join(out, f"profile_v{v:g}.csv")
    try:
        _write(path, profile_to_csv(p))
        if cfg.plot:
            figures.profile_figure(p, os.path.join(out, f"profile_v{v:g}.png"))
    except OSError as err:
        _error_json("io", str(err))
        return EXIT_IO
    print(_profile_summary(p))
    print(f"wrote {path}")
    if not p.converged:
        _error_json("non_convergence", f"residual {p.residual_l2:.3e} after {p.iterations} iterations")
        return EXIT_ASSERT
    return EXIT_OK


def _sweep_summary_csv(profiles: list[WaveProfile]) -> str:
    lines = [
        "# columns: speed v, mass ||Q||_L2^2, ||Q||_{H^1/2-dot}^2, ||Q||_L5^5, "
        "conserved energy, virial/mass, stationary residual, iterations, converged flag",
        "v,mass,h_half,l5_fifth,hw_energy,virial_ratio,residual,iterations,converged",
    ]
    for p in profiles:
        vr = virial_rate(p.field) / p.report.mass if p.report.mass > 0 else float("nan")
        lines.append(
            ",".join(
                [
                    format(p.v, ".17g"),
                    format(p.report.mass, ".17g"),
                    format(p.report.h_half, ".17g"),
                    format(p.report.l5_fifth, ".17g"),
                    format(p.report.hw_energy, ".17g"),
                    format(vr, ".17g"),
                    format(p.residual_l2, ".17g"),
                    str(p.iterations),
                    str(int(p.converged)),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def cmd_sweep(cfg: RunConfig, args) -> int:
    if not cfg.v:
        _error_json("usage", "sweep needs --v")
        return EXIT_USAGE
    if any(not 0.0 < v < 1.0 for v in cfg.v):
        _error_json("usage", "all sweep speeds must lie in (0, 1)")
        return EXIT_USAGE
    try:
        out = _prepare_out(cfg)
    except OSError as err:
        _error_json("io", str(err))
        return EXIT_IO
    grid = make_grid(cfg.n, cfg.length)
    profiles = sweep(cfg.v, grid, cfg.solve_config())
    summary = _sweep_summary_csv(profiles)

    fits_ok = True
    fit_lines = []
    eligible = [p for p in profiles if p.converged and p.v >= 0.9]
    if len(eligible) >= 4:
        report = scaling_suite(eligible)
        fits_ok = report.passed
        for e in report.entries:
            tgt = e.target if not isinstance(e.target, tuple) else f"[{e.target[0]:g}, {e.target[1]:g}]"
            fit_lines.append(f"# fit {e.name} = {e.value:.6f} target {tgt} pass={int(e.passed)}")
    summary += "\n".join(fit_lines) + ("\n" if fit_lines else "")

    try:
        for p in profiles:
            _write(os.path.join(out, f"profile_v{p.v:g}.csv"), profile_to_csv(p))
        path = os.path.join(out, "sweep_summary.csv")
        _write(path, summary)
        if cfg.plot:
            figures.sweep_figure(profiles, os.path.join(out, "sweep_summary.png"))
    except OSError as err:
        _error_json("io", str(err))
        return EXIT_IO

    failures = [p.v for p in profiles if not p.converged]
    for line in fit_lines:
        print(line.lstrip("# "))
    print(f"wrote {path} ({len(profiles)} profiles, {len(failures)} failed)")
    if failures:
        _error_json("non_convergence", f"failed speeds: {failures}")
        return EXIT_ASSERT
    if not fits_ok:
        _error_json("assertion", "scaling fits out of range")
        return EXIT_ASSERT
    return EXIT_OK


def cmd_evolve(cfg: RunConfig, args) -> int:
    if not args.profile:
        _error_json("usage", "evolve needs --profile FILE")
        return EXIT_USAGE
    try:
        out = _prepare_out(cfg)
        p = load_profile(args.profile)
    except OSError as err:
        _error_json("io", str(err))
        return EXIT_IO
    try:
        _, trace = evolve(p.field, cfg.T, cfg.dt, reference=p, stride=cfg.stride)
    except UnstableEvolutionError as err:
        _error_json("unstable", str(err))
        return EXIT_ASSERT
    path = os.path.join(out, f"trace_v{p.v:g}.csv")
    try:
        _write(path, trace_to_csv(trace))
        if cfg.plot:
            figures.trace_figure(trace, os.path.join(out, f"trace_v{p.v:g}.png"))
    except OSError as err:
        _error_json("io", str(err))
        return EXIT_IO
    print(
        f"T={cfg.T:g} dt={cfg.dt:g}: mass drift {trace.mass_drift.max():.3e}, "
        f"energy drift {trace.energy_drift.max():.3e}, shape error {trace.shape_error.max():.3e}"
    )
    print(f"wrote {path}")
    return EXIT_OK


def cmd_green(cfg: RunConfig, args) -> int:
    try:
        out = _prepare_out(cfg)
    except OSError as err:
        _error_json("io", str(err))
        return EXIT_IO
    xs = _parse_v_list(args.x) if args.x else list(np.logspace(-1, 2, 25))
    ys = _parse_v_list(args.y) if args.y else [0.5, 1.0, 5.0]
    if any(y <= 0 for y in ys):
        _error_json("usage", "green needs y > 0")
        return EXIT_USAGE
    path = os.path.join(out, "green_grid.csv")
    try:
        _write(path, green_grid_csv(xs, ys, method=args.method))
        if cfg.plot:
            values = [[green_eval(x, y, args.method) for x in xs] for y in ys]
            figures.green_figure(xs, ys, values, os.path.join(out, "green_grid.png"))
    except OSError as err:
        _error_json("io", str(err))
        return EXIT_IO
    for x, y in [(xs[0], ys[0]), (xs[-1], ys[-1])]:
        vals = {m: green_eval(x, y, m) for m in ("quadrature", "series", "closed")}
        spread = max(abs(a - b) for a in vals.values() for b in vals.values()) / abs(vals["closed"])
        print(f"G({x:g}, {y:g}) = {vals['closed']:.10g}  cross-method spread {spread:.2e}")
    bound = decay_bound_check([(x, ys[0]) for x in xs if x > 0])
    print(f"decay bound constant over the grid: {bound:.4f}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_check(cfg: RunConfig, args) -> int:
    try:
        out = _prepare_out(cfg)
    except OSError as err:
        _error_json("io", str(err))
        return EXIT_IO
    names = None if cfg.suite == "all" else [s.strip() for s in cfg.suite.split(",") if s.strip()]
    try:
        report = run_acceptance(names, cache=ProfileCache(cfg.solve_config()))
    except ValueError as err:
        _error_json("usage", str(err))
        return EXIT_USAGE
    try:
        _write(os.path.join(out, "check_report.json"), report.to_json())
        _write(os.path.join(out, "check_report.csv"), report.to_csv())
    except OSError as err:
        _error_json("io", str(err))
        return EXIT_IO
    n_pass = sum(e.passed for e in report.entries)
    print(f"{n_pass}/{len(report.entries)} entries passed; report in {out}/check_report.json")
    return EXIT_OK if report.passed else EXIT_ASSERT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halfwave",
        description="Traveling waves of the 1D quartic focusing half-wave equation: "
        "solve profiles, sweep speeds, evolve, evaluate the boundary kernel, certify identities.",
        epilog="Values from --config are defaults; explicit flags override them.",
    )
    parser.add_argument("--config", help="JSON config file")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, help="grid points (even, >= 16)")
        p.add_argument("--L", type=float, dest="length", help="domain length")
        p.add_argument("--out", help="output directory (default $HALFWAVE_OUT or .)")
        p.add_argument("--no-plot", action="store_true", help="skip PNG figures")
        p.add_argument("--seed", type=int, help="seed for randomized checks")
        p.add_argument("--tol-residual", type=float, help="solver residual tolerance")
        p.add_argument("--max-iter", type=int, help="solver iteration cap")

    p_solve = sub.add_parser("solve", help="compute one traveling-wave profile")
    p_solve.add_argument("--v", required=True, help="wave speed in (0, 1)")
    p_solve.add_argument("--from", dest="warm_from", help="warm-start profile CSV")
    common(p_solve)

    p_sweep = sub.add_parser("sweep", help="continuation sweep over ascending speeds")
    p_sweep.add_argument("--v", required=True, help="list '0.1,0.3' or range '0.90:0.99:0.01'")
    common(p_sweep)

    p_evolve = sub.add_parser("evolve", help="propagate a stored profile under the flow")
    p_evolve.add_argument("--profile", required=True, help="profile CSV to evolve")
    p_evolve.add_argument("--T", type=float, help="final time (default 10)")
    p_evolve.add_argument("--dt", type=float, help="time step (default 1e-3)")
    p_evolve.add_argument("--stride", type=int, help="trace sampling stride (default 100)")
    common(p_evolve)

    p_green = sub.add_parser("green", help="evaluate the half-plane boundary kernel")
    p_green.add_argument("--x", help="x list/range (default log-spaced 0.1..100)")
    p_green.add_argument("--y", help="y list (default 0.5,1,5)")
    p_green.add_argument("--method", default="closed", choices=("quadrature", "series", "closed"))
    common(p_green)

    p_check = sub.add_parser("check", help="run the certification suite")
    p_check.add_argument("--suite", default=None,
                         help="'all' or comma list from: " + ", ".join(name for name, _, _ in CRITERIA))
    common(p_check)

    return parser


def _merge_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = RunConfig.from_dict(json.load(fh))
    overrides = {}
    if getattr(args, "n", None) is not None:
        overrides["n"] = args.n
    if getattr(args, "length", None) is not None:
        overrides["length"] = args.length
    if getattr(args, "out", None):
        overrides["out_dir"] = args.out
    if getattr(args, "no_plot", False):
        overrides["plot"] = False
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "tol_residual", None) is not None:
        overrides["tol_residual"] = args.tol_residual
    if getattr(args, "max_iter", None) is not None:
        overrides["max_iter"] = args.max_iter
    if getattr(args, "v", None):
        overrides["v"] = _parse_v_list(args.v)
    if getattr(args, "T", None) is not None:
        overrides["T"] = args.T
    if getattr(args, "dt", None) is not None:
        overrides["dt"] = args.dt
    if getattr(args, "stride", None) is not None:
        overrides["stride"] = args.stride
    if getattr(args, "suite", None):
        overrides["suite"] = args.suite
    return replace(cfg, **overrides)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
    except (OSError, json.JSONDecodeError) as err:
        _error_json("io", f"bad config: {err}")
        return EXIT_IO
    except ValueError as err:
        _error_json("usage", str(err))
        return EXIT_USAGE
    handlers = {
        "solve": cmd_solve,
        "sweep": cmd_sweep,
        "evolve": cmd_evolve,
        "green": cmd_green,
        "check": cmd_check,
    }
    try:
        return handlers[args.command](cfg, args)
    except ValueError as err:
        _error_json("usage", str(err))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
