"""Command-line interface.

Subcommands:

* ``simulate``  -- write one ensemble as CSV (``time,inst_0,...``)
* ``diagnose``  -- quantile fan / summary / growth / preasymptotic CSVs
* ``spde``      -- stochastic heat field CSVs
* ``evolve``    -- evolutionary leverage search CSV
* ``replicate`` -- regenerate the five reference figures (CSV + SVG) plus a
  digest manifest

Exit codes: 0 success, 2 usage or validation failure, 1 runtime/data failure.
All outputs are deterministic functions of the flags; ``--seed`` defaults to
12345 everywhere.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .agents import PoolConfig, evolutionary_optimize
from .csvio import ensemble_to_csv, read_ensemble_csv, write_csv
from .diagnostics import (DEFAULT_FAN_LEVELS, growth_rates,
                          preasymptotic_report, quantile_fan, summary_curves)
from .errors import (DomainError, GridError, PositivityError, SchemaError,
                     SizeError, StabilityError, StokitError)
from .figures import build_all, fan_series, level_column
from .processes import (AdaptiveOU, Brownian, GeometricBrownian, GeometricLevy,
                        LevyStable, OrnsteinUhlenbeck, Poisson, simulate)
from .spde import Dirichlet, Neumann, SpdeSpec, extract_profiles, simulate_heat_spde
from .svgplot import LineBundle, Series, render_svg

# (flag, default) per family; None means the flag is required.
_FAMILY_FLAGS = {
    "brownian": (("drift", 0.0), ("scale", 1.0), ("x0", 0.0)),
    "gbm": (("mu", None), ("sigma", None), ("x0", 1.0)),
    "levy": (("alpha", None), ("beta", None), ("scale", None), ("loc", 0.0),
             ("x0", 0.0)),
    "glevy": (("alpha", None), ("beta", None), ("scale", None), ("loc", 0.0),
              ("x0", 1.0)),
    "ou": (("theta", None), ("mean", None), ("scale", None), ("x0", None)),
    "aou": (("theta0", None), ("mean", None), ("scale", None), ("x0", None),
            ("eta", 0.0), ("band", 0.0), ("theta_min", 0.01), ("theta_max", 50.0)),
    "poisson": (("rate", None), ("jump", 1.0), ("x0", 0.0)),
}

_FAMILY_TYPES = {
    "brownian": Brownian,
    "gbm": GeometricBrownian,
    "levy": LevyStable,
    "glevy": GeometricLevy,
    "ou": OrnsteinUhlenbeck,
    "aou": AdaptiveOU,
    "poisson": Poisson,
}


def _spec_from_flags(family: str, args: argparse.Namespace):
    if family is None:
        raise DomainError("no input: pass --in FILE or a process family")
    kwargs = {}
    for name, default in _FAMILY_FLAGS[family]:
        value = getattr(args, name, None)
        if value is None:
            if default is None:
                raise DomainError(
                    f"--{name.replace('_', '-')} is required for family '{family}'")
            value = default
        kwargs[name] = value
    return _FAMILY_TYPES[family](**kwargs)


def _add_family_flags(parser: argparse.ArgumentParser, family: str) -> None:
    for name, default in _FAMILY_FLAGS[family]:
        helptext = "required" if default is None else f"default {default}"
        parser.add_argument(f"--{name.replace('_', '-')}", type=float,
                            default=None, help=helptext)


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t", type=float, required=True, help="horizon")
    parser.add_argument("--dt", type=float, required=True, help="time step")
    parser.add_argument("--n", type=int, required=True, help="instances")
    parser.add_argument("--seed", type=int, default=12345)
    parser.add_argument("--workers", type=int, default=1)


def _parse_levels(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise DomainError(f"bad --fan-levels value: {exc}") from None


def _parse_boundary(text: str):
    if text == "neumann":
        return Neumann()
    if text == "dirichlet":
        return Dirichlet(0.0, 0.0)
    if text.startswith("dirichlet:"):
        parts = text[len("dirichlet:"):].split(",")
        if len(parts) != 2:
            raise DomainError(f"bad --boundary value {text!r}; "
                              "use dirichlet:LEFT,RIGHT or neumann")
        try:
            return Dirichlet(float(parts[0]), float(parts[1]))
        except ValueError as exc:
            raise DomainError(f"bad --boundary value: {exc}") from None
    raise DomainError(f"bad --boundary value {text!r}; "
                      "use dirichlet, dirichlet:LEFT,RIGHT, or neumann")


_INITIAL_PROFILES = {
    "sine": lambda length: (lambda x: np.sin(np.pi * x / length)),
    "zero": lambda length: (lambda x: np.zeros_like(x)),
    "bump": lambda length: (
        lambda x: np.exp(-((x - 0.5 * length) / (0.1 * length)) ** 2)),
}


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


# --- command handlers -----------------------------------------------------

def cmd_simulate(args: argparse.Namespace) -> int:
    spec = _spec_from_flags(args.family, args)
    ensemble = simulate(spec, args.t, args.dt, args.n, args.seed,
                        workers=args.workers)
    Path(args.out).write_text(ensemble_to_csv(ensemble), encoding="utf-8")
    return 0


def cmd_diagnose(args: argparse.Namespace) -> int:
    if args.infile is not None:
        ensemble = read_ensemble_csv(args.infile)
    else:
        spec = _spec_from_flags(args.family, args)
        for flag in ("t", "dt", "n"):
            if getattr(args, flag) is None:
                raise DomainError(f"--{flag} is required when simulating inline")
        ensemble = simulate(spec, args.t, args.dt, args.n, args.seed,
                            workers=args.workers)
    want_fan = args.fan or args.fan_levels is not None
    if not (want_fan or args.summary or args.growth or args.preasym):
        raise DomainError("request at least one diagnostic "
                          "(--fan/--fan-levels, --summary, --growth, --preasym)")
    prefix = args.out_prefix
    times = ensemble.grid.times

    if want_fan:
        levels = (_parse_levels(args.fan_levels) if args.fan_levels is not None
                  else DEFAULT_FAN_LEVELS)
        fan = quantile_fan(ensemble, levels)
        header = ["time"] + [level_column(p) for p in fan.levels]
        rows = ([times[k], *fan.curves[:, k]] for k in range(times.size))
        write_csv(f"{prefix}_fan.csv", header, rows)
        if args.svg:
            bundle = LineBundle("Quantile fan", "time", "value",
                                tuple(fan_series(fan, times)))
            Path(f"{prefix}_fan.svg").write_text(render_svg(bundle), encoding="utf-8")
    if args.summary:
        summary = summary_curves(ensemble)
        header = ["time", "amean", "median", "gmean"]
        rows = ([times[k], summary.arithmetic_mean[k], summary.median[k],
                 summary.geometric_mean[k]] for k in range(times.size))
        write_csv(f"{prefix}_summary.csv", header, rows)
        if args.svg:
            bundle = LineBundle(
                "Ensemble summaries", "time", "value",
                (Series("arithmetic mean", times, summary.arithmetic_mean),
                 Series("median", times, summary.median),
                 Series("geometric mean", times, summary.geometric_mean)))
            Path(f"{prefix}_summary.svg").write_text(render_svg(bundle),
                                                     encoding="utf-8")
    if args.growth:
        rates = growth_rates(ensemble)
        rows = [["time_average", rates.time_average],
                ["ensemble_average", rates.ensemble_average]]
        write_csv(f"{prefix}_growth.csv", ["metric", "value"], rows)
    if args.preasym:
        series = ensemble.values[0]  # diagnostics run on inst_0
        report = preasymptotic_report(series, ensemble.grid,
                                      tail_fraction=args.tail_fraction,
                                      window=args.preasym_window)
        window = report.window
        header = ["time", "distance", "fluctuation"]
        rows = ([times[k], report.distance_curve[k],
                 report.fluctuation_curve[k - window] if k >= window else float("nan")]
                for k in range(times.size))
        write_csv(f"{prefix}_preasym.csv", header, rows)
        if args.svg:
            bundle = LineBundle(
                "Preasymptotic diagnostics", "time", "value",
                (Series("distance", times, report.distance_curve),
                 Series("fluctuation", times[window:], report.fluctuation_curve)))
            Path(f"{prefix}_preasym.svg").write_text(render_svg(bundle),
                                                     encoding="utf-8")
    return 0


def cmd_spde(args: argparse.Namespace) -> int:
    boundary = _parse_boundary(args.boundary)
    profile = _INITIAL_PROFILES[args.init](args.L)
    spec = SpdeSpec(kappa=args.kappa, sigma=args.sigma, length=args.L,
                    boundary=boundary, initial_profile=profile)
    field = simulate_heat_spde(spec, args.dx, args.dt, args.t, args.seed)
    prefix = args.out_prefix
    header = ["time"] + [f"u{j}" for j in range(field.x_grid.size)]
    rows = ([field.t_grid[k], *field.u[k]] for k in range(field.t_grid.size))
    write_csv(f"{prefix}_field.csv", header, rows)
    initial, final = extract_profiles(field)
    rows = ([field.x_grid[j], initial[j], final[j]]
            for j in range(field.x_grid.size))
    write_csv(f"{prefix}_profiles.csv", ["x", "initial", "final"], rows)
    if args.svg:
        from .svgplot import HeatmapBundle
        stride = max(1, field.t_grid.size // 120)
        heat = HeatmapBundle("Stochastic heat field", "x", "time",
                             (float(field.x_grid[0]), float(field.x_grid[-1])),
                             (float(field.t_grid[0]), float(field.t_grid[-1])),
                             field.u[::stride])
        Path(f"{prefix}_field.svg").write_text(render_svg(heat, "heatmap"),
                                               encoding="utf-8")
        prof = LineBundle("Initial vs final profile", "x", "u",
                          (Series("initial", field.x_grid, initial),
                           Series("final", field.x_grid, final)))
        Path(f"{prefix}_profiles.svg").write_text(render_svg(prof),
                                                  encoding="utf-8")
    return 0


def cmd_evolve(args: argparse.Namespace) -> int:
    spec = _spec_from_flags(args.family, args)
    config = PoolConfig(
        n_agents=args.agents, generations=args.generations,
        mutation_sd=args.mutation_sd, survivor_share=args.survivor_share,
        horizon=args.t, dt=args.dt, paths_per_eval=args.paths,
        f_min=args.f_min, f_max=args.f_max, seed=args.seed,
        initial_fraction=args.initial_fraction)
    best, history = evolutionary_optimize(config, spec)
    rows = ([str(g), stat.best_fraction, stat.best_fitness]
            for g, stat in enumerate(history))
    write_csv(args.out, ["generation", "best_fraction", "best_fitness"], rows)
    print(f"{best:.17g}")
    return 0


def cmd_replicate(args: argparse.Namespace) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    bundles = build_all(args.seed, workers=args.workers)
    manifest_lines = [
        f"# stokit {__version__}",
        f"# command: stokit replicate --outdir {args.outdir} "
        f"--seed {args.seed} --workers {args.workers}",
    ]
    files: list[Path] = []
    for bundle in bundles:
        manifest_lines.append(f"# {bundle.note}")
        csv_path = outdir / f"{bundle.name}.csv"
        svg_path = outdir / f"{bundle.name}.svg"
        csv_path.write_text(bundle.csv_text, encoding="utf-8")
        svg_path.write_text(bundle.svg_text, encoding="utf-8")
        files.extend([csv_path, svg_path])
    for path in files:
        manifest_lines.append(f"{path.name}\t{_sha256(path)}")
    (outdir / "manifest.txt").write_text("\n".join(manifest_lines) + "\n",
                                         encoding="utf-8")
    print(f"wrote {len(files)} figure files and manifest.txt to {outdir}")
    return 0


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stokit",
        description="Deterministic stochastic-process simulation, ergodicity "
                    "diagnostics, and figure replication.")
    parser.add_argument("--version", action="version",
                        version=f"stokit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="simulate an ensemble to CSV")
    fam_sub = p_sim.add_subparsers(dest="family", required=True)
    for family in _FAMILY_FLAGS:
        p_fam = fam_sub.add_parser(family)
        _add_family_flags(p_fam, family)
        _add_run_flags(p_fam)
        p_fam.add_argument("--out", required=True, help="output CSV path")
        p_fam.set_defaults(func=cmd_simulate, family=family)

    p_diag = sub.add_parser("diagnose", help="ensemble diagnostics to CSV")
    p_diag.add_argument("--in", dest="infile", default=None,
                        help="ensemble CSV produced by 'simulate'")
    p_diag.add_argument("--family", choices=sorted(_FAMILY_FLAGS), default=None,
                        help="simulate inline instead of reading --in")
    process_flags = {name for flags in _FAMILY_FLAGS.values()
                     for name, _ in flags}
    for name in sorted(process_flags):
        p_diag.add_argument(f"--{name.replace('_', '-')}", type=float,
                            default=None, help=argparse.SUPPRESS)
    p_diag.add_argument("--t", type=float, default=None)
    p_diag.add_argument("--dt", type=float, default=None)
    p_diag.add_argument("--n", type=int, default=None)
    p_diag.add_argument("--seed", type=int, default=12345)
    p_diag.add_argument("--workers", type=int, default=1)
    p_diag.add_argument("--fan", action="store_true",
                        help="quantile fan at the default levels")
    p_diag.add_argument("--fan-levels", default=None,
                        help="comma-separated quantile levels in (0,1)")
    p_diag.add_argument("--summary", action="store_true")
    p_diag.add_argument("--growth", action="store_true")
    p_diag.add_argument("--preasym", action="store_true",
                        help="preasymptotics of inst_0")
    p_diag.add_argument("--preasym-window", type=int, default=50)
    p_diag.add_argument("--tail-fraction", type=float, default=0.5)
    p_diag.add_argument("--out-prefix", required=True)
    p_diag.add_argument("--svg", action="store_true",
                        help="also render SVG charts")
    p_diag.set_defaults(func=cmd_diagnose)

    p_spde = sub.add_parser("spde", help="stochastic heat equation to CSV")
    p_spde.add_argument("--kappa", type=float, required=True)
    p_spde.add_argument("--sigma", type=float, default=0.0)
    p_spde.add_argument("--L", type=float, required=True)
    p_spde.add_argument("--dx", type=float, required=True)
    p_spde.add_argument("--dt", type=float, required=True)
    p_spde.add_argument("--t", type=float, required=True)
    p_spde.add_argument("--boundary", default="dirichlet:0,0",
                        help="dirichlet[:LEFT,RIGHT] or neumann")
    p_spde.add_argument("--init", choices=sorted(_INITIAL_PROFILES),
                        default="sine")
    p_spde.add_argument("--seed", type=int, default=12345)
    p_spde.add_argument("--out-prefix", required=True)
    p_spde.add_argument("--svg", action="store_true")
    p_spde.set_defaults(func=cmd_spde)

    p_evo = sub.add_parser("evolve", help="evolutionary leverage search")
    p_evo.add_argument("--family", choices=("gbm", "glevy"), default="gbm")
    for name in ("mu", "sigma", "alpha", "beta", "scale", "loc", "x0"):
        p_evo.add_argument(f"--{name}", type=float, default=None,
                           help=argparse.SUPPRESS)
    p_evo.add_argument("--agents", type=int, default=40)
    p_evo.add_argument("--generations", type=int, default=30)
    p_evo.add_argument("--mutation-sd", type=float, default=0.1)
    p_evo.add_argument("--survivor-share", type=float, default=0.25)
    p_evo.add_argument("--t", type=float, default=200.0)
    p_evo.add_argument("--dt", type=float, default=0.01)
    p_evo.add_argument("--paths", type=int, default=50)
    p_evo.add_argument("--f-min", type=float, default=0.0)
    p_evo.add_argument("--f-max", type=float, default=3.0)
    p_evo.add_argument("--initial-fraction", type=float, default=None)
    p_evo.add_argument("--seed", type=int, default=12345)
    p_evo.add_argument("--out", required=True)
    p_evo.set_defaults(func=cmd_evolve)

    p_rep = sub.add_parser("replicate",
                           help="regenerate the five reference figures")
    p_rep.add_argument("--outdir", required=True)
    p_rep.add_argument("--seed", type=int, default=12345)
    p_rep.add_argument("--workers", type=int, default=1)
    p_rep.set_defaults(func=cmd_replicate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PositivityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, SizeError, StabilityError, GridError,
            SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StokitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
