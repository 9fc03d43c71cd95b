"""Builders for the five replication figures (data + graphics).

Each builder returns the figure's CSV text, its SVG document, and a note for
the run manifest.  Everything is a pure function of the seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .csvio import render_csv
from .diagnostics import (DEFAULT_FAN_LEVELS, preasymptotic_report,
                          quantile_fan, summary_curves)
from .processes import (AdaptiveOU, Brownian, GeometricLevy,
                        OrnsteinUhlenbeck, simulate)
from .rng import derive_seed
from .spde import Dirichlet, SpdeSpec, extract_profiles, simulate_heat_spde
from .svgplot import HeatmapBundle, LineBundle, Series, render_panels

FIG1_BROWNIAN = dict(drift=0.0, scale=1.0, t=3.0, dt=0.01, n=240)
FIG1_GLEVY = dict(alpha=1.55, beta=0.2, scale=0.35, loc=0.02, t=4.0, dt=0.01, n=360)
FIG3_PARAMS = dict(theta0=1.0, mean=0.0, scale=0.5, x0=2.0, eta=2.0, band=0.5,
                   theta_min=0.1, theta_max=10.0, t=10.0, dt=0.01)
FIG4_PARAMS = dict(t=50.0, dt=0.01, tail_fraction=0.5, window=50)
FIG5_PARAMS = dict(kappa=0.1, sigma=0.15, length=1.0, dx=1.0 / 64, dt=1e-3, t=0.25)
_FIG2_TRAJECTORIES = 12


@dataclass(frozen=True)
class FigureBundle:
    name: str
    csv_text: str
    svg_text: str
    note: str


def level_column(level: float) -> str:
    pct = 100.0 * level
    if abs(pct - round(pct)) < 1e-9:
        return f"q{int(round(pct)):02d}"
    return f"q{pct:g}"


def fan_series(fan, times) -> list[Series]:
    return [Series(name=level_column(p), x=times, y=fan.curves[i])
            for i, p in enumerate(fan.levels)]


def build_fig1(seed: int, workers: int = 1) -> FigureBundle:
    """Quantile fans: additive Gaussian ensemble vs heavy-tailed multiplicative."""
    p, q = FIG1_BROWNIAN, FIG1_GLEVY
    bm = simulate(Brownian(drift=p["drift"], scale=p["scale"]),
                  p["t"], p["dt"], p["n"], derive_seed(seed, 1), workers=workers)
    gl = simulate(GeometricLevy(alpha=q["alpha"], beta=q["beta"],
                                scale=q["scale"], loc=q["loc"]),
                  q["t"], q["dt"], q["n"], derive_seed(seed, 2), workers=workers)
    bm_fan = quantile_fan(bm)
    gl_fan = quantile_fan(gl)
    bm_times, gl_times = bm.grid.times, gl.grid.times
    header = (["bm_time"] + [f"bm_{level_column(p_)}" for p_ in bm_fan.levels]
              + ["gl_time"] + [f"gl_{level_column(p_)}" for p_ in gl_fan.levels])
    n_rows = max(bm_times.size, gl_times.size)
    rows = []
    for k in range(n_rows):
        left = ([bm_times[k], *bm_fan.curves[:, k]] if k < bm_times.size
                else [None] * (1 + len(bm_fan.levels)))
        right = ([gl_times[k], *gl_fan.curves[:, k]] if k < gl_times.size
                 else [None] * (1 + len(gl_fan.levels)))
        rows.append(left + right)
    svg = render_panels([
        (LineBundle("Brownian ensemble quantile fan", "time", "value",
                    tuple(fan_series(bm_fan, bm_times))), "lines"),
        (LineBundle("Geometric Levy ensemble quantile fan", "time", "value",
                    tuple(fan_series(gl_fan, gl_times)), log_y=True), "lines"),
    ])
    note = (f"fig1: brownian drift={p['drift']} scale={p['scale']} t={p['t']} "
            f"dt={p['dt']} n={p['n']}; glevy alpha={q['alpha']} beta={q['beta']} "
            f"scale={q['scale']} loc={q['loc']} t={q['t']} dt={q['dt']} n={q['n']}; "
            f"levels={','.join(str(v) for v in DEFAULT_FAN_LEVELS)}")
    return FigureBundle("fig1", render_csv(header, rows), svg, note)


def build_fig2(seed: int, workers: int = 1) -> FigureBundle:
    """Trajectory intermittency and summary-statistic divergence for the
    heavy-tailed multiplicative ensemble."""
    q = FIG1_GLEVY
    ens = simulate(GeometricLevy(alpha=q["alpha"], beta=q["beta"],
                                 scale=q["scale"], loc=q["loc"]),
                   q["t"], q["dt"], q["n"], derive_seed(seed, 3), workers=workers)
    summary = summary_curves(ens)
    times = ens.grid.times
    header = (["time"] + [f"traj_{i}" for i in range(_FIG2_TRAJECTORIES)]
              + ["amean", "median", "gmean"])
    rows = ([times[k], *ens.values[:_FIG2_TRAJECTORIES, k],
             summary.arithmetic_mean[k], summary.median[k],
             summary.geometric_mean[k]] for k in range(times.size))
    traj_series = tuple(Series(f"traj_{i}", times, ens.values[i])
                        for i in range(_FIG2_TRAJECTORIES))
    summary_series = (Series("arithmetic mean", times, summary.arithmetic_mean),
                      Series("median", times, summary.median),
                      Series("geometric mean", times, summary.geometric_mean))
    svg = render_panels([
        (LineBundle("Geometric Levy sample trajectories", "time", "value",
                    traj_series, log_y=True), "lines"),
        (LineBundle("Ensemble summary divergence", "time", "value",
                    summary_series, log_y=True), "lines"),
    ])
    note = (f"fig2: glevy alpha={q['alpha']} beta={q['beta']} scale={q['scale']} "
            f"loc={q['loc']} t={q['t']} dt={q['dt']} n={q['n']}; "
            f"{_FIG2_TRAJECTORIES} trajectories shown")
    return FigureBundle("fig2", render_csv(header, rows), svg, note)


def build_fig3(seed: int, workers: int = 1) -> FigureBundle:
    """Adaptive mean reversion against a fixed-rate baseline on shared noise."""
    p = FIG3_PARAMS
    s3 = derive_seed(seed, 4)
    fixed = simulate(OrnsteinUhlenbeck(theta=p["theta0"], mean=p["mean"],
                                       scale=p["scale"], x0=p["x0"]),
                     p["t"], p["dt"], 1, s3)
    adaptive = simulate(AdaptiveOU(theta0=p["theta0"], mean=p["mean"],
                                   scale=p["scale"], x0=p["x0"], eta=p["eta"],
                                   band=p["band"], theta_min=p["theta_min"],
                                   theta_max=p["theta_max"]),
                        p["t"], p["dt"], 1, s3)
    times = fixed.grid.times
    theta_path = adaptive.theta_paths[0]
    header = ["time", "fixed_state", "adaptive_state", "adaptive_theta"]
    rows = ([times[k], fixed.values[0, k], adaptive.values[0, k], theta_path[k]]
            for k in range(times.size))
    svg = render_panels([
        (LineBundle("Fixed vs adaptive mean reversion", "time", "state",
                    (Series("fixed rate", times, fixed.values[0]),
                     Series("adaptive rate", times, adaptive.values[0]))), "lines"),
        (LineBundle("Evolving reversion rate", "time", "theta",
                    (Series("theta", times, theta_path),
                     Series("fixed theta", times,
                            np.full(times.size, p["theta0"])))), "lines"),
    ])
    note = (f"fig3: ou/aou theta0={p['theta0']} mean={p['mean']} scale={p['scale']} "
            f"x0={p['x0']} eta={p['eta']} band={p['band']} "
            f"bounds=[{p['theta_min']},{p['theta_max']}] t={p['t']} dt={p['dt']}")
    return FigureBundle("fig3", render_csv(header, rows), svg, note)


def build_fig4(seed: int, workers: int = 1) -> FigureBundle:
    """Preasymptotic diagnostics of log-wealth under heavy-tailed
    multiplicative dynamics."""
    q, p = FIG1_GLEVY, FIG4_PARAMS
    ens = simulate(GeometricLevy(alpha=q["alpha"], beta=q["beta"],
                                 scale=q["scale"], loc=q["loc"]),
                   p["t"], p["dt"], 1, derive_seed(seed, 5))
    log_wealth = np.log(ens.values[0])
    report = preasymptotic_report(log_wealth, ens.grid,
                                  tail_fraction=p["tail_fraction"],
                                  window=p["window"])
    times = ens.grid.times
    window = report.window
    header = ["time", "distance", "fluctuation"]
    rows = ([times[k], report.distance_curve[k],
             report.fluctuation_curve[k - window] if k >= window else float("nan")]
            for k in range(times.size))
    svg = render_panels([
        (LineBundle("Distance to estimated asymptote", "time", "|deviation|",
                    (Series("distance", times, report.distance_curve),)), "lines"),
        (LineBundle("Rolling fluctuation of increments", "time", "sd",
                    (Series("fluctuation", times[window:],
                            report.fluctuation_curve),)), "lines"),
    ])
    note = (f"fig4: glevy alpha={q['alpha']} beta={q['beta']} scale={q['scale']} "
            f"loc={q['loc']} t={p['t']} dt={p['dt']}; log-wealth, "
            f"tail_fraction={p['tail_fraction']} window={p['window']}; "
            f"asymptote slope={report.slope:.17g} intercept={report.intercept:.17g}")
    return FigureBundle("fig4", render_csv(header, rows), svg, note)


def build_fig5(seed: int, workers: int = 1) -> FigureBundle:
    """Stochastic heat field: space-time view plus initial/final profiles."""
    p = FIG5_PARAMS
    spec = SpdeSpec(kappa=p["kappa"], sigma=p["sigma"], length=p["length"],
                    boundary=Dirichlet(0.0, 0.0),
                    initial_profile=lambda x: np.sin(np.pi * x / p["length"]))
    field = simulate_heat_spde(spec, p["dx"], p["dt"], p["t"], derive_seed(seed, 6))
    initial, final = extract_profiles(field)
    header = ["time"] + [f"u{j}" for j in range(field.x_grid.size)]
    rows = ([field.t_grid[k], *field.u[k]] for k in range(field.t_grid.size))
    stride = max(1, field.t_grid.size // 120)
    svg = render_panels([
        (HeatmapBundle("Stochastic heat field", "x", "time",
                       (float(field.x_grid[0]), float(field.x_grid[-1])),
                       (float(field.t_grid[0]), float(field.t_grid[-1])),
                       field.u[::stride]), "heatmap"),
        (LineBundle("Initial vs final profile", "x", "u",
                    (Series("initial", field.x_grid, initial),
                     Series("final", field.x_grid, final))), "lines"),
    ])
    note = (f"fig5: heat spde kappa={p['kappa']} sigma={p['sigma']} "
            f"L={p['length']} dx={p['dx']:.17g} dt={p['dt']} t={p['t']} "
            f"dirichlet 0/0, sine initial profile")
    return FigureBundle("fig5", render_csv(header, rows), svg, note)


def build_all(seed: int, workers: int = 1) -> list[FigureBundle]:
    return [build_fig1(seed, workers), build_fig2(seed, workers),
            build_fig3(seed, workers), build_fig4(seed, workers),
            build_fig5(seed, workers)]
