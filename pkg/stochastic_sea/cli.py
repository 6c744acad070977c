# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Command line for the stochastic-sea experiments."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import wraps
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import rich_click as click
from rich.logging import RichHandler
from rich_click import Choice, FLOAT, INT
from rich_click import Path as ClickPath
from rich_click import group, option, pass_context, secho

from .cantor_core import (
    CantorSystem,
    converged_thickness,
    dimension_lower_bound_exact,
    dimension_lower_bound_log,
    distortion_estimate,
    lateral_thickness,
    refine,
)
from .errors import DomainError, InputError, ScanBudgetExhausted, StochasticSeaError
from .horseshoe import (
    SWEEP_COLUMNS,
    AffineHorseshoe,
    RenormalizedReturnMap,
    dimension_pipeline,
    horseshoe_sweep,
    return_map,
    synthetic_pipeline,
)
from .io import write_csv_file, write_json_file, write_plot_data
from .runconfig import RunConfig, RunManifest
from .separatrix import (
    CSV_COLUMNS,
    fit_splitting_slope,
    predicted_lobe_area,
    splitting_sweep,
)
from .stdmap_lab import (
    ModelTangencyFamily,
    ShearedStandardFamily,
    StandardFamily,
    chaotic_box_dimension,
    chaotic_seeds,
    density_check,
    duarte_bound,
    generate_orbit,
    island_survey,
    tangency_scan,
    unfolding_exponent,
)
from .stdmap_lab.orbits import finite_time_exponents, random_points
from .stdmap_lab.scan import CSV_COLUMNS as SCAN_COLUMNS
from .utils import convert_to_list, parse_float_list

click.rich_click.USE_RICH_MARKUP = True
click.rich_click.SHOW_ARGUMENTS = True
click.rich_click.GROUP_ARGUMENTS_OPTIONS = True
click.rich_click.USE_MARKDOWN = False

logger = logging.getLogger(__name__)

PLOT_POINTS = 20_000


@dataclass
class Run:
    """Configuration and manifest shared by the subcommands of one invocation."""

    config: RunConfig
    plot_data: bool = False
    manifest: Optional[RunManifest] = None
    written: list[Path] = field(default_factory=list)

    @property
    def directory(self) -> Path:
        """Output directory of the run."""
        return self.config.output_directory

    @property
    def jobs(self) -> int:
        """Worker processes for sweeps."""
        return self.config["run.jobs"]

    @property
    def seed(self) -> int:
        """Base seed of the random generators."""
        return self.config["run.seed"]

    def start(self, command: str) -> None:
        """Open the manifest of ``command``."""
        self.manifest = RunManifest.start(command, self.config)

    def _record(self, path: Path) -> Path:
        if self.manifest is not None:
            self.manifest.add_output(path)
        self.written.append(path)
        return path

    def json(self, name: str, data: dict) -> Path:
        """Write a JSON output behind the config header."""
        return self._record(write_json_file(self.directory / name, data, self.config))

    def csv(self, name: str, header: Sequence[str], rows) -> Path:
        """Write a CSV output behind the config header."""
        path = write_csv_file(self.directory / name, header, rows, self.config)
        return self._record(path)

    def plot(self, name: str, series: dict) -> Optional[Path]:
        """Write long-format plot data when ``--emit-plot-data`` is set."""
        if not self.plot_data:
            return None
        return self._record(write_plot_data(self.directory / name, series, self.config))

    def finish(self) -> Optional[Path]:
        """Write the manifest once."""
        if self.manifest is None:
            return None
        path = self.manifest.finish(self.directory)
        self.manifest = None
        return path


def command(name: str):
    """Open the manifest, map library errors to exit codes and close the manifest."""

    def decorator(func):
        @wraps(func)
        @pass_context
        def wrapper(ctx, *args, **kwargs):
            run: Run = ctx.obj
            run.start(name)
            try:
                return ctx.invoke(func, run, *args, **kwargs)
            except StochasticSeaError as error:
                secho(f"Error: {error}", fg="red", err=True)
                ctx.exit(error.exit_code)
            finally:
                run.finish()

        return wrapper

    return decorator


def _setup_logging(verbose: bool) -> None:
    if not verbose:
        return
    logging.basicConfig(
        level=logging.DEBUG,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(rich_tracebacks=True, show_path=False)],
        force=True,
    )


def _count(value: float) -> int:
    """Accept counts written as ``1e7``."""
    if not value >= 1 or not float(value).is_integer():
        raise InputError(f"Expected a positive integer, got {value}")
    return int(value)


@group()
@option(
    "--config",
    "config_path",
    type=ClickPath(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="TOML file with configuration tables.",
)
@option("--jobs", "-j", type=INT, default=None, help="Worker processes for sweeps.")
@option(
    "--precision-bits",
    type=INT,
    default=None,
    help="Significand width for the splitting.",
)
@option(
    "--output",
    "-o",
    type=ClickPath(file_okay=False, dir_okay=True, writable=True, path_type=Path),
    default=None,
    help="Directory for the output files.",
)
@option("--seed", type=INT, default=None, help="Seed of the random generators.")
@option("--verbose", "-v", is_flag=True, help="Log progress and diagnostics.")
@option(
    "--emit-plot-data",
    is_flag=True,
    help="Also write tidy series, x, y CSV files for plotting.",
)
@pass_context
def ssea(
    ctx,
    config_path: Optional[Path],
    jobs: Optional[int],
    precision_bits: Optional[int],
    output: Optional[Path],
    seed: Optional[int],
    *,
    verbose: bool,
    emit_plot_data: bool,
):
    """Dimension bounds and standard-map experiments."""
    _setup_logging(verbose)
    overrides = {
        "run.jobs": jobs,
        "precision.bits": precision_bits,
        "output.directory": str(output) if output is not None else None,
        "run.seed": seed,
    }
    try:
        run_config = RunConfig.load(config_path, overrides=overrides)
    except StochasticSeaError as error:
        secho(f"Error: {error}", fg="red", err=True)
        ctx.exit(error.exit_code)
    ctx.obj = Run(run_config, emit_plot_data)


@ssea.command("cantor")
@option(
    "--builtin",
    type=Choice(["middle-thirds", "middle-fifths", "quadratic-perturbed"]),
    default=None,
    help="Named system.",
)
@option(
    "--affine",
    nargs=2,
    type=FLOAT,
    default=None,
    help="Affine system with ratios r0 r1.",
)
@option(
    "--system",
    "system_file",
    type=ClickPath(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="JSON file describing the system.",
)
@option("--depth", type=INT, default=None, help="Refinement depth of the thickness.")
@option(
    "--converge", is_flag=True, help="Double the depth until the thickness settles."
)
@command("cantor")
def cmd_cantor(
    run: Run,
    builtin: Optional[str],
    affine: Optional[tuple[float, float]],
    system_file: Optional[Path],
    depth: Optional[int],
    *,
    converge: bool,
):
    """Thickness and dimension bounds of a Cantor set.

    Examples:
        ssea cantor --builtin middle-thirds --depth 8
        ssea cantor --affine 0.5 0.2
    """
    given = [x for x in (builtin, affine, system_file) if x]
    if len(given) != 1:
        raise InputError("Provide exactly one of --builtin, --affine or --system")
    if builtin:
        system = CantorSystem.builtin(builtin)
    elif affine:
        system = CantorSystem.affine(*affine)
    else:
        system = CantorSystem.from_json(system_file.read_text(encoding="utf-8"))
    system.validate()

    depth = depth or run.config["cantor.depth"]
    if converge:
        report = converged_thickness(system, run.config["cantor.max_depth"])
    else:
        report = lateral_thickness(refine(system, depth))
    distortion = distortion_estimate(
        system, max(1, report.depth), run.config["cantor.samples"]
    )
    exact = dimension_lower_bound_exact(
        report.tau_L, report.tau_R, run.config["cantor.tolerance"]
    )
    log = dimension_lower_bound_log(report.tau_L, report.tau_R)
    data = {
        "system": system.to_dict(),
        "thickness": report.to_dict(),
        "distortion": distortion.to_dict(),
        "bounds": {"exact": exact.to_dict(), "log": log.to_dict()},
    }
    run.json("cantor.json", data)
    click.echo(json.dumps(data, indent=2))


@ssea.command("splitting")
@option(
    "--h",
    "hs",
    multiple=True,
    required=True,
    callback=convert_to_list,
    help="Values of h; ranges as start:stop:count.",
)
@option(
    "--theta1", type=FLOAT, default=None, help="Constant of the splitting prediction."
)
@command("splitting")
def cmd_splitting(run: Run, hs: list[str], theta1: Optional[float]):
    """Splitting angle and lobe area of the rescaled family.

    Examples:
        ssea splitting --h 0.7:1.4:8
        ssea --precision-bits 128 splitting --h 0.6
    """
    values = parse_float_list(hs)
    theta1 = run.config["splitting.theta1"] if theta1 is None else theta1
    reports = splitting_sweep(
        values,
        run.config["precision.bits"],
        run.config["splitting.jet_order"],
        window=run.config["splitting.window"],
        jobs=run.jobs,
        tolerance=run.config["splitting.lobe_tolerance"],
    )
    run.csv("splitting.csv", CSV_COLUMNS, [r.row() for r in reports])
    data = {"reports": [r.to_dict() for r in reports], "fit": None}
    if len(reports) >= 3:
        fit = fit_splitting_slope(reports)
        data["fit"] = fit.to_dict()
        low, high = fit.confidence
        secho(
            f"Slope {fit.slope:.4f} in [{low:.4f}, {high:.4f}], "
            f"expected {fit.expected:.4f}",
            fg="green" if fit.relative_error <= 0.15 else "yellow",
        )
    run.json("splitting.json", data)
    run.plot(
        "splitting-plot.csv",
        {
            "lobe_area": [(r.h, r.lobe_area) for r in reports],
            "predicted": [(h, predicted_lobe_area(h, theta1)) for h in values],
        },
    )
    for report in reports:
        click.echo(
            f"h={report.h:g} angle={report.angle:.6e} area={report.lobe_area:.6e}"
        )


def horseshoe_failures(result) -> list[str]:
    """Verdict lines for the checks a dimension bound rests on; empty when all pass."""
    failures = []
    if result.cones is not None and result.cones.interval is None:
        kappa = result.cones.best().kappa
        failures.append(
            f"No invariant cones at this kappa (best {kappa:.4g}); "
            "see cones in the output"
        )
    if result.class_report is None or not result.class_report.ok:
        failures.append("Class F conditions failed; see classF in the output")
    return failures


@ssea.command("horseshoe")
@option(
    "--h", type=FLOAT, default=None, help="Lyapunov exponent of the rescaled family."
)
@option("--nu", type=FLOAT, default=None, help="Aspect exponent of the rectangles.")
@option("--theta1", type=FLOAT, default=None)
@option(
    "--synthetic",
    type=Choice(["affine", "linear"]),
    default=None,
    help="Run on an exactly solvable model instead.",
)
@option(
    "--tau",
    nargs=2,
    type=FLOAT,
    default=(1.0, 1.0),
    help="Factor thickness of the affine model.",
)
@option("--expansion", type=FLOAT, default=3.0, help="Expansion of the linear model.")
@command("horseshoe")
def cmd_horseshoe(
    run: Run,
    h: Optional[float],
    nu: Optional[float],
    theta1: Optional[float],
    synthetic: Optional[str],
    tau: tuple[float, float],
    expansion: float,
):
    """Dimension lower bound of a horseshoe.

    Examples:
        ssea horseshoe --h 1.0 --nu 0.1
        ssea horseshoe --synthetic affine --tau 1 1
    """
    config = run.config
    grid = config["horseshoe.grid"]
    depth = config["horseshoe.cantor_depth"]
    if synthetic:
        model = (
            AffineHorseshoe.from_thickness(*tau)
            if synthetic == "affine"
            else AffineHorseshoe.linear(expansion)
        )
        result = synthetic_pipeline(model, grid, depth)
    else:
        h = config["rescaled.h"] if h is None else h
        nu = config["horseshoe.nu"] if nu is None else nu
        theta1 = config["splitting.theta1"] if theta1 is None else theta1
        model = return_map(h, nu, theta1, config)
        result = dimension_pipeline(h, nu, theta1, config, model=model)

    data = result.to_dict()
    run.json("horseshoe.json", data)
    if isinstance(model, RenormalizedReturnMap):
        run.plot(
            "horseshoe-plot.csv",
            {f"S{i}": [tuple(p) for p in model.outline(i)] for i in (0, 1)},
        )
    failures = horseshoe_failures(result)
    secho(
        f"Total dimension bound {result.total:.6f}",
        fg="yellow" if failures else "green",
    )
    for failure in failures:
        secho(failure, fg="yellow")


@ssea.command("horseshoe-sweep")
@option("--h", "hs", multiple=True, required=True, callback=convert_to_list)
@option("--nu", type=FLOAT, default=None)
@option("--theta1", type=FLOAT, default=None)
@command("horseshoe-sweep")
def cmd_horseshoe_sweep(
    run: Run, hs: list[str], nu: Optional[float], theta1: Optional[float]
):
    """Dimension lower bound along several values of h.

    Examples:
        ssea -j 3 horseshoe-sweep --h 1.4 --h 1.1 --h 0.8
    """
    nu = run.config["horseshoe.nu"] if nu is None else nu
    theta1 = run.config["splitting.theta1"] if theta1 is None else theta1
    results = horseshoe_sweep(
        parse_float_list(hs), nu, theta1, run.config, run.jobs, echo=click.echo
    )
    run.csv("horseshoe-sweep.csv", SWEEP_COLUMNS, [r.row() for r in results])
    run.plot("horseshoe-sweep-plot.csv", {"total": [(r.h, r.total) for r in results]})


@ssea.group("stdmap")
def stdmap():
    """Experiments on the standard map."""


@stdmap.command("lyapunov")
@option("--k", type=FLOAT, required=True)
@option("--n", "length", type=FLOAT, default=None, help="Iterates per seed.")
@option("--seeds", type=INT, default=None, help="Number of random initial points.")
@option("--method", type=Choice(["qr", "divergence", "both"]), default="both")
@command("stdmap lyapunov")
def cmd_lyapunov(
    run: Run, k: float, length: Optional[float], seeds: Optional[int], method: str
):
    """Lyapunov exponents from random initial points.

    Examples:
        ssea stdmap lyapunov --k 10 --seeds 100
    """
    length = _count(length) if length else run.config["stdmap.orbit_length"]
    count = seeds or run.config["stdmap.seeds"]
    seed_values = [run.seed + i for i in range(count)]
    points = [random_points(1, s)[0] for s in seed_values]
    methods = ["qr", "divergence"] if method == "both" else [method]
    rows = []
    for name in methods:
        values = finite_time_exponents(k, points, length, name, run.jobs)
        rows.extend([k, s, length, float(v), name] for s, v in zip(seed_values, values))
        secho(
            f"{name}: mean {np.mean(values):.4f} spread {np.std(values):.4f}",
            fg="green",
        )
    run.csv("lyapunov.csv", ("k", "seed", "N", "value", "method"), rows)


@stdmap.command("islands")
@option("--k", type=FLOAT, required=True)
@option("--period", "periods", type=INT, multiple=True, help="Periods to search.")
@option("--grid", type=INT, default=None, help="Seeds per side of the seed lattice.")
@command("stdmap islands")
def cmd_islands(run: Run, k: float, periods: tuple[int, ...], grid: Optional[int]):
    """Periodic orbits and their stability.

    Examples:
        ssea stdmap islands --k 0.3 --period 1
    """
    periods = list(periods) or list(range(1, run.config["stdmap.max_period"] + 1))
    if any(q < 1 for q in periods):
        raise InputError("Periods must be positive")
    grid = grid or run.config["stdmap.seed_grid"]
    records = island_survey(k, periods, grid, run.jobs)
    run.csv(
        "islands.csv",
        ("k", "q", "x", "y", "trace", "class"),
        [r.row() for r in records],
    )
    series: dict[str, list] = {}
    for record in records:
        series.setdefault(record.classification, []).append(tuple(record.center))
    run.plot("islands-plot.csv", series)
    elliptic = sum(r.elliptic for r in records)
    secho(f"{len(records)} periodic orbits, {elliptic} elliptic", fg="green")


def _chaotic_seeds(run: Run, k: float) -> np.ndarray:
    return chaotic_seeds(
        k,
        run.config["stdmap.seeds"],
        run.config["stdmap.filter_steps"],
        run.config["stdmap.chaos_threshold"],
        run.seed,
        run.jobs,
    )


def _filter_summary(run: Run, k: float) -> str:
    return (
        f"no seed of {run.config['stdmap.seeds']} has a finite-time exponent above "
        f"{run.config['stdmap.chaos_threshold']:g} after "
        f"{run.config['stdmap.filter_steps']} steps at k = {k:g}"
    )


def _orbit_seed(run: Run, k: float) -> Optional[Sequence[float]]:
    seeds = _chaotic_seeds(run, k)
    if len(seeds):
        return seeds[0]
    summary = _filter_summary(run, k)
    logger.warning("Chaos filter: %s; using a random seed", summary)
    secho(f"Chaos filter: {summary}; using a random seed", fg="yellow", err=True)
    return None


@stdmap.command("density")
@option("--k", type=FLOAT, required=True)
@option("--n", "length", type=FLOAT, default=None, help="Orbit length.")
@option("--probes", type=INT, default=64)
@command("stdmap density")
def cmd_density(run: Run, k: float, length: Optional[float], probes: int):
    """Covering radius of a chaotic orbit against 4 / k**(1/3).

    Examples:
        ssea stdmap density --k 1000 --n 1e7
    """
    length = _count(length) if length else run.config["stdmap.orbit_length"]
    initial = _orbit_seed(run, k)
    orbit = generate_orbit(k, run.seed, length, run.config["stdmap.stride"], initial)
    report = density_check(k, orbit, probes)
    run.csv(
        "density.csv",
        ("k", "delta_target", "achieved", "N", "chaotic_seed"),
        [report.row() + [initial is not None]],
    )
    run.plot(
        "density-plot.csv",
        {"orbit": [tuple(p) for p in orbit.points[:PLOT_POINTS]]},
    )
    verdict = "passed" if report.passed else "failed"
    secho(
        f"Covering radius {report.achieved:.4f} vs {report.delta_target:.4f}: "
        f"{verdict}",
        fg="green" if report.passed else "yellow",
    )


@stdmap.command("boxdim")
@option("--k", type=FLOAT, required=True)
@option("--n", "length", type=FLOAT, default=None, help="Length of each orbit.")
@option("--orbits", type=INT, default=4, help="Chaotic orbits in the ensemble.")
@command("stdmap boxdim")
def cmd_boxdim(run: Run, k: float, length: Optional[float], orbits: int):
    """Box dimension of chaotic orbits against the large-k lower bound."""
    length = _count(length) if length else run.config["stdmap.orbit_length"]
    seeds = _chaotic_seeds(run, k)
    if not len(seeds):
        raise DomainError(f"Chaos filter: {_filter_summary(run, k)}")
    ensemble = [
        generate_orbit(k, run.seed, length, run.config["stdmap.stride"], point)
        for point in seeds[:orbits]
    ]
    bound = chaotic_box_dimension(k, ensemble)
    data = {
        "k": k,
        "orbits": len(ensemble),
        "box": bound.to_dict(),
        "duarte": duarte_bound(k),
    }
    run.json("boxdim.json", data)
    secho(f"Box dimension {bound.d:.4f}, lower bound {data['duarte']:.4f}", fg="green")


def _family(name: str, k_star: Optional[float]):
    if name == "standard":
        return StandardFamily()
    if k_star is None:
        raise InputError(f"The {name} family needs --k-star")
    if name == "sheared":
        return ShearedStandardFamily(k_star)
    return ModelTangencyFamily(k_star)


@stdmap.command("scan")
@option(
    "--k",
    "interval",
    nargs=2,
    type=FLOAT,
    required=True,
    help="Parameter interval.",
)
@option("--depth", type=INT, default=None)
@option("--steps", type=INT, default=None, help="Samples per interval.")
@option(
    "--budget", type=INT, default=None, help="Largest number of manifold evaluations."
)
@option("--family", type=Choice(["standard", "sheared", "model"]), default="standard")
@option(
    "--k-star",
    type=FLOAT,
    default=None,
    help="Prescribed tangency of a synthetic family.",
)
@option("--unfold", is_flag=True, help="Fit the unfolding speed at each tangency.")
@command("stdmap scan")
def cmd_scan(
    run: Run,
    interval: tuple[float, float],
    depth: Optional[int],
    steps: Optional[int],
    budget: Optional[int],
    family: str,
    k_star: Optional[float],
    *,
    unfold: bool,
):
    """Nested scan of a parameter interval for homoclinic tangencies.

    Examples:
        ssea stdmap scan --k 6.5 7.5 --depth 3
        ssea stdmap scan --k 6.5 7.5 --family sheared --k-star 7.3
    """
    config = run.config
    source = _family(family, k_star)
    try:
        tree = tangency_scan(
            source,
            interval,
            depth or config["scan.depth"],
            steps or config["scan.steps"],
            budget or config["scan.budget"],
            config["scan.angle"],
            config["scan.tolerance"],
            strict=True,
            echo=click.echo,
        )
    except ScanBudgetExhausted as error:
        run.csv("scan.csv", SCAN_COLUMNS, error.tree.rows())
        run.json("scan.json", error.tree.to_dict())
        raise
    data = tree.to_dict()
    if unfold:
        data["unfolding"] = [
            unfolding_exponent(source, k).to_dict() for k in tree.tangencies
        ]
    run.csv("scan.csv", SCAN_COLUMNS, tree.rows())
    run.json("scan.json", data)
    angles = [
        (k, a)
        for node in tree.nodes()
        for k, a in zip(node.tangencies, node.angles)
    ]
    run.plot("scan-plot.csv", {"min_angle": angles})
    found = ", ".join(f"{k:.6f}" for k in tree.tangencies) or "none"
    secho(f"Tangencies: {found}", fg="green")
