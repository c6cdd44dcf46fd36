# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Command-line tools for the OIM toolkit."""

import logging
import math
import os
import sys

import click

from . import __version__
from .dynamics import (
    SimConfig,
    check_readout_tol,
    energy_trace,
    integrate,
    random_phases,
    readout,
)
from .enumeration import enumerate_energies, ground_states
from .errors import (
    EXIT_INPUT,
    EXIT_USAGE,
    IntegrationError,
    OimError,
    ParameterError,
    VerificationError,
)
from .experiments import (
    RunMetadata,
    campaign_parameters,
    graph_provenance_from_file,
    ks_campaign,
    trial_rng,
)
from .model import (
    OimParams,
    coupling_from_graph,
    generate_random_graph,
    ising_energy,
    maxcut_from_energy,
    read_graph,
    write_graph,
)
from .serialize import (
    format_energy,
    format_float,
    write_critical_csv,
    write_histogram_csv,
    write_levels_csv,
    write_report,
    write_sweep_csv,
    write_trace_csv,
)
from .settings import OimSettings
from .stability import (
    ALL,
    energy_level_stats,
    iter_spectra,
    iter_stability_sweep,
    largest_lyapunov,
)
from .verification import builtin_graphs, verify as verify_graph

logger = logging.getLogger(__name__)

POSITIVE = click.FloatRange(min=0.0, min_open=True)
NON_NEGATIVE = click.FloatRange(min=0.0)


class KsList(click.ParamType):
    """Comma-separated list of non-negative injection strengths."""

    name = "KS[,KS...]"

    def convert(self, value, param, ctx):
        """Parse ``0.8,1.5`` into ``[0.8, 1.5]``."""
        if isinstance(value, list):
            return value
        try:
            values = [float(x) for x in value.split(",")]
        except ValueError:
            self.fail(f"{value!r} is not a list of numbers.", param, ctx)
        for x in values:
            if not (math.isfinite(x) and x >= 0):
                self.fail(f"{x} is not a non-negative K_s value.", param, ctx)
        return values


class OimGroup(click.Group):
    """Command group translating errors into the toolkit's exit codes."""

    def main(self, args=None, prog_name=None, standalone_mode=True, **extra):
        """Run the group; exit with 1 on usage errors, else the error's code."""
        if not standalone_mode:
            return super().main(args, prog_name, standalone_mode=False, **extra)
        try:
            rv = super().main(args, prog_name, standalone_mode=False, **extra)
        except click.UsageError as e:
            e.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as e:
            e.show()
            sys.exit(EXIT_INPUT)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        except OimError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(e.exit_code)
        except OSError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_INPUT)
        sys.exit(rv if isinstance(rv, int) else 0)


def _setup_logging(verbose):
    level = max(logging.DEBUG, logging.WARNING - 10 * verbose)
    logging.basicConfig(
        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )
    logging.getLogger("oim_stability").setLevel(level)


def _open_out(path):
    return click.open_file(path, "w", encoding="utf-8", lazy=False)


def _load(path):
    graph = read_graph(path)
    return graph, coupling_from_graph(graph)


def _sim_config(settings):
    return SimConfig(
        dt=settings.cfg("dt"),
        t_max=settings.cfg("t_max"),
        eq_tol=settings.cfg("eq_tol"),
        eq_window=settings.cfg("eq_window"),
        record_stride=settings.cfg("record_stride"),
    )


def ks_grid(ks_min, ks_max, ks_step):
    """``ks_min, ks_min + step, ...`` up to ``ks_max`` inclusive."""
    if ks_max < ks_min:
        raise ParameterError(
            f"Empty K_s grid: --ks-max {ks_max} is below --ks-min {ks_min}."
        )
    count = int(math.floor((ks_max - ks_min) / ks_step + 1e-9)) + 1
    return [round(ks_min + i * ks_step, 12) for i in range(count)]


@click.group(cls=OimGroup)
@click.option(
    "--threads",
    type=click.IntRange(min=1),
    default=None,
    help="Worker processes (default: all cores). Never changes the output.",
)
@click.option(
    "--config",
    "config_file",
    type=click.Path(dir_okay=False),
    default=None,
    help="YAML file overriding OIM_* configuration keys.",
)
@click.option("-v", "--verbose", count=True, help="Increase log verbosity.")
@click.version_option(__version__, prog_name="oim-stability")
@click.pass_context
def cli(ctx, threads, config_file, verbose):
    """Oscillator Ising machine simulator and stability toolkit."""
    _setup_logging(verbose)
    settings = OimSettings.from_file(config_file)
    ctx.obj = {
        "settings": settings,
        "threads": threads or settings.threads,
    }


def _settings(ctx):
    return ctx.obj["settings"]


def _threads(ctx):
    return ctx.obj["threads"]


def _solver(ctx):
    return _settings(ctx).cfg("eigen_solver")


def _sweep_options(ctx):
    settings = _settings(ctx)
    return {
        "block_bits": settings.cfg("block_bits"),
        "limit": settings.cfg("enumeration_max_nodes"),
    }


def _energy_options(ctx):
    return dict(
        _sweep_options(ctx), resolution=_settings(ctx).cfg("energy_resolution")
    )


@cli.command()
@click.option("--nodes", type=click.IntRange(min=1), required=True)
@click.option("--edges", type=click.IntRange(min=0), required=True)
@click.option("--seed", type=click.IntRange(min=0), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def gen(nodes, edges, seed, out):
    """Generate a seeded random unit-weight graph."""
    graph = generate_random_graph(nodes, edges, seed)
    with _open_out(out) as f:
        write_graph(graph, f)
    click.echo(
        f"Wrote {out}: n={graph.n} m={graph.m} "
        f"sum_W={format_float(graph.total_weight)} "
        f"density={format_float(graph.density)}"
    )


@cli.command("enumerate")
@click.argument("graph", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option(
    "--full-count", is_flag=True, help="Count mirror images separately."
)
@click.pass_context
def enumerate_command(ctx, graph, out, full_count):
    """Histogram of the Ising energy over all configurations."""
    g, w = _load(graph)
    options = _energy_options(ctx)
    histogram = enumerate_energies(
        w, full_count=full_count, threads=_threads(ctx), **options
    )
    with _open_out(out) as f:
        write_histogram_csv(histogram, f)
    min_h = histogram.min_energy()
    classes = histogram.bins[min_h] // (2 if full_count else 1)
    integral = histogram.integral
    click.echo(f"min H: {format_energy(min_h, integral)}")
    click.echo(f"ground states: {2 * classes} (mirror classes: {classes})")
    click.echo(f"MaxCut: {format_energy(maxcut_from_energy(g, min_h), integral)}")
    cap = _settings(ctx).cfg("ground_state_cap")
    ground = ground_states(w, cap=cap, threads=_threads(ctx), **options)
    click.echo(f"representatives ({len(ground.configs)} of {ground.n_classes}):")
    for idx, s in zip(ground.indices, ground.configs):
        click.echo(f"  {idx}: " + " ".join(f"{int(x):+d}" for x in s))


def _ground_indices(w, ctx):
    return ground_states(w, threads=_threads(ctx), **_energy_options(ctx)).indices


@cli.command()
@click.argument("graph", type=click.Path(dir_okay=False))
@click.option("--k", type=POSITIVE, default=None, help="Coupling strength K.")
@click.option("--ks-min", type=NON_NEGATIVE, required=True)
@click.option("--ks-max", type=NON_NEGATIVE, required=True)
@click.option("--ks-step", type=POSITIVE, required=True)
@click.option("--ground-only", is_flag=True, help="Restrict to ground states.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_context
def stability(ctx, graph, k, ks_min, ks_max, ks_step, ground_only, out):
    """Largest Lyapunov exponent over a K_s grid."""
    grid = ks_grid(ks_min, ks_max, ks_step)
    k = k if k is not None else _settings(ctx).cfg("default_k")
    g, w = _load(graph)
    configs = _ground_indices(w, ctx) if ground_only else ALL
    rows = iter_stability_sweep(
        w,
        k,
        grid,
        configs,
        threads=_threads(ctx),
        solver=_solver(ctx),
        **_sweep_options(ctx),
    )
    with _open_out(out) as f:
        write_sweep_csv(rows, f, w.is_integral)
    click.echo(f"Wrote {out}: {len(grid)} K_s values")


@cli.command()
@click.argument("graph", type=click.Path(dir_okay=False))
@click.option("--k", type=POSITIVE, default=None, help="Coupling strength K.")
@click.option("--ks", type=NON_NEGATIVE, required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_context
def levels(ctx, graph, k, ks, out):
    """Per-energy extremes of lambda_L and stable counts."""
    k = k if k is not None else _settings(ctx).cfg("default_k")
    g, w = _load(graph)
    stats = energy_level_stats(
        w,
        k,
        ks,
        threads=_threads(ctx),
        solver=_solver(ctx),
        tol=_settings(ctx).cfg("marginal_tol"),
        **_energy_options(ctx),
    )
    with _open_out(out) as f:
        write_levels_csv(stats, f, w.is_integral)
    click.echo(
        f"Wrote {out}: {len(stats)} energy levels, "
        f"{sum(level.n_stable for level in stats)} stable configurations"
    )


@cli.command("critical-ks")
@click.argument("graph", type=click.Path(dir_okay=False))
@click.option("--k", type=POSITIVE, default=None, help="Coupling strength K.")
@click.option("--ground-only", is_flag=True, help="Restrict to ground states.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_context
def critical_ks_command(ctx, graph, k, ground_only, out):
    """Critical injection strength of every configuration."""
    k = k if k is not None else _settings(ctx).cfg("default_k")
    g, w = _load(graph)
    ground = set(_ground_indices(w, ctx))
    configs = sorted(ground) if ground_only else ALL
    rows = []
    ground_values = []
    spectra = iter_spectra(
        w, configs, _threads(ctx), _solver(ctx), **_sweep_options(ctx)
    )
    for indices, h, beta1 in spectra:
        for idx, energy, b in zip(indices.tolist(), h.tolist(), beta1.tolist()):
            value = k * b / 2.0
            rows.append((idx, energy, value))
            if idx in ground:
                ground_values.append(value)
    with _open_out(out) as f:
        write_critical_csv(rows, f, w.is_integral)
    click.echo(
        f"ground-state critical K_s: min={format_float(min(ground_values))} "
        f"max={format_float(max(ground_values))}"
    )


@cli.command()
@click.argument("graph", type=click.Path(dir_okay=False))
@click.option("--k", type=POSITIVE, default=None, help="Coupling strength K.")
@click.option("--ks", type=NON_NEGATIVE, required=True)
@click.option("--kn", type=NON_NEGATIVE, default=None, help="Noise amplitude K_n.")
@click.option("--seed", type=click.IntRange(min=0), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_context
def trace(ctx, graph, k, ks, kn, seed, out):
    """Integrate one trajectory, seeded like trial 0 of ``simulate``."""
    settings = _settings(ctx)
    p = OimParams(
        k=k if k is not None else settings.cfg("default_k"),
        ks=ks,
        kn=kn if kn is not None else settings.cfg("default_kn"),
    )
    sim = _sim_config(settings)
    tol = settings.cfg("readout_tol")
    check_readout_tol(tol)
    g, w = _load(graph)
    rng = trial_rng(seed, 0)
    theta0 = random_phases(w.n, rng)
    try:
        traj = integrate(w, p, theta0, sim, rng if p.kn > 0 else None)
    except IntegrationError as e:
        if e.trajectory is not None:
            with _open_out(out) as f:
                write_trace_csv(e.trajectory, f)
            logger.warning(f"Partial trajectory written to {out}")
        raise
    with _open_out(out) as f:
        write_trace_csv(traj, f)
    report = energy_trace(traj)
    click.echo(
        f"steps: {traj.steps} converged: {traj.converged} "
        f"max energy increase: {format_float(report.max_increase)}"
    )
    result = readout(traj.final_state, tol)
    if not result.binarized:
        click.echo(
            f"readout: non-binarized "
            f"(worst deviation {format_float(result.worst_deviation)})"
        )
        return
    spins = " ".join(f"{int(x):+d}" for x in result.spins)
    click.echo(f"readout: {spins}")
    click.echo(f"H: {format_energy(ising_energy(w, result.spins), w.is_integral)}")
    click.echo(f"lambda_L: {format_float(largest_lyapunov(w, p, result.spins))}")


@cli.command()
@click.argument("graph", type=click.Path(dir_okay=False))
@click.option("--k", type=POSITIVE, default=None, help="Coupling strength K.")
@click.option("--ks", type=KsList(), required=True)
@click.option("--kn", type=NON_NEGATIVE, default=None, help="Noise amplitude K_n.")
@click.option("--trials", type=click.IntRange(min=1), default=None)
@click.option("--seed", type=click.IntRange(min=0), required=True)
@click.option("--out", type=click.Path(file_okay=False), required=True)
@click.pass_context
def simulate(ctx, graph, k, ks, kn, trials, seed, out):
    """Trial campaigns at one or more K_s values."""
    settings = _settings(ctx)
    k = k if k is not None else settings.cfg("default_k")
    kn = kn if kn is not None else settings.cfg("default_kn")
    trials = trials if trials is not None else settings.cfg("default_trials")
    sim = _sim_config(settings)
    g, w = _load(graph)
    provenance = graph_provenance_from_file(graph)
    results = ks_campaign(
        w,
        k,
        ks,
        sim,
        trials,
        seed,
        kn=kn,
        threads=_threads(ctx),
        readout_tol=settings.cfg("readout_tol"),
        settle_time=settings.cfg("settle_time"),
        limit=settings.cfg("enumeration_max_nodes"),
        resolution=settings.cfg("energy_resolution"),
    )
    integral = w.is_integral
    for result in results:
        path = os.path.join(out, f"ks_{format_float(result.params.ks)}")
        metadata = RunMetadata.collect(provenance, campaign_parameters(result))
        write_report(result, path, metadata, integral)
        click.echo(
            f"K_s={format_float(result.params.ks)} -> {path}: "
            f"success_rate={format_float(result.success_rate)} "
            f"non-binarized={result.n_nonbinarized}/{result.n_trials}"
        )
        for h, count in result.histogram.items():
            click.echo(f"  H={format_energy(h, integral)}: {count}")


def _echo_checks(name, results):
    for result in results:
        status = "ok" if result.passed else "FAILED"
        click.echo(f"{name}: {result.name} {status} {result.detail}".rstrip())


@cli.command()
@click.argument("graph", type=click.Path(dir_okay=False), required=False)
@click.pass_context
def verify(ctx, graph):
    """Run the oracle checks on GRAPH or on the built-in graphs."""
    limit = _settings(ctx).cfg("verify_max_nodes")
    graphs = {graph: read_graph(graph)} if graph else builtin_graphs()
    for name, g in graphs.items():
        try:
            results = verify_graph(g, enumeration_limit=limit)
        except VerificationError as e:
            _echo_checks(name, e.results)
            raise VerificationError(f"{name}: {e}", e.results) from e
        _echo_checks(name, results)
    click.echo("All checks passed.")


def main():
    """Console script entry point."""
    cli(prog_name="oim-stability")
