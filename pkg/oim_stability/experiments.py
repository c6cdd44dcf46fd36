# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Reproducible trial campaigns and exhaustive stable-set reports.

Trial ``i`` of a campaign with master seed ``S`` draws from its own stream:
``SeedSequence(S, spawn_key=(i,))`` yields one 64-bit trial seed, which
seeds ``Generator(PCG64(trial_seed))``. The first ``n`` uniform draws of the
stream are the initial phases, so trial ``i`` starts from the same state at
every ``K_s`` of a campaign.
"""

import hashlib
import logging
import platform
from dataclasses import dataclass, field

import arrow
import numpy as np

from . import __version__
from .config import (
    OIM_EIGEN_SOLVER,
    OIM_ENERGY_RESOLUTION,
    OIM_ENUMERATION_MAX_NODES,
    OIM_MARGINAL_TOL,
    OIM_READOUT_TOL,
    OIM_SETTLE_TIME,
)
from .dynamics import (
    DETERMINISTIC_SCHEME,
    NORMAL_METHOD,
    STOCHASTIC_SCHEME,
    NonBinarized,
    integrate,
    random_phases,
    readout,
    settle,
)
from .enumeration import bin_energies, ground_states
from .errors import IntegrationError, ParameterError
from .model import PRNG_NAME, OimParams, ising_energy
from .stability import largest_lyapunov, stability_records
from .utils import map_blocks

logger = logging.getLogger(__name__)

SEED_SCHEME = "SeedSequence(master_seed, spawn_key=(trial,)) -> uint64 -> PCG64"

EXACT_REFERENCE = "exact ground energy by exhaustive enumeration"
CAMPAIGN_REFERENCE = "best energy seen across the campaign"
SUPPLIED_REFERENCE = "reference energy supplied by the caller"


def trial_seed(master_seed, trial):
    """64-bit seed of trial ``trial``."""
    seq = np.random.SeedSequence(master_seed, spawn_key=(trial,))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def trial_rng(master_seed, trial):
    """Random stream of trial ``trial``."""
    return np.random.Generator(np.random.PCG64(trial_seed(master_seed, trial)))


@dataclass(frozen=True, eq=False)
class TrialResult:
    """Outcome of one trial."""

    trial: int
    seed: int
    converged: bool
    readout: object
    h: float = None
    final_lambda_l: float = None
    steps: int = 0
    error: str = None

    @property
    def binarized(self):
        """Whether the readout produced spins."""
        return self.readout.binarized

    @property
    def stable(self):
        """Converged onto a configuration with strictly negative lambda_L."""
        return (
            self.converged
            and self.final_lambda_l is not None
            and self.final_lambda_l < -OIM_MARGINAL_TOL
        )


@dataclass(frozen=True, eq=False)
class TrialCampaignResult:
    """Aggregated outcome of ``n_trials`` trials at one parameter set."""

    params: OimParams
    sim: object
    master_seed: int
    trials: list
    histogram: dict
    n_nonbinarized: int
    success_rate: float
    reference_h: float = None
    success_definition: str = ""
    readout_tol: float = OIM_READOUT_TOL
    settle_time: float = OIM_SETTLE_TIME

    @property
    def n_trials(self):
        """Number of trials run."""
        return len(self.trials)


def run_trial(w, p, sim, master_seed, trial, readout_tol, settle_time):
    """Run a single trial; integration failures become failed trials."""
    seed = trial_seed(master_seed, trial)
    rng = np.random.Generator(np.random.PCG64(seed))
    theta0 = random_phases(w.n, rng)
    noisy = p.kn > 0
    try:
        traj = integrate(w, p, theta0, sim, rng if noisy else None)
        final = readout(traj.final_state, readout_tol)
        if noisy:
            relaxed = settle(w, p, traj.final_state, settle_time, sim.dt)
            settled = readout(relaxed, readout_tol)
            converged = (
                final.binarized
                and settled.binarized
                and np.array_equal(final.spins, settled.spins)
            )
        else:
            converged = traj.converged
    except IntegrationError as e:
        logger.warning(f"Trial {trial} (seed {seed}) failed: {e}")
        return TrialResult(
            trial,
            seed,
            False,
            NonBinarized(float("nan")),
            steps=e.step or 0,
            error=str(e),
        )
    h = lam = None
    if final.binarized:
        h = ising_energy(w, final.spins)
        lam = largest_lyapunov(w, p, final.spins)
    return TrialResult(trial, seed, bool(converged), final, h, lam, traj.steps)


def _trial_block(w, p, sim, master_seed, start, stop, readout_tol, settle_time):
    return [
        run_trial(w, p, sim, master_seed, i, readout_tol, settle_time)
        for i in range(start, stop)
    ]


def reference_energy(
    w, limit=OIM_ENUMERATION_MAX_NODES, resolution=OIM_ENERGY_RESOLUTION, threads=1
):
    """Exact ground energy, or ``None`` above ``limit`` nodes."""
    if w.n > limit:
        return None
    return ground_states(
        w, cap=0, threads=threads, limit=limit, resolution=resolution
    ).min_h


def _reference(w, reference_h, limit, resolution, threads):
    if reference_h is not None:
        return reference_h, SUPPLIED_REFERENCE
    exact = reference_energy(w, limit, resolution, threads)
    if exact is not None:
        return exact, EXACT_REFERENCE
    return None, CAMPAIGN_REFERENCE


def _best_energy(trials):
    energies = [t.h for t in trials if t.h is not None]
    return min(energies) if energies else None


def _collect_trials(
    w, p, sim, n_trials, master_seed, threads, readout_tol, settle_time
):
    per_task = max(1, -(-n_trials // (4 * max(1, threads or 1))))
    tasks = [
        (
            w,
            p,
            sim,
            master_seed,
            start,
            min(start + per_task, n_trials),
            readout_tol,
            settle_time,
        )
        for start in range(0, n_trials, per_task)
    ]
    trials = [t for block in map_blocks(_trial_block, tasks, threads) for t in block]
    logger.info(
        "K_s=%g: %d/%d trials binarized",
        p.ks,
        sum(1 for t in trials if t.h is not None),
        n_trials,
    )
    return trials


def _aggregate(
    w, p, sim, master_seed, trials, reference_h, definition, options, resolution
):
    integral = w.is_integral
    histogram = {}
    for t in trials:
        if t.h is not None:
            key = float(bin_energies(t.h, integral, resolution))
            histogram[key] = histogram.get(key, 0) + 1
    histogram = dict(sorted(histogram.items()))
    target = None
    if reference_h is not None:
        target = float(bin_energies(reference_h, integral, resolution))
    return TrialCampaignResult(
        params=p,
        sim=sim,
        master_seed=master_seed,
        trials=trials,
        histogram=histogram,
        n_nonbinarized=sum(1 for t in trials if t.h is None),
        success_rate=histogram.get(target, 0) / len(trials),
        reference_h=target,
        success_definition=definition,
        **options,
    )


def run_trials(
    w,
    p,
    sim,
    n_trials,
    master_seed,
    threads=1,
    readout_tol=OIM_READOUT_TOL,
    settle_time=OIM_SETTLE_TIME,
    reference_h=None,
    limit=OIM_ENUMERATION_MAX_NODES,
    resolution=OIM_ENERGY_RESOLUTION,
):
    """Run ``n_trials`` independent trials and aggregate their outcomes.

    Success is measured against ``reference_h`` when given, otherwise the
    exact ground energy when the graph has at most ``limit`` nodes, and
    the best energy seen across the trials beyond that.
    """
    return ks_campaign(
        w,
        p.k,
        [p.ks],
        sim,
        n_trials,
        master_seed,
        kn=p.kn,
        threads=threads,
        readout_tol=readout_tol,
        settle_time=settle_time,
        reference_h=reference_h,
        limit=limit,
        resolution=resolution,
    )[0]


def ks_campaign(
    w,
    k,
    ks_values,
    sim,
    n_trials,
    master_seed,
    kn=0.0,
    threads=1,
    readout_tol=OIM_READOUT_TOL,
    settle_time=OIM_SETTLE_TIME,
    reference_h=None,
    limit=OIM_ENUMERATION_MAX_NODES,
    resolution=OIM_ENERGY_RESOLUTION,
):
    """One trial campaign per ``K_s`` with paired trial streams.

    Every ``K_s`` is scored against one reference energy. Above ``limit``
    nodes that is the best energy reached by any trial at any ``K_s``, so
    all trials run before the campaign is aggregated.
    """
    ks_values = list(ks_values)
    if not ks_values:
        raise ParameterError("Empty K_s list.")
    if n_trials < 1:
        raise ParameterError(f"n_trials must be >= 1, got {n_trials}.")
    reference_h, definition = _reference(w, reference_h, limit, resolution, threads)
    runs = []
    for ks in ks_values:
        p = OimParams(k=k, ks=ks, kn=kn)
        trials = _collect_trials(
            w, p, sim, n_trials, master_seed, threads, readout_tol, settle_time
        )
        runs.append((p, trials))
    if reference_h is None:
        reference_h = _best_energy(t for _, trials in runs for t in trials)
    options = {"readout_tol": readout_tol, "settle_time": settle_time}
    return [
        _aggregate(
            w, p, sim, master_seed, trials, reference_h, definition, options, resolution
        )
        for p, trials in runs
    ]


@dataclass(frozen=True)
class StableSetReport:
    """Stable configurations sorted by energy, possibly truncated."""

    records: list
    total: int
    truncated: bool


def stable_set_report(
    w, k, ks, cap=None, threads=1, solver=OIM_EIGEN_SOLVER, **options
):
    """List the stable configurations at ``(k, ks)``.

    Records are sorted by ``H`` then config index. When more than ``cap``
    configurations are stable the list is cut to ``cap`` and ``truncated``
    is set; ``total`` always holds the full count. ``options`` go to
    :func:`~oim_stability.stability.stability_records`.
    """
    records = stability_records(
        w, k, ks, threads=threads, solver=solver, **options
    )
    stable = [r for r in records if r.stable]
    stable.sort(key=lambda r: (r.h, r.config))
    total = len(stable)
    truncated = cap is not None and total > cap
    if truncated:
        logger.warning(
            f"Stable set at K_s={ks} truncated to {cap} of {total} records"
        )
        stable = stable[:cap]
    return StableSetReport(stable, total=total, truncated=truncated)


@dataclass(frozen=True)
class RunMetadata:
    """Provenance sufficient to reproduce a run."""

    tool_version: str
    prng: str
    normal_method: str
    seed_scheme: str
    numpy_version: str
    graph: dict
    parameters: dict
    timestamp: str = field(default="", compare=False)

    @classmethod
    def collect(cls, graph, parameters):
        """Metadata for the current environment, stamped with UTC now."""
        return cls(
            tool_version=__version__,
            prng=PRNG_NAME,
            normal_method=NORMAL_METHOD,
            seed_scheme=SEED_SCHEME,
            numpy_version=np.__version__,
            graph=dict(graph),
            parameters=dict(parameters),
            timestamp=arrow.utcnow().isoformat(),
        )

    def reproducible(self):
        """Metadata fields that do not vary between identical runs."""
        return {
            "tool_version": self.tool_version,
            "prng": self.prng,
            "normal_method": self.normal_method,
            "seed_scheme": self.seed_scheme,
            "numpy_version": self.numpy_version,
            "graph": self.graph,
            "parameters": self.parameters,
        }

    def run_info(self):
        """Fields that identify one particular execution."""
        return {
            "timestamp": self.timestamp,
            "python_version": platform.python_version(),
        }


def graph_provenance_from_file(path):
    """Provenance of a graph file: its path and SHA-256 digest."""
    with open(path, "rb") as f:
        digest = hashlib.sha256(f.read()).hexdigest()
    return {"source": "file", "path": str(path), "sha256": digest}


def campaign_parameters(result):
    """Parameter mapping recorded with a campaign."""
    return {
        "k": result.params.k,
        "ks": result.params.ks,
        "kn": result.params.kn,
        "sim": result.sim.as_dict(),
        "master_seed": result.master_seed,
        "n_trials": result.n_trials,
        "readout_tol": result.readout_tol,
        "settle_time": result.settle_time,
        "integrator": (
            STOCHASTIC_SCHEME if result.params.kn > 0 else DETERMINISTIC_SCHEME
        ),
        "success_definition": result.success_definition,
    }

