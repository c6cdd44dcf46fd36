# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Trial campaign and stable-set tests."""

import hashlib
import logging
import math

import numpy as np
import pytest

from oim_stability import experiments
from oim_stability.dynamics import Binarized, SimConfig, random_phases
from oim_stability.enumeration import (
    config_count,
    config_to_index,
    decode_indices,
)
from oim_stability.errors import IntegrationError, ParameterError
from oim_stability.experiments import (
    RunMetadata,
    TrialResult,
    campaign_parameters,
    graph_provenance_from_file,
    ks_campaign,
    reference_energy,
    run_trial,
    run_trials,
    stable_set_report,
    trial_rng,
    trial_seed,
)
from oim_stability.model import (
    OimParams,
    coupling_from_graph,
    dump_graph,
    generate_random_graph,
)
from oim_stability.stability import base_spectrum, largest_lyapunov

NOISY_SIM = SimConfig(dt=0.01, t_max=100.0)


def _summary(result):
    return [
        (t.trial, t.seed, t.converged, t.binarized, t.h, t.final_lambda_l, t.steps)
        for t in result.trials
    ]


def test_trial_seeds():
    assert trial_seed(1, 0) == trial_seed(1, 0)
    assert trial_seed(1, 0) != trial_seed(1, 1)
    assert trial_seed(1, 0) != trial_seed(2, 0)
    assert 0 <= trial_seed(5, 3) < 2**64
    a = random_phases(4, trial_rng(7, 2))
    b = random_phases(4, np.random.Generator(np.random.PCG64(trial_seed(7, 2))))
    np.testing.assert_array_equal(a, b)


def test_reference_energy(triangle):
    assert reference_energy(triangle) == -1.0


def test_noisy_triangle_campaign(triangle):
    p = OimParams(k=1.0, ks=1.2, kn=0.005)
    result = run_trials(triangle, p, NOISY_SIM, 8, master_seed=3)
    assert result.n_trials == 8
    assert result.histogram == {-1.0: 8}
    assert result.success_rate == 1.0
    assert result.n_nonbinarized == 0
    assert result.reference_h == -1.0
    assert "exhaustive" in result.success_definition
    for t in result.trials:
        assert t.converged
        assert t.stable
        assert t.final_lambda_l == pytest.approx(-1.4)


def test_deterministic_edge_campaign(edge):
    result = run_trials(edge, OimParams(k=1.0, ks=0.5), SimConfig(), 10, master_seed=1)
    assert all(t.binarized and t.converged for t in result.trials)
    assert result.histogram == {-1.0: 10}
    assert result.success_rate == 1.0


def test_campaign_is_reproducible(triangle):
    p = OimParams(k=1.0, ks=0.8, kn=0.005)
    sim = SimConfig(t_max=30.0)
    a = run_trials(triangle, p, sim, 6, master_seed=11)
    b = run_trials(triangle, p, sim, 6, master_seed=11)
    c = run_trials(triangle, p, sim, 6, master_seed=11, threads=2)
    assert _summary(a) == _summary(b) == _summary(c)
    assert a.histogram == b.histogram == c.histogram


def test_campaign_validation(triangle):
    with pytest.raises(ParameterError):
        run_trials(triangle, OimParams(ks=0.8), SimConfig(), 0, master_seed=0)
    with pytest.raises(ParameterError):
        ks_campaign(triangle, 1.0, [], SimConfig(), 2, master_seed=0)


def test_ks_campaign_pairs_initial_conditions(triangle, mocker):
    spy = mocker.spy(experiments, "integrate")
    results = ks_campaign(
        triangle, 1.0, [0.1, 0.8], SimConfig(t_max=5.0), 3, master_seed=4, kn=0.005
    )
    assert [r.params.ks for r in results] == [0.1, 0.8]
    assert [t.seed for t in results[0].trials] == [t.seed for t in results[1].trials]
    starts = [call.args[2] for call in spy.call_args_list]
    for i in range(3):
        np.testing.assert_array_equal(starts[i], starts[i + 3])


def test_ks_campaign_single_value_is_run_trials(triangle):
    p = OimParams(k=1.0, ks=0.8, kn=0.005)
    sim = SimConfig(t_max=20.0)
    (single,) = ks_campaign(triangle, 1.0, [0.8], sim, 4, master_seed=2, kn=0.005)
    direct = run_trials(triangle, p, sim, 4, master_seed=2)
    assert _summary(single) == _summary(direct)


def test_campaign_beyond_enumeration_shares_best_energy(k4, mocker):
    energies = {0.8: [-4.0, -2.0, -2.0], 3.0: [-2.0, -2.0, 0.0]}

    def fake_trial(w, p, sim, master_seed, trial, readout_tol, settle_time):
        h = energies[p.ks][trial]
        spins = Binarized(np.ones(w.n, dtype=np.int8))
        return TrialResult(trial, trial, True, spins, h, -1.0, 10)

    mocker.patch("oim_stability.experiments.run_trial", side_effect=fake_trial)
    results = ks_campaign(k4, 1.0, [0.8, 3.0], SimConfig(), 3, master_seed=0, limit=3)
    for result in results:
        assert result.reference_h == -4.0
        assert result.success_definition == "best energy seen across the campaign"
    assert [r.success_rate for r in results] == [pytest.approx(1 / 3), 0.0]
    assert results[1].histogram == {-2.0: 2, 0.0: 1}
    (alone,) = ks_campaign(k4, 1.0, [3.0], SimConfig(), 3, master_seed=0, limit=3)
    assert alone.reference_h == -2.0
    assert alone.success_rate == pytest.approx(2 / 3)


def test_campaign_reference_sources(triangle, mocker):
    failure = IntegrationError("non-finite phase state", step=1)
    mocker.patch("oim_stability.experiments.integrate", side_effect=failure)
    exact, supplied, none_binarized = (
        run_trials(triangle, OimParams(ks=0.8), SimConfig(), 1, 0),
        run_trials(triangle, OimParams(ks=0.8), SimConfig(), 1, 0, reference_h=3.0),
        run_trials(triangle, OimParams(ks=0.8), SimConfig(), 1, 0, limit=2),
    )
    assert (exact.reference_h, exact.success_definition) == (
        -1.0,
        "exact ground energy by exhaustive enumeration",
    )
    assert supplied.reference_h == 3.0
    assert supplied.success_definition == "reference energy supplied by the caller"
    assert none_binarized.reference_h is None
    assert none_binarized.success_rate == 0.0


def test_weak_injection_loses_binarization(triangle):
    p = OimParams(k=1.0, ks=0.1, kn=0.005)
    result = run_trials(triangle, p, SimConfig(t_max=50.0), 6, master_seed=5)
    for t in result.trials:
        assert not t.stable


def test_integration_failure_becomes_failed_trial(triangle, mocker, caplog):
    mocker.patch(
        "oim_stability.experiments.integrate",
        side_effect=IntegrationError("non-finite phase state", step=5),
    )
    with caplog.at_level(logging.WARNING, logger="oim_stability.experiments"):
        result = run_trials(triangle, OimParams(ks=0.8), SimConfig(), 2, master_seed=0)
    assert "failed" in caplog.text
    assert result.histogram == {}
    assert result.n_nonbinarized == 2
    assert result.success_rate == 0.0
    for t in result.trials:
        assert not t.converged
        assert not t.binarized
        assert math.isnan(t.readout.worst_deviation)
        assert t.steps == 5
        assert "non-finite" in t.error


def test_run_trial_matches_campaign_row(triangle):
    p = OimParams(k=1.0, ks=0.8)
    result = run_trials(triangle, p, SimConfig(), 3, master_seed=8)
    t = run_trial(triangle, p, SimConfig(), 8, 2, 0.1, 10.0)
    assert _summary(result)[2] == (
        t.trial,
        t.seed,
        t.converged,
        t.binarized,
        t.h,
        t.final_lambda_l,
        t.steps,
    )


def test_stable_set_report_triangle(triangle):
    report = stable_set_report(triangle, 1.0, 0.8)
    assert [r.config for r in report.records] == [1, 2, 3]
    assert (report.total, report.truncated) == (3, False)
    report = stable_set_report(triangle, 1.0, 1.6)
    assert [r.config for r in report.records] == [1, 2, 3, 0]
    assert [r.h for r in report.records] == [-1.0, -1.0, -1.0, 3.0]


def test_stable_set_report_truncation(triangle, caplog):
    with caplog.at_level(logging.WARNING, logger="oim_stability.experiments"):
        report = stable_set_report(triangle, 1.0, 0.8, cap=2)
    assert [r.config for r in report.records] == [1, 2]
    assert report.total == 3
    assert report.truncated
    assert "truncated" in caplog.text


def test_stable_sets_are_nested(random_couplings):
    for w in random_couplings:
        previous = set()
        for ks in (0.2, 0.5, 1.0, 2.0):
            current = {r.config for r in stable_set_report(w, 1.0, ks).records}
            assert previous <= current
            previous = current


def test_everything_stable_above_largest_threshold(random_couplings):
    w = random_couplings[1]
    spins = decode_indices(np.arange(config_count(w.n)), w.n)
    top = max(base_spectrum(w, s).critical_ks(1.0) for s in spins)
    report = stable_set_report(w, 1.0, top + 1e-6)
    assert report.total == config_count(w.n)


def test_run_metadata(tmp_path, triangle_graph):
    path = tmp_path / "g.txt"
    path.write_text(dump_graph(triangle_graph))
    provenance = graph_provenance_from_file(str(path))
    assert provenance["sha256"] == hashlib.sha256(path.read_bytes()).hexdigest()
    a = RunMetadata.collect(provenance, {"k": 1.0})
    b = RunMetadata.collect(provenance, {"k": 1.0})
    assert a.timestamp
    assert a == b
    assert a.reproducible() == b.reproducible()
    assert "timestamp" not in a.reproducible()
    assert a.prng == "numpy.random.PCG64"
    assert a.normal_method == "ziggurat"
    assert set(a.run_info()) == {"timestamp", "python_version"}


def test_campaign_parameters(triangle):
    noisy = run_trials(
        triangle, OimParams(ks=0.8, kn=0.005), SimConfig(t_max=5.0), 1, master_seed=0
    )
    params = campaign_parameters(noisy)
    assert params["integrator"] == "euler-maruyama"
    assert params["master_seed"] == 0
    assert params["sim"]["t_max"] == 5.0
    quiet = run_trials(triangle, OimParams(ks=0.8), SimConfig(t_max=5.0), 1, 0)
    assert campaign_parameters(quiet)["integrator"] == "rk4"


def _separated_ks(w, k=1.0):
    spins = decode_indices(np.arange(config_count(w.n)), w.n)
    thresholds = sorted({round(base_spectrum(w, s).critical_ks(k), 9) for s in spins})
    grid = np.linspace(0.05, thresholds[-1], 200)
    gaps = [min(abs(ks - t) for t in thresholds) for ks in grid]
    return float(grid[int(np.argmax(gaps))])


@pytest.mark.slow
def test_dynamics_agree_with_stability():
    for seed, (n, m) in enumerate([(8, 14), (10, 22), (12, 30)]):
        w = coupling_from_graph(generate_random_graph(n, m, seed))
        ks = _separated_ks(w)
        p = OimParams(k=1.0, ks=ks, kn=0.005)
        stable = {r.config for r in stable_set_report(w, 1.0, ks).records}
        result = run_trials(w, p, SimConfig(), 200, master_seed=seed, threads=4)
        landed = [t for t in result.trials if t.converged and t.binarized]
        assert landed
        for t in landed:
            assert t.final_lambda_l < 0
            assert largest_lyapunov(w, p, t.readout.spins) < 0
            assert config_to_index(t.readout.spins) in stable
