# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Oracle checks run by ``oim-stability verify``."""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import OIM_VERIFY_MAX_NODES
from .dynamics import SimConfig, energy_trace, integrate, random_phases
from .enumeration import config_count, decode_indices, verify_enumeration
from .errors import VerificationError
from .model import (
    Graph,
    OimParams,
    coupling_from_graph,
    generate_random_graph,
    ising_energy,
    lyapunov_energy,
    phase_velocity,
    spins_to_phases,
)
from .stability import (
    base_spectrum,
    jacobi_eigenvalues,
    jacobian,
    jacobian_binarized,
    symmetric_eigenvalues,
)

logger = logging.getLogger(__name__)

FD_STEP = 1e-5
HESSIAN_STEP = 1e-4
SHIFT_GRID = [(k, ks) for k in (0.5, 1.0, 2.0) for ks in (0.0, 0.4, 1.3)]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one oracle check."""

    name: str
    passed: bool
    detail: str = ""


def builtin_graphs():
    """Small graphs with hand-derived landscapes."""
    return {
        "edge": Graph(2, ((0, 1, 1.0),)),
        "triangle": Graph(3, ((0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0))),
        "k4": generate_random_graph(4, 6, seed=0),
        "random-10-22": generate_random_graph(10, 22, seed=1),
    }


def _sample_configs(n, rng, limit=32):
    total = config_count(n)
    if total <= limit:
        return np.arange(total)
    return np.unique(rng.integers(0, total, size=limit))


def _rel(err, scale):
    return err / max(1.0, scale)


def check_enumeration(w, rng, limit=OIM_VERIFY_MAX_NODES):
    """Gray-code energies against naive recomputation."""
    if w.n > limit:
        return CheckResult("enumeration", True, f"skipped, n > {limit}")
    return CheckResult("enumeration", verify_enumeration(w, limit))


def check_binarization(w, rng):
    """Lyapunov energy of binarized states equals ``2 K H - n K_s``."""
    p = OimParams(k=1.3, ks=0.7)
    worst = 0.0
    for s in decode_indices(_sample_configs(w.n, rng), w.n):
        e = lyapunov_energy(w, p, spins_to_phases(s))
        expected = 2.0 * p.k * ising_energy(w, s) - w.n * p.ks
        worst = max(worst, _rel(abs(e - expected), abs(expected)))
    return CheckResult("binarization", worst <= 1e-12, f"max rel error {worst:.3g}")


def check_gradient(w, rng, points=5):
    """Phase velocity against central differences of the Lyapunov energy."""
    p = OimParams(k=1.0, ks=0.6)
    worst = 0.0
    for _ in range(points):
        theta = random_phases(w.n, rng)
        f = phase_velocity(w, p, theta)
        grad = np.empty(w.n)
        for i in range(w.n):
            e = np.zeros(w.n)
            e[i] = FD_STEP
            grad[i] = (
                lyapunov_energy(w, p, theta + e) - lyapunov_energy(w, p, theta - e)
            ) / (2.0 * FD_STEP)
        err = np.max(np.abs(f + 0.5 * grad))
        worst = max(worst, _rel(err, np.max(np.abs(f))))
    return CheckResult("gradient", worst <= 1e-6, f"max rel error {worst:.3g}")


def check_hessian(w, rng, points=2):
    """Jacobian against ``-1/2`` times the finite-difference Hessian."""
    p = OimParams(k=1.0, ks=0.6)
    h = HESSIAN_STEP
    worst = 0.0
    eye = np.eye(w.n) * h
    for _ in range(points):
        theta = random_phases(w.n, rng)
        j = jacobian(w, p, theta)
        hess = np.empty((w.n, w.n))
        for i in range(w.n):
            for k in range(i, w.n):
                hess[i, k] = hess[k, i] = (
                    lyapunov_energy(w, p, theta + eye[i] + eye[k])
                    - lyapunov_energy(w, p, theta + eye[i] - eye[k])
                    - lyapunov_energy(w, p, theta - eye[i] + eye[k])
                    + lyapunov_energy(w, p, theta - eye[i] - eye[k])
                ) / (4.0 * h * h)
        err = np.max(np.abs(j + 0.5 * hess))
        worst = max(worst, _rel(err, np.max(np.abs(j))))
    return CheckResult("hessian", worst <= 1e-5, f"max rel error {worst:.3g}")


def check_spectral_shift(w, rng):
    """Direct spectra equal the shifted base spectrum; all-ones eigenpair."""
    worst_shift = worst_ones = 0.0
    ones = np.ones(w.n)
    for s in decode_indices(_sample_configs(w.n, rng), w.n):
        beta = base_spectrum(w, s)
        for k, ks in SHIFT_GRID:
            j = jacobian_binarized(w, OimParams(k=k, ks=ks), s)
            scale = np.linalg.norm(j)
            direct = symmetric_eigenvalues(j)
            worst_shift = max(
                worst_shift,
                _rel(np.max(np.abs(direct - beta.spectrum(k, ks))), scale),
            )
            worst_ones = max(
                worst_ones, _rel(np.max(np.abs(j @ ones + 2.0 * ks)), scale)
            )
    passed = worst_shift <= 1e-9 and worst_ones <= 1e-12
    return CheckResult(
        "spectral-shift",
        passed,
        f"shift error {worst_shift:.3g}, all-ones error {worst_ones:.3g}",
    )


def check_solvers(w, rng):
    """LAPACK, cyclic Jacobi and SciPy agree on binarized Jacobians."""
    worst = 0.0
    p = OimParams(k=1.0, ks=0.3)
    for s in decode_indices(_sample_configs(w.n, rng, limit=8), w.n):
        j = jacobian_binarized(w, p, s)
        reference = scipy.linalg.eigvalsh(j)[::-1]
        scale = np.linalg.norm(j)
        for values in (symmetric_eigenvalues(j), jacobi_eigenvalues(j)):
            worst = max(worst, _rel(np.max(np.abs(values - reference)), scale))
        trace_err = abs(np.trace(j) - np.sum(reference))
        worst = max(worst, _rel(trace_err, w.n * scale))
    return CheckResult("eigensolvers", worst <= 1e-9, f"max rel error {worst:.3g}")


def check_dissipation(w, rng):
    """Energy never increases along a deterministic trajectory."""
    p = OimParams(k=1.0, ks=0.8)
    sim = SimConfig(dt=0.01, t_max=20.0, record_stride=1)
    report = energy_trace(integrate(w, p, random_phases(w.n, rng), sim))
    return CheckResult(
        "dissipation", report.passed, f"max increase {report.max_increase:.3g}"
    )


CHECKS = (
    check_enumeration,
    check_binarization,
    check_gradient,
    check_hessian,
    check_spectral_shift,
    check_solvers,
    check_dissipation,
)


def run_checks(graph, seed=0, enumeration_limit=OIM_VERIFY_MAX_NODES):
    """Run every oracle check on ``graph``.

    ``enumeration_limit`` caps the node count of the naive enumeration
    cross-check.
    """
    w = coupling_from_graph(graph)
    rng = np.random.Generator(np.random.PCG64(seed))
    results = []
    for check in CHECKS:
        if check is check_enumeration:
            result = check(w, rng, enumeration_limit)
        else:
            result = check(w, rng)
        logger.info("%s: %s %s", result.name, result.passed, result.detail)
        results.append(result)
    return results


def verify(graph, seed=0, enumeration_limit=OIM_VERIFY_MAX_NODES):
    """Run the oracle checks, raising on the first failure."""
    results = run_checks(graph, seed, enumeration_limit)
    failed = next((r for r in results if not r.passed), None)
    if failed is not None:
        raise VerificationError(
            f"Check '{failed.name}' failed: {failed.detail}", results
        )
    return results
