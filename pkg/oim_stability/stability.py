# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Linear stability of oscillator phase configurations.

At a binarized phase state with spins ``s`` the Jacobian of the phase
dynamics is ``K B(s) - 2 K_s I`` where ``B(s)`` is the Jacobian at ``K = 1``
and ``K_s = 0``. One eigensolve of ``B(s)`` therefore gives the spectrum at
every ``(K, K_s)``: ``lambda_i = K beta_i - 2 K_s``.
"""

import logging
import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .config import (
    OIM_BLOCK_BITS,
    OIM_EIGEN_SOLVER,
    OIM_ENERGY_RESOLUTION,
    OIM_ENUMERATION_MAX_NODES,
    OIM_MARGINAL_TOL,
)
from .enumeration import (
    batch_energies,
    bin_energies,
    check_enumerable,
    config_count,
    config_to_index,
    decode_indices,
)
from .errors import EigenSolverError, ParameterError
from .model import _check_dim, _velocity, as_phases, as_spins, ising_energy
from .utils import map_blocks, partition

logger = logging.getLogger(__name__)

ALL = None
"""Select every configuration in sweeps."""

SweepRow = namedtuple("SweepRow", ["config", "h", "ks", "lambda_l"])


def jacobian(w, p, th):
    """Jacobian of the phase velocity at an arbitrary phase state.

    Off-diagonal ``K w_ik cos(th_i - th_k)``, diagonal
    ``-K sum_j w_ij cos(th_i - th_j) - 2 K_s cos(2 th_i)``.
    """
    theta = as_phases(th)
    _check_dim(w, theta.shape[0], "Phase state")
    coupling = p.k * w.w * np.cos(theta[:, None] - theta[None, :])
    j = coupling.copy()
    np.fill_diagonal(j, -coupling.sum(axis=1) - 2.0 * p.ks * np.cos(2.0 * theta))
    return j


def binarized_jacobians(w, spins, k=1.0, ks=0.0):
    """Stack of binarized Jacobians, one per row of ``spins``."""
    x = np.asarray(spins, dtype=float)
    j = k * w[None, :, :] * x[:, :, None] * x[:, None, :]
    diag = -k * x * (x @ w) - 2.0 * ks
    idx = np.arange(w.shape[0])
    j[:, idx, idx] = diag
    return j


def jacobian_binarized(w, p, s):
    """Jacobian at the binarized phase state of spins ``s``."""
    spins = as_spins(s)
    _check_dim(w, spins.shape[0], "Spin configuration")
    return binarized_jacobians(w.w, spins[None, :], p.k, p.ks)[0]


def _prepare(j):
    j = np.asarray(j, dtype=float)
    if j.ndim != 2 or j.shape[0] != j.shape[1]:
        raise EigenSolverError(f"Expected a square matrix, got shape {j.shape}.")
    if not np.all(np.isfinite(j)):
        raise EigenSolverError("Matrix has non-finite entries.")
    scale = max(1.0, float(np.linalg.norm(j)))
    if np.max(np.abs(j - j.T), initial=0.0) > 1e-10 * scale:
        raise EigenSolverError("Matrix is not symmetric within 1e-10.")
    return 0.5 * (j + j.T)


def jacobi_eigenvalues(j, tol=1e-12, max_sweeps=64):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Converges when the off-diagonal Frobenius norm drops to
    ``tol * ||J||``.
    """
    a = _prepare(j).copy()
    n = a.shape[0]
    norm = np.linalg.norm(a)
    for sweep in range(max_sweeps):
        off = math.sqrt(max(0.0, np.sum(a * a) - np.sum(np.diag(a) ** 2)))
        if off <= tol * norm:
            logger.debug("Jacobi converged after %d sweeps", sweep)
            return np.sort(np.diag(a))[::-1]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    raise EigenSolverError(
        f"Jacobi rotations did not converge in {max_sweeps} sweeps."
    )


SOLVERS = ("lapack", "jacobi")


def _check_solver(solver):
    if solver not in SOLVERS:
        raise ParameterError(
            f"Unknown eigensolver '{solver}', expected one of {', '.join(SOLVERS)}."
        )


def symmetric_eigenvalues(j, solver=OIM_EIGEN_SOLVER):
    """All eigenvalues of a symmetric matrix in descending order.

    A LAPACK failure falls back to Jacobi rotations.
    """
    _check_solver(solver)
    if solver == "jacobi":
        return jacobi_eigenvalues(j)
    a = _prepare(j)
    try:
        return np.linalg.eigvalsh(a)[::-1]
    except np.linalg.LinAlgError as e:
        logger.warning(f"LAPACK eigensolver failed ({e}), using Jacobi rotations")
        return jacobi_eigenvalues(a)


@dataclass(frozen=True, eq=False)
class BaseSpectrum:
    """Descending eigenvalues of the binarized Jacobian at ``K=1, K_s=0``."""

    beta: np.ndarray

    def spectrum(self, k, ks):
        """Full spectrum at ``(k, ks)``."""
        return k * self.beta - 2.0 * ks

    def largest(self, k, ks):
        """Largest Lyapunov exponent at ``(k, ks)``."""
        return float(k * self.beta[0] - 2.0 * ks)

    def critical_ks(self, k):
        """Injection strength where the largest exponent crosses zero."""
        return float(k * self.beta[0] / 2.0)


def base_spectrum(w, s, solver=OIM_EIGEN_SOLVER):
    """Base spectrum of configuration ``s``."""
    spins = as_spins(s)
    _check_dim(w, spins.shape[0], "Spin configuration")
    j = binarized_jacobians(w.w, spins[None, :])[0]
    return BaseSpectrum(symmetric_eigenvalues(j, solver))


def largest_lyapunov(w, p, s):
    """Largest Lyapunov exponent ``lambda_L = K beta_1 - 2 K_s``."""
    return base_spectrum(w, s).largest(p.k, p.ks)


def critical_ks(w, s, k):
    """Critical injection strength ``K beta_1 / 2``.

    The configuration is stable exactly when ``K_s`` exceeds it.
    """
    if not k > 0:
        raise ParameterError(f"k must be > 0, got {k}.")
    return base_spectrum(w, s).critical_ks(k)


def is_stable(lambda_l, tol=OIM_MARGINAL_TOL):
    """Strict stability; marginal exponents count as unstable."""
    return lambda_l < -tol


def is_equilibrium(w, p, th, tol):
    """Whether the phase velocity vanishes within ``tol`` in sup-norm."""
    if not tol > 0:
        raise ParameterError(f"tol must be > 0, got {tol}.")
    theta = as_phases(th)
    _check_dim(w, theta.shape[0], "Phase state")
    return bool(np.max(np.abs(_velocity(w.w, p.k, p.ks, theta)), initial=0.0) <= tol)


@dataclass(frozen=True)
class StabilityRecord:
    """Stability of one configuration."""

    config: int
    h: float
    lambda_l: float
    stable: bool


@dataclass(frozen=True)
class EnergyLevelStats:
    """Extremes of lambda_L over the configurations at one energy."""

    h: float
    count: int
    lambda_min: float
    lambda_max: float
    n_stable: int


def _spectra(w, indices, solver="lapack"):
    spins = decode_indices(indices, w.shape[0])
    stack = binarized_jacobians(w, spins)
    if solver == "lapack":
        beta1 = np.linalg.eigvalsh(stack)[:, -1]
    else:
        beta1 = np.array([symmetric_eigenvalues(j, solver)[0] for j in stack])
    return indices, batch_energies(w, spins), beta1


def _spectra_range(w, start, stop, solver="lapack"):
    return _spectra(w, np.arange(start, stop, dtype=np.int64), solver)


def _block_size(n, block_bits=OIM_BLOCK_BITS):
    return 1 << min(n - 1, block_bits)


def _spectra_tasks(w, configs, solver, block_bits, limit):
    _check_solver(solver)
    if configs is ALL:
        check_enumerable(w.n, limit)
        blocks = partition(config_count(w.n), _block_size(w.n, block_bits))
        return _spectra_range, [(w.w, start, stop, solver) for start, stop in blocks]
    indices = np.array(sorted(set(int(c) for c in configs)), dtype=np.int64)
    if indices.size and not (
        0 <= indices[0] and indices[-1] < config_count(w.n)
    ):
        raise ParameterError(f"Configuration index out of range for {w.n} nodes.")
    blocks = partition(indices.size, _block_size(w.n, block_bits))
    return _spectra, [(w.w, indices[start:stop], solver) for start, stop in blocks]


def iter_spectra(
    w,
    configs=ALL,
    threads=1,
    solver=OIM_EIGEN_SOLVER,
    block_bits=OIM_BLOCK_BITS,
    limit=OIM_ENUMERATION_MAX_NODES,
):
    """Yield ``(indices, h, beta_1)`` blocks in ascending index order.

    ``limit`` caps the node count of full sweeps; explicit ``configs`` lists
    are not capped.
    """
    func, tasks = _spectra_tasks(w, configs, solver, block_bits, limit)
    wave = max(1, threads or 1) * 4
    for start in range(0, len(tasks), wave):
        for block in map_blocks(func, tasks[start : start + wave], threads):
            yield block


def iter_stability_sweep(
    w, k, ks_values, configs=ALL, threads=1, solver=OIM_EIGEN_SOLVER, **options
):
    """Yield sweep rows ordered by config index, then ``ks``.

    ``options`` go to :func:`iter_spectra`.
    """
    ks_values = [float(ks) for ks in ks_values]
    if not ks_values:
        raise ParameterError("Empty K_s grid.")
    for indices, h, beta1 in iter_spectra(w, configs, threads, solver, **options):
        for idx, energy, b in zip(indices.tolist(), h.tolist(), beta1.tolist()):
            for ks in ks_values:
                yield SweepRow(idx, energy, ks, k * b - 2.0 * ks)


def stability_sweep(
    w, k, ks_values, configs=ALL, threads=1, solver=OIM_EIGEN_SOLVER, **options
):
    """lambda_L for every ``(config, ks)`` pair, one eigensolve per config."""
    return list(
        iter_stability_sweep(w, k, ks_values, configs, threads, solver, **options)
    )


def stability_records(
    w,
    k,
    ks,
    configs=ALL,
    threads=1,
    solver=OIM_EIGEN_SOLVER,
    tol=OIM_MARGINAL_TOL,
    **options,
):
    """Yield a StabilityRecord per configuration in ascending index order."""
    for indices, h, beta1 in iter_spectra(w, configs, threads, solver, **options):
        lam = k * beta1 - 2.0 * ks
        for idx, energy, value in zip(indices.tolist(), h.tolist(), lam.tolist()):
            yield StabilityRecord(idx, energy, value, is_stable(value, tol))


def _level_block(w, start, stop, k, ks, integral, solver, tol, resolution):
    _, h, beta1 = _spectra_range(w, start, stop, solver)
    lam = k * beta1 - 2.0 * ks
    keys, inverse = np.unique(
        bin_energies(h, integral, resolution), return_inverse=True
    )
    count = np.bincount(inverse, minlength=keys.size)
    lo = np.full(keys.size, np.inf)
    hi = np.full(keys.size, -np.inf)
    np.minimum.at(lo, inverse, lam)
    np.maximum.at(hi, inverse, lam)
    stable = np.bincount(
        inverse, weights=(lam < -tol).astype(float), minlength=keys.size
    )
    return {
        key: [int(c), float(a), float(b), int(s)]
        for key, c, a, b, s in zip(keys.tolist(), count, lo, hi, stable)
    }


def energy_level_stats(
    w,
    k,
    ks,
    threads=1,
    solver=OIM_EIGEN_SOLVER,
    tol=OIM_MARGINAL_TOL,
    resolution=OIM_ENERGY_RESOLUTION,
    block_bits=OIM_BLOCK_BITS,
    limit=OIM_ENUMERATION_MAX_NODES,
):
    """Per-energy min/max of lambda_L and the count of stable configurations."""
    _check_solver(solver)
    check_enumerable(w.n, limit)
    blocks = partition(config_count(w.n), _block_size(w.n, block_bits))
    partials = map_blocks(
        _level_block,
        [
            (w.w, start, stop, k, ks, w.is_integral, solver, tol, resolution)
            for start, stop in blocks
        ],
        threads,
    )
    levels = {}
    for partial in partials:
        for key, (count, lo, hi, stable) in partial.items():
            if key not in levels:
                levels[key] = [count, lo, hi, stable]
                continue
            level = levels[key]
            level[0] += count
            level[1] = min(level[1], lo)
            level[2] = max(level[2], hi)
            level[3] += stable
    return [
        EnergyLevelStats(h, count, lo, hi, stable)
        for h, (count, lo, hi, stable) in sorted(levels.items())
    ]


def stability_record(w, p, s):
    """StabilityRecord of a single configuration."""
    lam = largest_lyapunov(w, p, s)
    return StabilityRecord(
        config_to_index(s), ising_energy(w, s), lam, is_stable(lam)
    )
