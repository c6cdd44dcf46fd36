# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Time integration of the oscillator phase dynamics."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .config import (
    OIM_DT,
    OIM_EQ_TOL,
    OIM_EQ_WINDOW,
    OIM_RECORD_STRIDE,
    OIM_SETTLE_TIME,
    OIM_T_MAX,
)
from .errors import IntegrationError, ParameterError
from .model import _check_dim, _velocity, as_phases, lyapunov_energy

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

NORMAL_METHOD = "ziggurat"
"""Normal variates come from ``numpy.random.Generator.standard_normal``."""

DETERMINISTIC_SCHEME = "rk4"
STOCHASTIC_SCHEME = "euler-maruyama"


@dataclass(frozen=True)
class SimConfig:
    """Step size, horizon and stopping rule of an integration."""

    dt: float = OIM_DT
    t_max: float = OIM_T_MAX
    eq_tol: float = OIM_EQ_TOL
    eq_window: int = OIM_EQ_WINDOW
    record_stride: int = OIM_RECORD_STRIDE

    def __post_init__(self):
        """Validate ranges."""
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ParameterError(f"dt must be > 0, got {self.dt}.")
        if not (math.isfinite(self.t_max) and self.t_max >= self.dt):
            raise ParameterError(f"t_max must be >= dt, got {self.t_max}.")
        if not self.eq_tol > 0:
            raise ParameterError(f"eq_tol must be > 0, got {self.eq_tol}.")
        if self.eq_window < 1:
            raise ParameterError(f"eq_window must be >= 1, got {self.eq_window}.")
        if self.record_stride < 1:
            raise ParameterError(
                f"record_stride must be >= 1, got {self.record_stride}."
            )

    @property
    def n_steps(self):
        """Number of steps to reach ``t_max``."""
        return int(round(self.t_max / self.dt))

    def as_dict(self):
        """Plain mapping for reports."""
        return {
            "dt": self.dt,
            "t_max": self.t_max,
            "eq_tol": self.eq_tol,
            "eq_window": self.eq_window,
            "record_stride": self.record_stride,
        }


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded samples of an integration."""

    times: np.ndarray
    states: np.ndarray
    energies: np.ndarray
    steps: int = 0
    converged: bool = False
    noisy: bool = False

    @property
    def final_state(self):
        """Last recorded phase state."""
        return self.states[-1]


@dataclass(frozen=True, eq=False)
class Binarized:
    """Every phase sits within tolerance of 0 or pi."""

    spins: np.ndarray

    binarized = True


@dataclass(frozen=True)
class NonBinarized:
    """Some phase is off the ``{0, pi}`` lattice."""

    worst_deviation: float

    binarized = False


@dataclass(frozen=True)
class EnergyTraceReport:
    """Largest energy increase between consecutive samples."""

    max_increase: float
    passed: bool
    deterministic: bool


def _check_dt(dt):
    if not (math.isfinite(dt) and dt > 0):
        raise ParameterError(f"dt must be > 0, got {dt}.")


def _rk4(w, k, ks, theta, dt):
    k1 = _velocity(w, k, ks, theta)
    k2 = _velocity(w, k, ks, theta + 0.5 * dt * k1)
    k3 = _velocity(w, k, ks, theta + 0.5 * dt * k2)
    k4 = _velocity(w, k, ks, theta + dt * k3)
    return theta + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _euler_maruyama(w, k, ks, kn, theta, dt, rng):
    drift = _velocity(w, k, ks, theta) * dt
    noise = kn * math.sqrt(dt) * rng.standard_normal(theta.shape[0])
    return theta + drift + noise


def _finite(theta, step=None):
    if not np.all(np.isfinite(theta)):
        raise IntegrationError("non-finite phase state", step=step)
    return theta


def step_deterministic(w, p, th, dt):
    """One classical Runge-Kutta step of the noiseless dynamics."""
    _check_dt(dt)
    theta = as_phases(th)
    _check_dim(w, theta.shape[0], "Phase state")
    return _finite(_rk4(w.w, p.k, p.ks, theta, dt))


def step_sde(w, p, th, dt, rng):
    """One Euler-Maruyama step with additive noise of amplitude ``p.kn``."""
    _check_dt(dt)
    theta = as_phases(th)
    _check_dim(w, theta.shape[0], "Phase state")
    return _finite(_euler_maruyama(w.w, p.k, p.ks, p.kn, theta, dt, rng))


def random_phases(n, rng):
    """Initial phases drawn uniformly from ``[0, 2 pi)``."""
    return rng.uniform(0.0, TWO_PI, size=n)


def integrate(w, p, th0, sim, rng=None):
    """Integrate from ``th0``.

    Without ``rng`` the noiseless dynamics run with RK4 and stop early once
    the phase velocity stays within ``sim.eq_tol`` for ``sim.eq_window``
    consecutive states. A start that already lies within ``sim.eq_tol`` is
    an equilibrium: the run stops at once with zero steps and a single
    sample at ``t = 0``. With ``rng`` Euler-Maruyama runs to ``sim.t_max``.
    Every ``sim.record_stride`` steps a sample is recorded; the initial and
    final states are always recorded.
    """
    theta = as_phases(th0)
    _check_dim(w, theta.shape[0], "Phase state")
    noisy = rng is not None
    warr, k, ks = w.w, p.k, p.ks
    times, states = [0.0], [theta.copy()]
    below = 0
    converged = False
    step = 0

    def partial():
        return _trajectory(w, p, times, states, step, False, noisy)

    for step in range(sim.n_steps + 1):
        if not noisy:
            speed = np.max(np.abs(_velocity(warr, k, ks, theta)), initial=0.0)
            below = below + 1 if speed <= sim.eq_tol else 0
            if below >= sim.eq_window or (step == 0 and below):
                converged = True
                break
        if step == sim.n_steps:
            break
        if noisy:
            theta = _euler_maruyama(warr, k, ks, p.kn, theta, sim.dt, rng)
        else:
            theta = _rk4(warr, k, ks, theta, sim.dt)
        if not np.all(np.isfinite(theta)):
            raise IntegrationError(
                "non-finite phase state", step=step + 1, trajectory=partial()
            )
        if (step + 1) % sim.record_stride == 0:
            times.append((step + 1) * sim.dt)
            states.append(theta.copy())
    if times[-1] != step * sim.dt:
        times.append(step * sim.dt)
        states.append(theta.copy())
    logger.debug(
        "Integration stopped after %d steps (converged=%s)", step, converged
    )
    return _trajectory(w, p, times, states, step, converged, noisy)


def _trajectory(w, p, times, states, steps, converged, noisy):
    states = np.array(states)
    energies = np.array([lyapunov_energy(w, p, th) for th in states])
    return Trajectory(
        times=np.array(times),
        states=states,
        energies=energies,
        steps=steps,
        converged=converged,
        noisy=noisy,
    )


def settle(w, p, th, duration=OIM_SETTLE_TIME, dt=OIM_DT):
    """Noiseless relaxation of ``th`` for ``duration`` time units."""
    sim = SimConfig(dt=dt, t_max=duration, record_stride=max(1, int(duration / dt)))
    return integrate(w, p, th, sim).final_state


def check_readout_tol(tol):
    """Readout tolerances must lie strictly between 0 and pi/4."""
    if not 0 < tol < math.pi / 4:
        raise ParameterError(f"Readout tolerance must lie in (0, pi/4), got {tol}.")


def readout(th, tol):
    """Read phases as spins: ``+1`` near 0, ``-1`` near pi (mod 2 pi)."""
    check_readout_tol(tol)
    phi = np.mod(as_phases(th), TWO_PI)
    dev_zero = np.minimum(phi, TWO_PI - phi)
    dev_pi = np.abs(phi - math.pi)
    deviation = np.minimum(dev_zero, dev_pi)
    if np.all(deviation <= tol):
        return Binarized(np.where(dev_zero <= dev_pi, 1, -1).astype(np.int8))
    return NonBinarized(float(np.max(deviation)))


def energy_trace(traj):
    """Largest sample-to-sample energy increase along a trajectory.

    The check passes when the increase stays within
    ``1e-8 * max(1, |E|)``; for noisy trajectories it is reported only.
    """
    energies = np.asarray(traj.energies)
    if energies.size < 2:
        return EnergyTraceReport(0.0, True, not traj.noisy)
    increase = float(max(0.0, np.max(np.diff(energies))))
    bound = 1e-8 * max(1.0, float(np.max(np.abs(energies))))
    return EnergyTraceReport(increase, increase <= bound, not traj.noisy)
