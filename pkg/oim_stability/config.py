# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Default configuration for the OIM toolkit."""

OIM_DEFAULT_K = 1.0
"""Coupling strength K."""

OIM_DEFAULT_KN = 0.005
"""Noise amplitude K_n used by trace and simulate."""

OIM_DEFAULT_TRIALS = 50
"""Number of trials per K_s value in a campaign."""

OIM_DT = 0.01
"""Integration time step."""

OIM_T_MAX = 200.0
"""Integration horizon."""

OIM_EQ_TOL = 1e-6
"""Equilibrium tolerance on the sup-norm of the phase velocity."""

OIM_EQ_WINDOW = 10
"""Consecutive steps below ``OIM_EQ_TOL`` required to stop early."""

OIM_RECORD_STRIDE = 10
"""Steps between recorded trajectory samples."""

OIM_READOUT_TOL = 0.1
"""Angular tolerance (radians) for reading a phase as a spin."""

OIM_SETTLE_TIME = 10.0
"""Noiseless settle duration applied after a noisy run."""

OIM_ENUMERATION_MAX_NODES = 26
"""Node cap for exhaustive sweeps."""

OIM_VERIFY_MAX_NODES = 16
"""Node cap for the naive enumeration cross-check."""

OIM_MARGINAL_TOL = 1e-9
"""lambda_L at or above ``-OIM_MARGINAL_TOL`` is classified unstable."""

OIM_ENERGY_RESOLUTION = 1e-9
"""Binning resolution for energies of non-integer weighted graphs."""

OIM_EIGEN_SOLVER = "lapack"
"""Symmetric eigensolver: ``lapack`` or ``jacobi``."""

OIM_BLOCK_BITS = 12
"""log2 of the number of configurations handled per vectorized block."""

OIM_THREADS = None
"""Worker count for exhaustive sweeps and campaigns, ``None`` for all cores."""

OIM_GROUND_STATE_CAP = 64
"""Explicit ground-state representatives listed by ``enumerate``."""
