# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Oscillator Ising machine simulator and stability toolkit."""

__version__ = "0.1.0"

from .dynamics import SimConfig, integrate, readout  # noqa: E402
from .enumeration import enumerate_energies, ground_states  # noqa: E402
from .experiments import ks_campaign, run_trials, stable_set_report  # noqa: E402
from .model import (  # noqa: E402
    CouplingMatrix,
    Graph,
    OimParams,
    coupling_from_graph,
    generate_random_graph,
    load_graph,
)
from .settings import OimSettings  # noqa: E402
from .stability import (  # noqa: E402
    critical_ks,
    energy_level_stats,
    largest_lyapunov,
    stability_sweep,
)

__all__ = (
    "__version__",
    "CouplingMatrix",
    "Graph",
    "OimParams",
    "OimSettings",
    "SimConfig",
    "coupling_from_graph",
    "critical_ks",
    "energy_level_stats",
    "enumerate_energies",
    "generate_random_graph",
    "ground_states",
    "integrate",
    "ks_campaign",
    "largest_lyapunov",
    "load_graph",
    "readout",
    "run_trials",
    "stability_sweep",
    "stable_set_report",
)
