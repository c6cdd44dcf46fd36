# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""CSV and JSON serializers for analysis results."""

from .report import campaign_report, read_report, write_report
from .tables import (
    format_energy,
    format_float,
    write_critical_csv,
    write_histogram_csv,
    write_levels_csv,
    write_sweep_csv,
    write_trace_csv,
    write_trials_csv,
)

__all__ = (
    "campaign_report",
    "format_energy",
    "format_float",
    "read_report",
    "write_critical_csv",
    "write_histogram_csv",
    "write_levels_csv",
    "write_report",
    "write_sweep_csv",
    "write_trace_csv",
    "write_trials_csv",
)
