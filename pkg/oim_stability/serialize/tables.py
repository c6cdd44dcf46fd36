# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Plot-ready CSV tables.

Energies of integer-weighted graphs are written as integers; every other
real is written with 12 significant digits.
"""

import csv


def format_float(x):
    """Twelve significant digits, without a negative zero."""
    return f"{float(x) + 0.0:.12g}"


def format_energy(h, integral=True):
    """Exact integer for integral energies, otherwise ``format_float``."""
    if h is None:
        return ""
    if integral and float(h).is_integer():
        return str(int(h))
    return format_float(h)


def _writer(stream):
    return csv.writer(stream, lineterminator="\n")


def write_histogram_csv(histogram, stream):
    """Columns ``H,count`` in ascending ``H``."""
    writer = _writer(stream)
    writer.writerow(["H", "count"])
    for h, count in histogram.items():
        writer.writerow([format_energy(h, histogram.integral), count])


def write_sweep_csv(rows, stream, integral=True):
    """Columns ``config_index,H,ks,lambda_L``."""
    writer = _writer(stream)
    writer.writerow(["config_index", "H", "ks", "lambda_L"])
    for row in rows:
        writer.writerow(
            [
                row.config,
                format_energy(row.h, integral),
                format_float(row.ks),
                format_float(row.lambda_l),
            ]
        )


def write_levels_csv(levels, stream, integral=True):
    """Columns ``H,count,lambda_min,lambda_max,n_stable``."""
    writer = _writer(stream)
    writer.writerow(["H", "count", "lambda_min", "lambda_max", "n_stable"])
    for level in levels:
        writer.writerow(
            [
                format_energy(level.h, integral),
                level.count,
                format_float(level.lambda_min),
                format_float(level.lambda_max),
                level.n_stable,
            ]
        )


def write_critical_csv(rows, stream, integral=True):
    """Columns ``config_index,H,ks_critical`` from ``(index, H, ks*)`` rows."""
    writer = _writer(stream)
    writer.writerow(["config_index", "H", "ks_critical"])
    for idx, h, ks in rows:
        writer.writerow([idx, format_energy(h, integral), format_float(ks)])


def write_trace_csv(traj, stream):
    """Columns ``t,theta_0,...,theta_{n-1},E``."""
    writer = _writer(stream)
    n = traj.states.shape[1]
    writer.writerow(["t"] + [f"theta_{i}" for i in range(n)] + ["E"])
    for t, theta, energy in zip(traj.times, traj.states, traj.energies):
        writer.writerow(
            [format_float(t)]
            + [format_float(x) for x in theta]
            + [format_float(energy)]
        )


def write_trials_csv(result, stream, integral=True):
    """Columns ``trial,seed,converged,binarized,H,lambda_L,steps``."""
    writer = _writer(stream)
    writer.writerow(
        ["trial", "seed", "converged", "binarized", "H", "lambda_L", "steps"]
    )
    for t in result.trials:
        writer.writerow(
            [
                t.trial,
                t.seed,
                int(t.converged),
                int(t.binarized),
                format_energy(t.h, integral),
                "" if t.final_lambda_l is None else format_float(t.final_lambda_l),
                t.steps,
            ]
        )
