# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""JSON run reports.

A campaign directory holds ``trials.csv``, ``report.json`` with the
reproducible metadata and aggregates, and ``run.json`` with the wall-clock
details of the execution that produced it.
"""

import json
import logging
import os

from ..errors import ReportError
from .tables import write_trials_csv

logger = logging.getLogger(__name__)

TRIALS_FILE = "trials.csv"
REPORT_FILE = "report.json"
RUN_FILE = "run.json"


def _dump(data, path):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")


def campaign_report(result, metadata):
    """Aggregates of a campaign together with its metadata."""
    return {
        "metadata": metadata.reproducible(),
        "n_trials": result.n_trials,
        "n_nonbinarized": result.n_nonbinarized,
        "success_rate": result.success_rate,
        "reference_h": result.reference_h,
        "histogram": [{"H": h, "count": c} for h, c in result.histogram.items()],
    }


def write_report(result, path, metadata, integral=True):
    """Write ``trials.csv``, ``report.json`` and ``run.json`` into ``path``."""
    try:
        os.makedirs(path, exist_ok=True)
        with open(os.path.join(path, TRIALS_FILE), "w", newline="") as f:
            write_trials_csv(result, f, integral)
        _dump(campaign_report(result, metadata), os.path.join(path, REPORT_FILE))
        _dump(metadata.run_info(), os.path.join(path, RUN_FILE))
    except OSError as e:
        raise ReportError(f"Cannot write report to {path}: {e}")
    logger.info("Report written to %s", path)
    return [os.path.join(path, name) for name in (TRIALS_FILE, REPORT_FILE, RUN_FILE)]


def read_report(path):
    """Read ``report.json`` back; the histogram is returned as ``{H: count}``."""
    filename = path
    if os.path.isdir(path):
        filename = os.path.join(path, REPORT_FILE)
    try:
        with open(filename, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, ValueError) as e:
        raise ReportError(f"Cannot read report {filename}: {e}")
    data["histogram"] = {item["H"]: item["count"] for item in data["histogram"]}
    return data

