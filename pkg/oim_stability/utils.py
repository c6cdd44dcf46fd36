# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Helpers for block-parallel sweeps."""

import logging
from concurrent.futures import ProcessPoolExecutor

logger = logging.getLogger(__name__)


def partition(total, block):
    """Split ``range(total)`` into contiguous ``(start, stop)`` blocks."""
    block = max(1, int(block))
    return [(start, min(start + block, total)) for start in range(0, total, block)]


def map_blocks(func, tasks, threads=1):
    """Apply ``func(*task)`` to every task, preserving task order.

    With ``threads > 1`` the tasks run in a process pool. Results are
    always returned in submission order, so merges stay deterministic.
    """
    tasks = list(tasks)
    if threads is None or threads <= 1 or len(tasks) <= 1:
        return [func(*task) for task in tasks]
    workers = min(threads, len(tasks))
    logger.debug("Dispatching %d blocks to %d workers", len(tasks), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(func, *task) for task in tasks]
        return [future.result() for future in futures]
