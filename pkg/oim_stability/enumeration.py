# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Exhaustive sweeps over spin configurations.

Spin ``s_0`` is fixed to ``+1``; configuration index ``idx`` in
``[0, 2^(n-1))`` sets ``s_(b+1) = -1`` exactly when bit ``b`` of ``idx`` is
set. Every sweep visits the ``2^(n-1)`` mirror classes once.

Energies are produced by a Gray-code walk: the lowest ``block_bits`` index
bits are enumerated as a vectorized batch of rows, and the remaining bits
follow the reflected binary Gray code, so each step flips one spin and
updates all rows of the batch through the spin-flip identity
``H(flip(s, k)) - H(s) = 2 s_k h_k``.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .config import (
    OIM_BLOCK_BITS,
    OIM_ENERGY_RESOLUTION,
    OIM_ENUMERATION_MAX_NODES,
    OIM_VERIFY_MAX_NODES,
)
from .errors import EnumerationLimitError, ParameterError
from .model import as_spins, ising_energy
from .utils import map_blocks, partition

logger = logging.getLogger(__name__)

GRAY_STEPS_PER_TASK = 256


def check_enumerable(n, limit=OIM_ENUMERATION_MAX_NODES):
    """Refuse exhaustive work above ``limit`` nodes."""
    if n > limit:
        raise EnumerationLimitError(
            f"Exhaustive sweep limited to n <= {limit} nodes, graph has {n}."
        )


def config_count(n):
    """Number of mirror classes, ``2^(n-1)``."""
    return 1 << (n - 1)


def index_to_config(idx, n):
    """Decode a configuration index into a spin vector with ``s_0 = +1``."""
    if not 0 <= idx < config_count(n):
        raise ParameterError(
            f"Configuration index {idx} out of range for {n} nodes."
        )
    bits = (int(idx) >> np.arange(n - 1)) & 1
    return np.concatenate(([1], 1 - 2 * bits)).astype(np.int8)


def config_to_index(s):
    """Encode a spin vector, canonicalizing the mirror image to ``s_0 = +1``."""
    spins = as_spins(s)
    if spins[0] < 0:
        spins = -spins
    bits = (spins[1:] < 0).astype(np.int64)
    return int(np.sum(bits << np.arange(bits.size, dtype=np.int64)))


def decode_indices(indices, n):
    """Decode a batch of indices into an int8 spin matrix, one row each."""
    indices = np.asarray(indices, dtype=np.int64)
    spins = np.ones((indices.size, n), dtype=np.int8)
    bits = (indices[:, None] >> np.arange(n - 1, dtype=np.int64)) & 1
    spins[:, 1:] = 1 - 2 * bits
    return spins


def batch_energies(w, spins):
    """Direct Ising energies of every row of ``spins``."""
    x = np.asarray(spins, dtype=float)
    return -0.5 * np.einsum("bi,bi->b", x, x @ w)


def bin_energies(h, integral, resolution=OIM_ENERGY_RESOLUTION):
    """Map energies to histogram keys.

    Integer-weighted graphs bin by exact value; other graphs bin to
    ``resolution``.
    """
    h = np.asarray(h, dtype=float)
    if integral:
        return np.round(h) + 0.0
    return np.round(h / resolution) * resolution + 0.0


def _gray(t):
    return t ^ (t >> 1)


def _low_bits(n, block_bits):
    return min(n - 1, block_bits)


def gray_walk(w, t_start, t_stop, low_bits):
    """Yield ``(indices, energies)`` along the Gray-code walk.

    ``w`` is the dense coupling array. Steps ``t_start .. t_stop - 1`` of the
    walk over the high index bits are visited; the first step is seeded by
    a direct evaluation and every later step flips a single high spin.
    """
    n = w.shape[0]
    high_bits = n - 1 - low_bits
    low = np.arange(1 << low_bits, dtype=np.int64)
    spins = np.ones((low.size, n))
    spins[:, 1 : 1 + low_bits] = 1 - 2 * (
        (low[:, None] >> np.arange(low_bits, dtype=np.int64)) & 1
    )
    g = _gray(t_start)
    spins[:, 1 + low_bits :] = 1 - 2 * ((g >> np.arange(high_bits)) & 1)
    fields = spins @ w
    energies = -0.5 * np.einsum("bi,bi->b", spins, fields)
    neighbors = [np.flatnonzero(w[k]) for k in range(n)]
    yield low + (g << low_bits), energies.copy()
    for t in range(t_start + 1, t_stop):
        bit = (t & -t).bit_length() - 1
        k = 1 + low_bits + bit
        sk = spins[0, k]
        energies += 2.0 * sk * fields[:, k]
        nb = neighbors[k]
        fields[:, nb] -= 2.0 * sk * w[k, nb]
        spins[:, k] = -sk
        g ^= 1 << bit
        yield low + (g << low_bits), energies.copy()


def _walk_tasks(n, block_bits):
    low_bits = _low_bits(n, block_bits)
    steps = 1 << (n - 1 - low_bits)
    return low_bits, partition(steps, GRAY_STEPS_PER_TASK)


@dataclass(frozen=True)
class EnergyHistogram:
    """Energy histogram of a landscape, keyed by binned energy."""

    bins: dict
    full_count: bool = False
    integral: bool = True

    def total(self):
        """Number of configurations counted."""
        return sum(self.bins.values())

    def min_energy(self):
        """Lowest energy present."""
        return min(self.bins)

    def items(self):
        """``(H, count)`` pairs in ascending ``H``."""
        return sorted(self.bins.items())


def _histogram_block(w, low_bits, t_start, t_stop, integral, resolution):
    counts = Counter()
    for _, energies in gray_walk(w, t_start, t_stop, low_bits):
        keys, c = np.unique(
            bin_energies(energies, integral, resolution), return_counts=True
        )
        for key, count in zip(keys.tolist(), c.tolist()):
            counts[key] += count
    return counts


def enumerate_energies(
    w,
    full_count=False,
    threads=1,
    block_bits=OIM_BLOCK_BITS,
    limit=OIM_ENUMERATION_MAX_NODES,
    resolution=OIM_ENERGY_RESOLUTION,
):
    """Histogram of the Ising energy over all configurations.

    With ``full_count`` every count is doubled to include mirror images.
    """
    check_enumerable(w.n, limit)
    integral = w.is_integral
    low_bits, blocks = _walk_tasks(w.n, block_bits)
    logger.info(
        "Enumerating %d configurations of %d nodes", config_count(w.n), w.n
    )
    partials = map_blocks(
        _histogram_block,
        [
            (w.w, low_bits, start, stop, integral, resolution)
            for start, stop in blocks
        ],
        threads,
    )
    counts = Counter()
    for partial in partials:
        counts.update(partial)
    factor = 2 if full_count else 1
    bins = {h: factor * c for h, c in sorted(counts.items())}
    return EnergyHistogram(bins, full_count=full_count, integral=integral)


@dataclass(frozen=True)
class GroundStates:
    """Minimum energy, its minimizers and their full count."""

    min_h: float
    configs: list
    total: int
    indices: list = field(default_factory=list)

    @property
    def n_classes(self):
        """Number of mirror classes at the minimum."""
        return self.total // 2


def _ground_block(w, low_bits, t_start, t_stop, integral, cap, resolution):
    best = np.inf
    count = 0
    found = np.empty(0, dtype=np.int64)
    for indices, energies in gray_walk(w, t_start, t_stop, low_bits):
        keys = bin_energies(energies, integral, resolution)
        low = keys.min()
        if low > best:
            continue
        if low < best:
            best, count, found = low, 0, np.empty(0, dtype=np.int64)
        hits = indices[keys == best]
        count += hits.size
        found = np.sort(np.concatenate((found, hits)))
        if cap is not None:
            found = found[:cap]
    return float(best), count, found


def ground_states(
    w,
    cap=None,
    threads=1,
    block_bits=OIM_BLOCK_BITS,
    limit=OIM_ENUMERATION_MAX_NODES,
    resolution=OIM_ENERGY_RESOLUTION,
):
    """Exact ground states of ``w``.

    ``total`` counts minimizers including mirror images; ``configs`` lists up
    to ``cap`` representatives with ``s_0 = +1`` in ascending index order
    (all of them when ``cap`` is ``None``).
    """
    check_enumerable(w.n, limit)
    integral = w.is_integral
    low_bits, blocks = _walk_tasks(w.n, block_bits)
    partials = map_blocks(
        _ground_block,
        [
            (w.w, low_bits, start, stop, integral, cap, resolution)
            for start, stop in blocks
        ],
        threads,
    )
    best = min(p[0] for p in partials)
    count = sum(p[1] for p in partials if p[0] == best)
    found = np.sort(np.concatenate([p[2] for p in partials if p[0] == best]))
    if cap is not None:
        found = found[:cap]
    indices = [int(i) for i in found]
    return GroundStates(
        min_h=best,
        configs=[index_to_config(i, w.n) for i in indices],
        total=2 * count,
        indices=indices,
    )


def verify_enumeration(w, limit=OIM_VERIFY_MAX_NODES, low_bits=0):
    """Compare Gray-code energies with a naive recomputation of every config.

    With the default ``low_bits=0`` only index 0 is evaluated directly and
    every other configuration comes from a single-spin-flip update.
    """
    check_enumerable(w.n, limit)
    low_bits = _low_bits(w.n, low_bits)
    steps = 1 << (w.n - 1 - low_bits)
    incremental = np.empty(config_count(w.n))
    visited = np.zeros(config_count(w.n), dtype=bool)
    for indices, energies in gray_walk(w.w, 0, steps, low_bits):
        incremental[indices] = energies
        visited[indices] = True
    if not visited.all():
        logger.warning("Gray-code walk skipped %d configs", (~visited).sum())
        return False
    naive = np.array(
        [ising_energy(w, index_to_config(i, w.n)) for i in range(config_count(w.n))]
    )
    if w.is_integral:
        agree = np.array_equal(incremental, naive)
    else:
        agree = np.allclose(incremental, naive, rtol=0.0, atol=1e-9)
    if not agree:
        worst = int(np.argmax(np.abs(incremental - naive)))
        logger.warning(
            "Incremental energy mismatch at config %d: %r != %r",
            worst,
            incremental[worst],
            naive[worst],
        )
    return bool(agree)
