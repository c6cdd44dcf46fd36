# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Ising and oscillator Ising machine model objects.

Conventions used throughout the package:

* the Ising energy sums over unordered pairs,
  ``H = -sum_{i<j} w[i][j] s_i s_j``;
* the Lyapunov energy keeps the ordered double sum, so that a binarized
  phase state satisfies ``E = 2 K H - n K_s``;
* phase differences are ``theta_i - theta_j``, which makes the phase velocity
  exactly ``-1/2`` times the gradient of ``E``.
"""

import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    GraphFormatError,
    GraphValidationError,
    InputError,
    ParameterError,
)

PRNG_NAME = "numpy.random.PCG64"


def _frozen(array):
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph with 0-indexed nodes."""

    n: int
    edges: tuple = ()

    def __post_init__(self):
        """Validate node range, self-loops and duplicates."""
        if self.n < 1:
            raise GraphValidationError(f"Node count must be >= 1, got {self.n}.")
        seen = set()
        normalized = []
        for u, v, w in self.edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphValidationError(
                    f"Edge ({u + 1}, {v + 1}) out of range for {self.n} nodes."
                )
            if u == v:
                raise GraphValidationError(f"Self-loop on node {u + 1}.")
            if not math.isfinite(w):
                raise GraphValidationError(
                    f"Edge ({u + 1}, {v + 1}) has non-finite weight."
                )
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphValidationError(
                    f"Duplicate edge ({key[0] + 1}, {key[1] + 1})."
                )
            seen.add(key)
            normalized.append((u, v, w))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self):
        """Number of edges."""
        return len(self.edges)

    @property
    def total_weight(self):
        """Sum of all edge weights."""
        return sum(w for _, _, w in self.edges)

    @property
    def is_integral(self):
        """Whether every edge weight is an integer."""
        return all(float(w).is_integer() for _, _, w in self.edges)

    @property
    def density(self):
        """Edge count relative to the complete graph."""
        pairs = self.n * (self.n - 1) // 2
        return self.m / pairs if pairs else 0.0


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    """Dense symmetric coupling matrix with zero diagonal."""

    w: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        """Validate shape, symmetry and diagonal."""
        w = np.array(self.w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise DimensionMismatchError(
                f"Coupling matrix must be square, got shape {w.shape}."
            )
        if not np.all(np.isfinite(w)):
            raise ParameterError("Coupling matrix has non-finite entries.")
        if not np.array_equal(w, w.T):
            raise ParameterError("Coupling matrix must be symmetric.")
        if np.any(np.diag(w) != 0.0):
            raise ParameterError("Coupling matrix must have a zero diagonal.")
        object.__setattr__(self, "w", _frozen(w))
        object.__setattr__(self, "n", w.shape[0])

    @property
    def is_integral(self):
        """Whether every coupling is an integer."""
        return bool(np.all(self.w == np.round(self.w)))


@dataclass(frozen=True)
class OimParams:
    """Coupling strength ``k``, injection strength ``ks`` and noise ``kn``."""

    k: float = 1.0
    ks: float = 0.0
    kn: float = 0.0

    def __post_init__(self):
        """Validate ranges."""
        for name in ("k", "ks", "kn"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value}.")
        if self.k <= 0:
            raise ParameterError(f"k must be > 0, got {self.k}.")
        if self.ks < 0:
            raise ParameterError(f"ks must be >= 0, got {self.ks}.")
        if self.kn < 0:
            raise ParameterError(f"kn must be >= 0, got {self.kn}.")


def as_spins(s, n=None):
    """Return ``s`` as an int8 spin vector, validating entries and length."""
    spins = np.asarray(s)
    if spins.ndim != 1:
        raise DimensionMismatchError("Spin configuration must be a vector.")
    if n is not None and spins.shape[0] != n:
        raise DimensionMismatchError(
            f"Spin configuration has length {spins.shape[0]}, expected {n}."
        )
    if not np.all((spins == 1) | (spins == -1)):
        raise ParameterError("Spins must be exactly +1 or -1.")
    return spins.astype(np.int8)


def as_phases(th, n=None):
    """Return ``th`` as a float phase vector, validating length."""
    theta = np.asarray(th, dtype=float)
    if theta.ndim != 1:
        raise DimensionMismatchError("Phase state must be a vector.")
    if n is not None and theta.shape[0] != n:
        raise DimensionMismatchError(
            f"Phase state has length {theta.shape[0]}, expected {n}."
        )
    if not np.all(np.isfinite(theta)):
        raise ParameterError("Phase state has non-finite entries.")
    return theta


def flip(s, k):
    """Return a copy of ``s`` with spin ``k`` reversed."""
    spins = as_spins(s).copy()
    spins[k] = -spins[k]
    return spins


def spins_to_phases(s):
    """Map spins to the binarized phases ``0`` (+1) and ``pi`` (-1)."""
    return np.where(as_spins(s) > 0, 0.0, np.pi)


def load_graph(text):
    """Parse a graph from a character stream or string.

    The first non-comment line holds ``n m``; ``m`` edge lines ``u v [w]``
    with 1-indexed nodes follow. Lines starting with ``#`` are ignored.
    """
    if isinstance(text, str):
        text = io.StringIO(text)
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise GraphFormatError("expected header 'n m'", line=lineno)
            try:
                header = (int(fields[0]), int(fields[1]))
            except ValueError:
                raise GraphFormatError("header fields must be integers", lineno)
            if header[0] < 1 or header[1] < 0:
                raise GraphFormatError("invalid node or edge count", lineno)
            continue
        if len(fields) not in (2, 3):
            raise GraphFormatError("expected 'u v [w]'", line=lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
            w = float(fields[2]) if len(fields) == 3 else 1.0
        except ValueError:
            raise GraphFormatError(f"cannot parse edge '{line}'", line=lineno)
        if len(edges) == header[1]:
            raise GraphFormatError(
                f"more than the {header[1]} declared edges", line=lineno
            )
        if not (1 <= u <= header[0] and 1 <= v <= header[0]):
            raise GraphFormatError(
                f"node index out of range 1..{header[0]}", line=lineno
            )
        if u == v:
            raise GraphFormatError(f"self-loop on node {u}", line=lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(
                f"duplicate edge ({key[0]}, {key[1]})", line=lineno
            )
        seen.add(key)
        edges.append((u - 1, v - 1, w))
    if header is None:
        raise GraphFormatError("missing header 'n m'")
    if len(edges) != header[1]:
        raise GraphFormatError(
            f"header declares {header[1]} edges, found {len(edges)}"
        )
    try:
        return Graph(header[0], tuple(edges))
    except GraphValidationError as e:
        raise GraphFormatError(str(e))


def read_graph(path):
    """Load a graph file."""
    try:
        with open(path, "r", encoding="ascii") as f:
            return load_graph(f)
    except UnicodeDecodeError as e:
        raise GraphFormatError(f"{path} is not an ASCII graph file: {e}")
    except OSError as e:
        raise InputError(f"Cannot read graph {path}: {e}")


def _format_weight(w):
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def write_graph(g, stream):
    """Write ``g`` in the 1-indexed edge-list format read by ``load_graph``."""
    stream.write(f"{g.n} {g.m}\n")
    for u, v, w in g.edges:
        stream.write(f"{u + 1} {v + 1} {_format_weight(w)}\n")


def dump_graph(g):
    """Serialize ``g`` to a string."""
    buf = io.StringIO()
    write_graph(g, buf)
    return buf.getvalue()


def generate_random_graph(n, m, seed):
    """Sample ``m`` distinct unit-weight edges on ``n`` nodes.

    Pairs are drawn from a PCG64 stream and rejected when they form a
    self-loop or repeat an earlier pair, until ``m`` pairs are accepted.
    """
    if n < 1:
        raise ParameterError(f"Node count must be >= 1, got {n}.")
    max_edges = n * (n - 1) // 2
    if not 0 <= m <= max_edges:
        raise ParameterError(
            f"Edge count {m} outside 0..{max_edges} for {n} nodes."
        )
    rng = np.random.Generator(np.random.PCG64(seed))
    seen = set()
    edges = []
    while len(edges) < m:
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        edges.append((key[0], key[1], 1.0))
    return Graph(n, tuple(sorted(edges)))


def coupling_from_graph(g):
    """Antiferromagnetic coupling matrix: ``w[u][v] = -weight``."""
    w = np.zeros((g.n, g.n))
    for u, v, weight in g.edges:
        w[u, v] = w[v, u] = -weight
    return CouplingMatrix(w)


def _check_dim(w, length, what):
    if length != w.n:
        raise DimensionMismatchError(
            f"{what} has length {length}, coupling matrix is {w.n}x{w.n}."
        )


def ising_energy(w, s):
    """Ising energy over unordered pairs, ``-sum_{i<j} w_ij s_i s_j``."""
    spins = as_spins(s)
    _check_dim(w, spins.shape[0], "Spin configuration")
    x = spins.astype(float)
    return float(-0.5 * (x @ w.w @ x))


def cut_size(g, s):
    """Total weight of edges whose endpoints carry opposite spins."""
    spins = as_spins(s, g.n)
    return sum(weight for u, v, weight in g.edges if spins[u] != spins[v])


def maxcut_from_energy(g, h):
    """Cut value ``(sum W - H) / 2`` of a configuration with energy ``h``."""
    return (g.total_weight - h) / 2.0


def local_field(w, s, i):
    """Field ``sum_j w[i][j] s_j`` acting on spin ``i``."""
    spins = as_spins(s)
    _check_dim(w, spins.shape[0], "Spin configuration")
    if not 0 <= i < w.n:
        raise ParameterError(f"Node index {i} out of range 0..{w.n - 1}.")
    return float(w.w[i] @ spins.astype(float))


def lyapunov_energy(w, p, th):
    """Lyapunov energy of a phase state.

    ``E = -K sum_{i != j} w_ij cos(th_i - th_j) - K_s sum_i cos(2 th_i)``
    with the ordered double sum.
    """
    theta = as_phases(th)
    _check_dim(w, theta.shape[0], "Phase state")
    c, s = np.cos(theta), np.sin(theta)
    coupling = c @ w.w @ c + s @ w.w @ s
    return float(-p.k * coupling - p.ks * np.sum(np.cos(2.0 * theta)))


def phase_velocity(w, p, th):
    """Right-hand side of the phase dynamics.

    ``f_i = -K sum_j w_ij sin(th_i - th_j) - K_s sin(2 th_i)``.
    """
    theta = as_phases(th)
    _check_dim(w, theta.shape[0], "Phase state")
    return _velocity(w.w, p.k, p.ks, theta)


def _velocity(w, k, ks, theta):
    # sin(a - b) = sin a cos b - cos a sin b
    c, s = np.cos(theta), np.sin(theta)
    coupling = s * (w @ c) - c * (w @ s)
    return -k * coupling - ks * np.sin(2.0 * theta)
