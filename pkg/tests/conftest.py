# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Pytest configuration.

See https://docs.pytest.org/en/stable/reference/fixtures.html for the
fixture scopes used below.
"""

import pytest

from oim_stability.dynamics import SimConfig
from oim_stability.model import (
    Graph,
    coupling_from_graph,
    dump_graph,
    generate_random_graph,
)

TRIANGLE_FILE = "3 3\n1 2 1\n1 3 1\n2 3 1\n"


@pytest.fixture(scope="module")
def edge_graph():
    """Single unit edge."""
    return Graph(2, ((0, 1, 1.0),))


@pytest.fixture(scope="module")
def triangle_graph():
    """Triangle with unit weights."""
    return Graph(3, ((0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)))


@pytest.fixture(scope="module")
def empty_graph():
    """Two nodes, no edges."""
    return Graph(2, ())


@pytest.fixture(scope="module")
def k4_graph():
    """Complete graph on four nodes."""
    return generate_random_graph(4, 6, seed=3)


@pytest.fixture(scope="module")
def edge(edge_graph):
    """Coupling matrix of the single edge."""
    return coupling_from_graph(edge_graph)


@pytest.fixture(scope="module")
def triangle(triangle_graph):
    """Coupling matrix of the triangle."""
    return coupling_from_graph(triangle_graph)


@pytest.fixture(scope="module")
def empty(empty_graph):
    """Zero coupling matrix on two nodes."""
    return coupling_from_graph(empty_graph)


@pytest.fixture(scope="module")
def k4(k4_graph):
    """Coupling matrix of K4."""
    return coupling_from_graph(k4_graph)


@pytest.fixture(scope="module")
def random_couplings():
    """Seeded random graphs of up to twelve nodes."""
    sizes = [(6, 9, 1), (8, 14, 2), (10, 22, 3), (12, 30, 4)]
    return [coupling_from_graph(generate_random_graph(*size)) for size in sizes]


@pytest.fixture(scope="module")
def fast_sim():
    """Short horizon for noisy runs."""
    return SimConfig(dt=0.01, t_max=50.0)


@pytest.fixture()
def triangle_file(tmp_path):
    """Triangle graph written to disk."""
    path = tmp_path / "triangle.txt"
    path.write_text(TRIANGLE_FILE)
    return str(path)


@pytest.fixture()
def graph_file(tmp_path):
    """Factory writing a graph to disk."""

    def _write(graph, name="graph.txt"):
        path = tmp_path / name
        path.write_text(dump_graph(graph))
        return str(path)

    return _write
