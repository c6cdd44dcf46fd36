# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Graph, coupling and energy tests."""

import math

import numpy as np
import pytest

from oim_stability.enumeration import config_count, index_to_config
from oim_stability.errors import (
    DimensionMismatchError,
    GraphFormatError,
    GraphValidationError,
    InputError,
    ParameterError,
)
from oim_stability.model import (
    CouplingMatrix,
    Graph,
    OimParams,
    as_spins,
    coupling_from_graph,
    cut_size,
    dump_graph,
    flip,
    generate_random_graph,
    ising_energy,
    load_graph,
    local_field,
    lyapunov_energy,
    maxcut_from_energy,
    phase_velocity,
    read_graph,
    spins_to_phases,
)


def test_load_triangle():
    g = load_graph("3 3\n1 2 1\n1 3 1\n2 3 1")
    assert g.n == 3
    assert g.edges == ((0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0))


def test_load_default_weight_and_comments():
    g = load_graph("# single edge\n2 1\n\n1 2\n")
    assert g.edges == ((0, 1, 1.0),)
    assert g.is_integral


def test_load_real_weights():
    g = load_graph("3 2\n1 2 0.5\n2 3 -1.5\n")
    assert g.edges == ((0, 1, 0.5), (1, 2, -1.5))
    assert not g.is_integral
    assert g.total_weight == pytest.approx(-1.0)


@pytest.mark.parametrize(
    "text,line,message",
    [
        ("2 1\n1 1 1", 2, "self-loop"),
        ("3 2\n1 2\n2 1\n", 3, "duplicate"),
        ("2 1\n1 3\n", 2, "out of range"),
        ("2 1\n1 x\n", 2, "cannot parse"),
        ("2\n1 2\n", 1, "header"),
        ("2 1\n1 2\n1 2 3 4\n", 3, "expected"),
    ],
)
def test_load_errors_carry_line_numbers(text, line, message):
    with pytest.raises(GraphFormatError) as e:
        load_graph(text)
    assert e.value.line == line
    assert message in str(e.value)
    assert str(e.value).startswith(f"line {line}:")


def test_load_edge_count_mismatch():
    with pytest.raises(GraphFormatError, match="declares 3 edges, found 1"):
        load_graph("3 3\n1 2\n")
    with pytest.raises(GraphFormatError, match="missing header"):
        load_graph("# nothing here\n")


def test_read_graph(tmp_path, triangle_graph):
    path = tmp_path / "g.txt"
    path.write_text(dump_graph(triangle_graph))
    assert read_graph(str(path)) == triangle_graph
    with pytest.raises(InputError):
        read_graph(str(tmp_path / "missing.txt"))
    binary = tmp_path / "binary.txt"
    binary.write_bytes(b"\xff\xfe2 1\n")
    with pytest.raises(GraphFormatError):
        read_graph(str(binary))


def test_dump_graph_format():
    g = Graph(3, ((0, 1, 1.0), (1, 2, 0.25)))
    assert dump_graph(g) == "3 2\n1 2 1\n2 3 0.25\n"
    assert load_graph(dump_graph(g)) == g


def test_graph_validation():
    with pytest.raises(GraphValidationError):
        Graph(0)
    with pytest.raises(GraphValidationError, match="Self-loop"):
        Graph(2, ((1, 1, 1.0),))
    with pytest.raises(GraphValidationError, match="Duplicate"):
        Graph(3, ((0, 1, 1.0), (1, 0, 2.0)))
    with pytest.raises(GraphValidationError, match="non-finite"):
        Graph(2, ((0, 1, math.inf),))


def test_graph_properties(k4_graph, empty_graph):
    assert k4_graph.m == 6
    assert k4_graph.density == 1.0
    assert empty_graph.density == 0.0
    assert Graph(1).density == 0.0


def test_generate_random_graph():
    g = generate_random_graph(20, 152, seed=7)
    assert g.n == 20
    assert g.m == 152
    pairs = {(u, v) for u, v, _ in g.edges}
    assert len(pairs) == 152
    assert all(u < v for u, v in pairs)
    assert all(w == 1.0 for _, _, w in g.edges)
    assert generate_random_graph(20, 152, seed=7) == g
    assert generate_random_graph(20, 152, seed=8) != g


def test_generate_saturated_and_invalid():
    k4 = generate_random_graph(4, 6, seed=123)
    assert {(u, v) for u, v, _ in k4.edges} == {
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 2),
        (1, 3),
        (2, 3),
    }
    with pytest.raises(ParameterError, match="outside 0..3"):
        generate_random_graph(3, 4, seed=0)
    with pytest.raises(ParameterError):
        generate_random_graph(0, 0, seed=0)


def test_coupling_from_graph(edge, triangle, empty):
    np.testing.assert_array_equal(edge.w, [[0, -1], [-1, 0]])
    np.testing.assert_array_equal(triangle.w, -(np.ones((3, 3)) - np.eye(3)))
    np.testing.assert_array_equal(empty.w, np.zeros((2, 2)))
    assert edge.n == 2
    assert triangle.is_integral
    with pytest.raises(ValueError):
        triangle.w[0, 1] = 5.0


def test_coupling_validation():
    with pytest.raises(DimensionMismatchError):
        CouplingMatrix(np.zeros((2, 3)))
    with pytest.raises(ParameterError, match="symmetric"):
        CouplingMatrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ParameterError, match="diagonal"):
        CouplingMatrix(np.eye(2))
    with pytest.raises(ParameterError, match="non-finite"):
        CouplingMatrix(np.array([[0.0, np.nan], [np.nan, 0.0]]))


def test_params_validation():
    assert OimParams() == OimParams(k=1.0, ks=0.0, kn=0.0)
    with pytest.raises(ParameterError):
        OimParams(k=0.0)
    with pytest.raises(ParameterError):
        OimParams(ks=-0.1)
    with pytest.raises(ParameterError):
        OimParams(kn=-1e-3)
    with pytest.raises(ParameterError):
        OimParams(ks=math.nan)


def test_spin_helpers():
    assert as_spins([1, -1, 1]).dtype == np.int8
    with pytest.raises(ParameterError):
        as_spins([1, 0])
    with pytest.raises(DimensionMismatchError):
        as_spins([1, -1], n=3)
    s = np.array([1, 1, -1])
    np.testing.assert_array_equal(flip(s, 1), [1, -1, -1])
    np.testing.assert_array_equal(s, [1, 1, -1])
    np.testing.assert_array_equal(spins_to_phases([1, -1]), [0.0, math.pi])


@pytest.mark.parametrize(
    "spins,expected",
    [((1, 1, 1), 3.0), ((1, 1, -1), -1.0), ((-1, 1, -1), -1.0)],
)
def test_triangle_energy(triangle, spins, expected):
    assert ising_energy(triangle, spins) == expected


def test_edge_energy(edge):
    assert ising_energy(edge, (1, -1)) == -1.0
    assert ising_energy(edge, (1, 1)) == 1.0
    with pytest.raises(DimensionMismatchError):
        ising_energy(edge, (1, 1, 1))


def test_maxcut_relation(triangle_graph):
    g = generate_random_graph(20, 152, seed=7)
    assert maxcut_from_energy(g, -28) == 90
    assert maxcut_from_energy(triangle_graph, -1) == 2
    assert maxcut_from_energy(g, g.total_weight) == 0


def test_cut_identity():
    g = generate_random_graph(9, 17, seed=5)
    w = coupling_from_graph(g)
    for idx in range(config_count(g.n)):
        s = index_to_config(idx, g.n)
        assert cut_size(g, s) == maxcut_from_energy(g, ising_energy(w, s))


def test_local_field(triangle, edge, empty):
    assert local_field(triangle, (1, 1, 1), 2) == -2.0
    assert local_field(edge, (1, -1), 0) == 1.0
    assert local_field(empty, (1, -1), 1) == 0.0
    with pytest.raises(ParameterError):
        local_field(edge, (1, -1), 2)


@pytest.mark.parametrize(
    "theta,expected",
    [((0.0, math.pi), -4.0), ((0.0, 0.0), 0.0), ((0.0, math.pi / 2), 0.0)],
)
def test_lyapunov_energy(edge, theta, expected):
    assert lyapunov_energy(edge, OimParams(k=1.0, ks=1.0), theta) == pytest.approx(
        expected, abs=1e-12
    )


def test_binarization_identity(random_couplings):
    p = OimParams(k=0.7, ks=1.3)
    for w in random_couplings:
        for idx in (0, 1, config_count(w.n) - 1):
            s = index_to_config(idx, w.n)
            expected = 2 * p.k * ising_energy(w, s) - w.n * p.ks
            assert lyapunov_energy(w, p, spins_to_phases(s)) == pytest.approx(
                expected, rel=1e-12, abs=1e-12
            )


def test_phase_velocity(edge, triangle):
    p = OimParams(k=1.0, ks=1.0)
    np.testing.assert_allclose(
        phase_velocity(edge, p, (0.0, math.pi / 2)), [-1.0, 1.0], atol=1e-12
    )
    for s in ((1, 1, -1), (1, -1, 1), (1, 1, 1)):
        np.testing.assert_allclose(
            phase_velocity(triangle, p, spins_to_phases(s)), 0.0, atol=1e-12
        )
    with pytest.raises(DimensionMismatchError):
        phase_velocity(edge, p, (0.0,))


def test_phase_velocity_is_half_negative_gradient(random_couplings):
    rng = np.random.Generator(np.random.PCG64(11))
    p = OimParams(k=1.0, ks=0.4)
    h = 1e-5
    w = random_couplings[0]
    for _ in range(10):
        theta = rng.uniform(0, 2 * math.pi, size=w.n)
        grad = np.array(
            [
                (
                    lyapunov_energy(w, p, theta + h * np.eye(w.n)[i])
                    - lyapunov_energy(w, p, theta - h * np.eye(w.n)[i])
                )
                / (2 * h)
                for i in range(w.n)
            ]
        )
        f = phase_velocity(w, p, theta)
        assert np.max(np.abs(f + 0.5 * grad)) <= 1e-6 * max(1.0, np.max(np.abs(f)))
