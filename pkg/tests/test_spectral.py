from __future__ import annotations

import networkx as nx
import numpy as np
import pytest

from walkcent.graph import Graph, GraphError, parse_edge_list
from walkcent.spectral import (SpectralError, default_tol, eig_sym, group_eigenvalues, spectral_data,
                               spectral_radius)
from walkcent.walks import walk_table

from conftest import nx_graph


def check_invariants(sd, g):
    assert np.allclose(sd.C.sum(axis=0), 1, atol=1e-10)
    assert np.all(sd.C >= -1e-14)
    assert np.allclose(sd.C.sum(axis=1), sd.mult, atol=1e-9)
    assert sd.mult.sum() == g.n
    assert np.all(np.diff(sd.mu) > 0)
    assert np.allclose(sd.mu @ sd.C, np.diag(g.adjacency), atol=1e-10)


def test_eig_k2_c4():
    lam, _ = eig_sym(nx_graph(nx.complete_graph(2)))
    assert np.allclose(lam, [-1, 1])
    lam, Q = eig_sym(nx_graph(nx.cycle_graph(4)))
    assert np.allclose(lam, [-2, 0, 0, 2], atol=1e-12)
    assert np.allclose(Q.T @ Q, np.eye(4), atol=1e-12)


def test_eig_empty():
    lam, Q = eig_sym(Graph(np.zeros((3, 3))))
    assert np.all(lam == 0)
    assert np.allclose(Q.T @ Q, np.eye(3))


def test_eig_rejects_general(rotation):
    with pytest.raises(GraphError):
        eig_sym(rotation)


def test_grouping_c4_kn():
    sd = spectral_data(nx_graph(nx.cycle_graph(4)))
    assert sd.d == 3 and list(sd.mult) == [1, 2, 1]
    for n in (3, 5, 8):
        sd = spectral_data(nx_graph(nx.complete_graph(n)))
        assert sd.d == 2 and np.allclose(sd.mu, [-1, n - 1])


def test_eight_columns_equal(eight):
    sd = spectral_data(eight)
    assert np.max(np.abs(sd.C[:, 0] - sd.C[:, 7])) < 1e-10


def test_spectral_radius():
    assert spectral_radius(nx_graph(nx.complete_graph(2))) == pytest.approx(1)
    assert spectral_radius(nx_graph(nx.cycle_graph(4))) == pytest.approx(2)
    assert spectral_radius(nx_graph(nx.star_graph(4))) == pytest.approx(2)


def test_invariants_and_reconstruction(corpus):
    for g in corpus:
        sd = spectral_data(g)
        check_invariants(sd, g)
        assert sd.report.verified
        exact = np.array(walk_table(g).diag, dtype=float)
        approx = sd.reconstruct_walks(g.n - 1)
        assert np.all(np.abs(approx - exact) <= 1e-8 * np.maximum(1, np.abs(exact)))


def test_regroup_idempotent(corpus):
    for g in corpus[:20]:
        sd = spectral_data(g)
        lam2 = np.repeat(sd.mu, sd.mult)
        sd2 = group_eigenvalues(lam2, sd.Q, graph=g)
        assert np.array_equal(sd2.mu, sd.mu)
        assert np.array_equal(sd2.mult, sd.mult)
        assert np.allclose(sd2.C, sd.C)


def test_d_counts():
    assert spectral_data(Graph(np.zeros((4, 4)))).d == 1
    assert spectral_data(nx_graph(nx.path_graph(2))).d >= 2


def test_misgrouping_rejected():
    # a huge tolerance lumps everything together; exact walk counts catch it
    g = nx_graph(nx.petersen_graph())
    lam, Q = eig_sym(g)
    with pytest.raises(SpectralError):
        group_eigenvalues(lam, Q, tol=10.0, graph=g)


def test_default_tol_floor():
    assert default_tol(np.array([-1.0, 1.0])) == 1e-9


def test_weighted_graph_unverified():
    g = parse_edge_list("3\n1 2 0.5\n2 3 1.5\n")
    sd = spectral_data(g)
    assert not sd.report.exact and not sd.report.verified
    check_invariants(sd, g)


def test_bipartite_cancellation_passes():
    # odd powers vanish exactly; the scaled residual must not blow up
    g = nx_graph(nx.hypercube_graph(4))
    sd = spectral_data(g)
    assert sd.report.residual < 1e-10


def test_disconnected_graph_verifies():
    # roundoff from a large component must not fail the check on a tiny one
    rng = np.random.default_rng(60)
    A = np.triu(rng.random((60, 60)) < 0.08, 1)
    g = Graph((A | A.T).astype(float))
    sd = spectral_data(g)
    assert sd.report.verified
