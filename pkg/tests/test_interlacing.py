from __future__ import annotations

import math

import networkx as nx
import numpy as np
import pytest

from walkcent import centrality as cen
from walkcent.graph import degrees
from walkcent.interlacing import (CospectralPairError, DifferenceFunction, InterlacingError,
                                  bisect_root, find_interlacings, interlacing_bounds, make_mesh,
                                  mesh_values, rescaled_residual_ok, sc_difference, sign_changes)
from walkcent.spectral import spectral_data
from walkcent.walks import are_cospectral, walk_table

from conftest import nx_graph, random_corpus

P3 = nx_graph(nx.path_graph(3))


@pytest.mark.parametrize("v, tol, expected", [
    ((1, -1, 1), 0, 2), ((1, 0, 1), 0, 0), ((0, 0, 0), 0, 0), ((1, 1e-12, -1), 1e-10, 1),
    ((-1e-12, 1, 1e-12, 1), 1e-10, 0), ((), 0, 0),
])
def test_sign_changes(v, tol, expected):
    assert sign_changes(v, tol) == expected


def test_sc_difference_matches_series(nine):
    for beta in (0.5, 2.0, 6.0):
        s = cen.sc(nine, beta, method="series")
        assert sc_difference(nine, 1, 7, beta) == pytest.approx(s[1] - s[7], rel=1e-10)
    assert sc_difference(nine, 3, 3, 2.0) == 0.0
    with pytest.raises(ValueError):
        sc_difference(nine, 1, 7, 0.0)


def test_sc_difference_rescaled(nine):
    sd = spectral_data(nine)
    b = np.array([1.0, 50.0, 400.0])
    r = sc_difference(nine, 1, 7, b, rescaled=True, sd=sd)
    assert np.all(np.isfinite(r))
    assert r[0] == pytest.approx(sc_difference(nine, 1, 7, 1.0) * math.exp(-sd.mu_max), rel=1e-12)


def test_nine_two_zeros(nine):
    rep = find_interlacings(nine, 1, 7, "sc", (0, 10), 10_000, 1e-9)
    assert rep.count == 2
    assert rep.values[0] == pytest.approx(2.12, abs=0.05)
    assert rep.values[1] == pytest.approx(4.48, abs=0.05)
    b = rep.bounds
    assert rep.count <= b.sign_change <= b.d_minus_1
    for z in rep.zeros:
        assert z.bracket[1] - z.bracket[0] <= 10 / 10_000 + 1e-12
        assert z.bracket[0] <= z.value <= z.bracket[1]
        assert rescaled_residual_ok(nine, 1, 7, z.value)


def test_nine_bounds(nine):
    b = interlacing_bounds(nine, 1, 7)
    assert b.d_minus_1 >= b.sign_change >= 2
    assert b.n_minus_1 is None
    assert interlacing_bounds(nine, 1, 7, "rc").n_minus_1 == 8
    with pytest.raises(ValueError):
        interlacing_bounds(nine, 1, 7, "katz")


def test_ten_rc_and_sc(ten):
    rc = find_interlacings(ten, 2, 3, "rc")
    assert rc.count == 2
    assert rc.count <= min(rc.bounds.d_minus_1, rc.bounds.n_minus_1, rc.bounds.sign_change)
    sc = find_interlacings(ten, 2, 3, "sc", (0, 30))
    assert sc.count == 2


def test_ten_rc_sign_changes_match_solve(ten):
    # independent check of each RC crossing through the linear-solve path
    rep = find_interlacings(ten, 2, 3, "rc")
    for z in rep.zeros:
        a, b = z.bracket
        da = cen.rc(ten, a, 2) - cen.rc(ten, a, 3)
        db = cen.rc(ten, b, 2) - cen.rc(ten, b, 3)
        assert da * db < 0


def test_p3_no_zeros():
    rep = find_interlacings(P3, 0, 1, "sc")
    assert rep.count == 0 and not rep.tangencies
    x, raw, _ = mesh_values(P3, 0, 1, "sc", (0, 20), 500)
    assert np.all(raw < 0)


def test_cospectral_pairs(eight):
    rep = find_interlacings(eight, 0, 7, "sc")
    assert rep.cospectral and rep.count == 0 and rep.exact_verdict
    assert find_interlacings(eight, 0, 7, "rc").cospectral
    k2 = nx_graph(nx.complete_graph(2))
    with pytest.raises(CospectralPairError):
        interlacing_bounds(k2, 0, 1)
    f = DifferenceFunction(spectral_data(eight), 0, 7)
    assert np.max(np.abs(f(np.linspace(0.1, 20, 50)))) <= 1e-10 * np.exp(20 * 2.6)


def test_cospectral_difference_tiny(eight):
    sd = spectral_data(eight)
    for beta in (0.5, 3.0, 10.0):
        assert abs(sc_difference(eight, 0, 7, beta, sd=sd)) <= 1e-10 * math.exp(beta * sd.rho)


def test_same_vertex_rejected(nine):
    with pytest.raises(ValueError):
        find_interlacings(nine, 2, 2)


def test_rc_interval_validation(nine):
    rho = spectral_data(nine).rho
    with pytest.raises(ValueError):
        find_interlacings(nine, 1, 7, "rc", (0.01, 1 / rho))


def test_katz_tc_scan_without_bounds(nine):
    for m in ("katz", "tc"):
        rep = find_interlacings(nine, 1, 7, m)
        assert rep.bounds is None


def test_mesh_doubling_invariance(nine, ten):
    for g, (i, j), m, iv in ((nine, (1, 7), "sc", (0, 10)), (ten, (2, 3), "rc", None),
                             (ten, (2, 3), "sc", (0, 30))):
        a = find_interlacings(g, i, j, m, iv, 2000)
        b = find_interlacings(g, i, j, m, iv, 4000)
        assert a.count == b.count
        assert np.allclose(a.values, b.values, atol=2e-9)


def test_degree_ec_disagreement_forces_crossing():
    found = 0
    for g in random_corpus(40, 12, seed=17):
        sd = spectral_data(g)
        deg, ev = degrees(g), cen.ec(g, sd)
        t = walk_table(g)
        for i in range(g.n):
            for j in range(g.n):
                if deg[i] > deg[j] and ev[i] < ev[j] - 1e-8 and not are_cospectral(g, i, j, t):
                    rep = find_interlacings(g, i, j, "sc", (0, 50), 2000, sd=sd, table=t)
                    assert rep.count >= 1
                    found += 1
    assert found > 0


def test_bound_invariants_random():
    for g in random_corpus(40, 9, seed=23):
        sd = spectral_data(g)
        t = walk_table(g)
        for i in range(g.n):
            for j in range(i + 1, g.n):
                if are_cospectral(g, i, j, t):
                    continue
                for m in ("sc", "rc"):
                    rep = find_interlacings(g, i, j, m, None, 1000, sd=sd, table=t)
                    b = rep.bounds
                    assert rep.count <= b.sign_change <= b.d_minus_1
                    if m == "rc":
                        assert rep.count <= b.n_minus_1
                    if m == "sc":
                        for z in rep.zeros:
                            assert rescaled_residual_ok(g, i, j, z.value, sd)


def test_rotation_matrix(rotation):
    x = make_mesh((0, 8 * math.pi), 2000)
    d = sc_difference(rotation, 0, 2, x)
    assert np.max(np.abs(d - (np.cos(x) - 1))) <= 1e-10
    rep = find_interlacings(rotation, 0, 2, "sc", (0, 8 * math.pi), 10_000)
    assert rep.count == 0  # touches zero without changing sign
    ts = [t.value for t in rep.tangencies]
    assert len(ts) == 4
    assert np.allclose(ts, 2 * math.pi * np.arange(1, 5), atol=1e-6)
    assert not rep.exact_verdict or not rep.cospectral


def test_make_mesh():
    x = make_mesh((0, 1), 4)
    assert x.tolist() == [0.25, 0.5, 0.75, 1.0]
    assert make_mesh((1, 2), 3).tolist() == [1.0, 1.5, 2.0]
    with pytest.raises(ValueError):
        make_mesh((1, 1), 10)


def test_bisect_root():
    r = bisect_root(math.cos, 1.0, 2.0, 1e-12)
    assert r == pytest.approx(math.pi / 2, abs=1e-12)


def test_bound_violation_is_fatal(nine, monkeypatch):
    from walkcent import interlacing as il

    monkeypatch.setattr(il, "_bounds", lambda f: il.Bounds(f.sd.d - 1, 1, None))
    with pytest.raises(InterlacingError):
        find_interlacings(nine, 1, 7, "sc", (0, 10))
