import math

import numpy as np
import pytest

import dyadic_ns as dn


def test_grid_properties():
    g = dn.Grid(2, 32)
    assert (g.dim, g.n, g.k_max) == (2, 32, 10)
    with pytest.raises(ValueError):
        dn.Grid(2, 48)


def test_roundtrip_through_samples():
    g = dn.Grid(2, 16)
    x = 2 * math.pi * np.arange(16) / 16
    samples = np.cos(x)[:, None] * np.ones(16)[None, :]
    f = dn.SpectralField.from_samples(g, samples)
    assert np.allclose(f.physical()[0].real, samples, atol=1e-14)
    assert dn.lebesgue_norm(f, dn.INF) == pytest.approx(1.0, abs=1e-14)
    assert dn.lebesgue_norm(f, 2) == pytest.approx(math.sqrt(0.5), rel=1e-13)


def test_blocks_reconstruct_the_field():
    g = dn.Grid(2, 32)
    f = dn.random_band_field(1, g, 1, 1.0)
    total = dn.lp_low(0, f)
    for j in range(0, g.lp_top + 1):
        total = total + dn.lp_block(j, f)
    assert np.abs(total.coefficients() - f.coefficients()).max() < 1e-13


def test_bony_decomposition_sums_to_product():
    g = dn.Grid(2, 32)
    u = dn.random_band_field(2, g, 1, 2.0)
    v = dn.random_band_field(3, g, 1, 2.0)
    parts = dn.pi1(u, v) + dn.pi2(v, u)
    prod = dn.dealiased_product(u, v)
    assert np.abs(parts.coefficients() - prod.coefficients()).max() < 1e-12
    assert dn.bony_residual(u, v) < 1e-12


def test_taylor_green_solution_decays():
    g = dn.Grid(2, 16)
    cfg = dn.SolverConfig(g, horizon=0.5, steps=8)
    tg = dn.taylor_green_field(g)
    res = dn.picard_solve(tg, cfg)
    assert res.trace.converged
    t_last = cfg.times.nodes[-1]
    ratio = dn.lebesgue_norm(res.solution[len(res.solution) - 1], dn.INF)
    assert ratio == pytest.approx(math.exp(-2 * t_last), rel=1e-12)


def test_large_data_raises_non_contraction():
    g = dn.Grid(2, 16)
    cfg = dn.SolverConfig(g, horizon=2.0, steps=8, max_iter=30)
    u0 = dn.random_band_field(5, g, 2, 3.0, True)
    u0 = u0 * (60.0 / dn.lebesgue_norm(u0, dn.INF))
    with pytest.raises(dn.NonContraction):
        dn.picard_solve(u0, cfg)


def test_field_io(tmp_path):
    g = dn.Grid(3, 16)
    f = dn.random_band_field(7, g, 3, 1.0, True)
    path = tmp_path / "f.dnsf"
    dn.write_field(str(path), f)
    back = dn.read_field(str(path))
    assert np.array_equal(back.coefficients(), f.coefficients())


def test_run_suite_report():
    rep = dn.run_suite("bootstrap")
    assert rep["passed"] is True
    assert rep["suite"] == "bootstrap"
    with pytest.raises(dn.ConfigError):
        dn.run_suite("no_such_suite")
    with pytest.raises(ValueError):
        dn.run_suite("bootstrap", grid=48)
