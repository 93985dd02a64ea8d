import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omnisynth.antenna import AntennaPattern
from omnisynth.geometry import SPEED_OF_LIGHT, build_ellipses
from omnisynth.pas import (
    AngularPowerSpectrum,
    SpectrumError,
    azimuth_grid,
    cluster_pas,
    local_scatter_pas,
    received_power,
    total_pas,
    von_mises_pdf,
)
from omnisynth.pdp import ClusterSet

from oracles import i0_series, von_mises_integral, von_mises_reference

GRID = azimuth_grid(3600)
ISO = AntennaPattern.isotropic()


def structure(taus_m, powers, d=100.0, p0=0.0):
    taus = tuple(t / SPEED_OF_LIGHT for t in taus_m)
    return build_ellipses(ClusterSet(taus, tuple(powers), p0), d)


def test_grid_layout():
    g = azimuth_grid(8)
    assert g[0] == -math.pi and g[-1] < math.pi
    np.testing.assert_allclose(np.diff(g), math.pi / 4)
    assert 0.0 in azimuth_grid(3600)


def test_von_mises_uniform_case():
    phi = np.linspace(-math.pi, math.pi, 11)
    np.testing.assert_allclose(von_mises_pdf(phi, 0.0), 1 / (2 * math.pi), rtol=1e-15)
    assert von_mises_pdf(1.0, 0.0) == pytest.approx(0.1591549, abs=1e-7)


def test_von_mises_gamma_2_at_zero():
    assert i0_series(2.0) == pytest.approx(2.279585, abs=1e-6)
    expected = von_mises_reference(0.0, 2.0)
    assert expected == pytest.approx(0.51588, abs=1e-5)
    assert von_mises_pdf(0.0, 2.0) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("gamma", [0.0, 0.3, 1.0, 2.0, 7.5, 20.0, 100.0, 400.0])
def test_von_mises_matches_series_oracle(gamma):
    phi = np.linspace(-math.pi, math.pi, 41)
    ref = np.array([von_mises_reference(p, gamma) for p in phi])
    np.testing.assert_allclose(von_mises_pdf(phi, gamma), ref, rtol=1e-10)


@pytest.mark.parametrize("gamma", [0.0, 1.0, 5.0, 50.0])
def test_von_mises_normalised(gamma):
    assert von_mises_integral(gamma) == pytest.approx(1.0, abs=1e-6)
    assert np.sum(von_mises_pdf(GRID, gamma)) * (2 * math.pi / GRID.size) == pytest.approx(1.0, abs=1e-6)


def test_von_mises_rejects_negative():
    with pytest.raises(SpectrumError):
        von_mises_pdf(0.0, -1.0)


def test_von_mises_large_gamma_finite():
    assert np.isfinite(von_mises_pdf(GRID, 5000.0)).all()


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 200), st.floats(0, math.pi))
def test_von_mises_even_and_peak_grows(gamma, phi):
    assert von_mises_pdf(phi, gamma) == pytest.approx(von_mises_pdf(-phi, gamma), rel=1e-14)
    assert von_mises_pdf(0.0, gamma * 1.1 + 0.01) >= von_mises_pdf(0.0, gamma)


def test_local_scatter_examples():
    assert np.all(local_scatter_pas(0.0, 5.0, GRID).density == 0)
    np.testing.assert_allclose(local_scatter_pas(1.0, 0.0, GRID).density, 1 / (2 * math.pi))
    np.testing.assert_allclose(
        local_scatter_pas(2.0, 3.0, GRID).density, 2.0 * local_scatter_pas(1.0, 3.0, GRID).density, rtol=1e-15
    )
    assert local_scatter_pas(2.0, 3.0, GRID).total_power() == pytest.approx(2.0, rel=1e-9)


def test_cluster_even_division_isotropic():
    s = structure([50.0], [1.0])
    pas = cluster_pas(s, ISO, 360, GRID)
    assert pas.total_power() == pytest.approx(1.0, abs=1e-9)
    nz = pas.density[pas.density > 0] * pas.step
    # Each path carries 1/360; two paths can share a bin.
    assert np.all(np.isclose(nz / (1 / 360), np.round(nz / (1 / 360)), atol=1e-9))


def test_cluster_renormalised_under_narrow_tx_beam():
    s = structure([400.0], [1.0])
    tx = AntennaPattern.sinc(7.8)
    pas = cluster_pas(s, tx, 360, GRID)
    assert pas.total_power() == pytest.approx(1.0, rel=1e-12)
    # Only paths near the far vertex are lit: all power arrives from behind the Rx.
    lit = GRID[pas.density > 0]
    assert np.all(np.abs(lit) > math.pi / 2)


def test_cluster_additivity():
    both = cluster_pas(structure([30.0, 120.0], [0.1, 0.01]), ISO, 360, GRID)
    first = cluster_pas(structure([30.0], [0.1]), ISO, 360, GRID)
    second = cluster_pas(structure([120.0], [0.01]), ISO, 360, GRID)
    assert both.total_power() == pytest.approx(0.11, abs=1e-9)
    np.testing.assert_allclose(both.density, first.density + second.density, rtol=1e-12, atol=1e-15)


def test_cluster_homogeneous_in_power():
    a = cluster_pas(structure([30.0, 120.0], [0.1, 0.01]), AntennaPattern.sinc(20.0), 360, GRID)
    b = cluster_pas(structure([30.0, 120.0], [0.3, 0.03]), AntennaPattern.sinc(20.0), 360, GRID)
    np.testing.assert_allclose(b.density, 3 * a.density, rtol=1e-12)


def test_unlit_cluster_contributes_nothing():
    # A Tx beam aimed backwards at a tiny ellipse: every departure angle is within
    # a few degrees of the axis, far outside a 2 deg beam steered to 90 deg.
    s = structure([0.01], [1.0], d=100.0)
    tx = AntennaPattern.sinc(2.0, boresight_deg=90.0)
    assert cluster_pas(s, tx, 36, GRID).total_power() == 0.0


def test_total_pas():
    c = cluster_pas(structure([30.0], [0.5]), ISO, 360, GRID)
    zero = local_scatter_pas(0.0, 1.0, GRID)
    np.testing.assert_array_equal(total_pas(c, zero).density, c.density)
    assert np.all(total_pas(zero, zero).density == 0)
    loc = local_scatter_pas(0.7, 4.0, GRID)
    assert (c + loc).total_power() == pytest.approx(c.total_power() + loc.total_power(), rel=1e-12)
    with pytest.raises(SpectrumError):
        total_pas(c, local_scatter_pas(1.0, 1.0, azimuth_grid(360)))


def test_received_power_examples():
    uniform = local_scatter_pas(1.0, 0.0, GRID)
    assert received_power(uniform, ISO) == pytest.approx(1.0, rel=1e-12)
    wide = received_power(uniform, AntennaPattern.sinc(90.0))
    assert 0.0 < wide < 1.0

    spike = np.zeros(GRID.size)
    i0 = int(np.argmin(np.abs(GRID)))
    spike[i0] = 2.5 / (2 * math.pi / GRID.size)
    pas = AngularPowerSpectrum(GRID, spike)
    assert received_power(pas, AntennaPattern.sinc(7.8)) == pytest.approx(2.5, rel=1e-12)


def test_negative_density_rejected():
    with pytest.raises(SpectrumError):
        AngularPowerSpectrum(GRID, -np.ones(GRID.size))


cluster_sets = st.lists(
    st.tuples(st.integers(1, 3000), st.floats(1e-4, 10.0)), min_size=0, max_size=8, unique_by=lambda t: t[0]
)


@settings(max_examples=60, deadline=None)
@given(cluster_sets, st.floats(0.0, 5.0), st.floats(0, 200), st.floats(5.0, 500.0), st.floats(2.0, 60.0))
def test_power_conservation_and_filtering(clusters, p0, gamma, d, hpbw):
    if not clusters and p0 == 0:
        p0 = 1.0
    clusters = sorted(clusters)
    s = structure([c[0] * 0.1 for c in clusters], [c[1] for c in clusters], d=d, p0=p0)
    tx = AntennaPattern.sinc(hpbw)
    pas = total_pas(cluster_pas(s, tx, 360, GRID), local_scatter_pas(p0, gamma, GRID))
    total = p0 + sum(c[1] for c in clusters)
    assert received_power(pas, ISO) == pytest.approx(total, rel=1e-6)
    assert received_power(pas, AntennaPattern.sinc(hpbw)) <= received_power(pas, ISO) * (1 + 1e-12)


def test_grid_refinement_default_resolution():
    s = structure([10.0, 40.0, 150.0], [0.5, 0.2, 0.05], d=80.0, p0=1.0)
    tx = rx = AntennaPattern.sinc(7.8)
    powers = []
    for m in (3600, 7200):
        g = azimuth_grid(m)
        pas = total_pas(cluster_pas(s, tx, 360, g), local_scatter_pas(1.0, 20.0, g))
        powers.append(received_power(pas, rx))
    assert abs(powers[1] / powers[0] - 1) < 1e-3
