import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import tunable_coupler as tc
from tunable_coupler.spectroscopy import continuous_phase, junction_energy_ratio

from oracle_values import PHASE_SCAN

GHZ = 2 * math.pi * 1e9


def test_phase_low_frequency_limit(dev):
    # no Josephson term: open-ended stubs, theta -> 0
    assert tc.phase_shift(dev, tc.BoundaryCondition(math.pi), 1e3) == pytest.approx(0.0, abs=1e-6)


def test_phase_low_frequency_inductive_short(dev, bc_for):
    # the SQUID inductance shorts Port 3 as omega -> 0: theta -> -pi/2
    assert tc.phase_shift(dev, bc_for(9.9), 1e3) == pytest.approx(-math.pi, abs=1e-6)


def test_phase_zero_mod_2pi_at_omega_c(dev, bc_for):
    wc, _ = PHASE_SCAN[9.9]
    p = tc.phase_shift(dev, bc_for(9.9), wc)
    assert min(abs(p), abs(abs(p) - 2 * math.pi)) < 1e-4


def test_phase_range_and_vectorisation(dev, bc_for):
    w = np.linspace(1, 20, 500) * GHZ
    p = tc.phase_shift(dev, bc_for(9.6), w)
    assert p.shape == w.shape
    assert np.all((p > -2 * math.pi) & (p <= 2 * math.pi))
    np.testing.assert_allclose(p[::50], [tc.phase_shift(dev, bc_for(9.6), x) for x in w[::50]])


def test_phase_rises_by_2pi_through_resonance(dev, bc_for):
    spec = tc.compute_spectrum(dev, bc_for(9.9), 9.8e9, 10.1e9, 20001)
    rise = spec.phase_unwrapped[-1] - spec.phase_unwrapped[0]
    assert rise == pytest.approx(2 * math.pi, abs=0.1)
    assert np.all(np.diff(spec.phase_unwrapped) > -1e-9)


def test_energy_far_off_resonance(dev, bc_for):
    ep = tc.energy_ratio(dev, bc_for(9.9), 5 * GHZ)
    scale = 2 / dev.v * (dev.l2 + dev.l3)
    assert 0.1 * scale < ep < 10 * scale


def test_energy_peak_is_4_over_kappa(dev, bc_for):
    wc, kappa = PHASE_SCAN[9.9]
    assert kappa * tc.energy_ratio(dev, bc_for(9.9), wc) == pytest.approx(4.0, rel=0.01)


def test_line_only_energy_misses_the_squid_share(dev, bc_for):
    # literal line integral: peak falls ~10% short of 4/kappa
    wc, kappa = PHASE_SCAN[9.9]
    bc = bc_for(9.9)
    line = tc.energy_ratio(dev, bc, wc, include_squid=False)
    assert 3.5 < kappa * line < 3.7
    assert line + junction_energy_ratio(dev, bc, wc) == pytest.approx(tc.energy_ratio(dev, bc, wc), rel=1e-14)


def test_junction_energy_matches_group_delay(dev, bc_for):
    # d(omega l3_eff/v)/d omega - L3/v equals the junction share per unit ratio3^2 * 2/v
    bc = bc_for(9.6)
    w = 9.7 * GHZ
    h = w * 1e-6
    phase = lambda x: x * tc.effective_length(dev, x, bc).l3_eff / dev.v
    delay = (phase(w + h) - phase(w - h)) / (2 * h) - dev.l3 / dev.v
    r3 = tc.solve_mode(dev, bc, w).ratio3
    assert junction_energy_ratio(dev, bc, w) == pytest.approx(2 * r3**2 * delay, rel=1e-6)


@given(st.floats(0.5e9, 20e9), st.floats(0, 2 * math.pi))
def test_energy_positive(f, phi):
    dev = tc.make_device()
    assert tc.energy_ratio(dev, tc.BoundaryCondition(phi), 2 * math.pi * f) > 0


def test_lorentzian_closed_forms():
    wc, k = 6e10, 3e6
    assert tc.lorentzian(wc, wc, k) == pytest.approx(4 / k)
    assert tc.lorentzian(wc + k / 2, wc, k) == pytest.approx(2 / k)
    assert tc.lorentzian(wc - k / 2, wc, k) == pytest.approx(2 / k)
    assert tc.lorentzian(wc + 10 * k, wc, k) == pytest.approx(1 / (100.25 * k))


@pytest.mark.parametrize("k", [0.0, -1.0])
def test_lorentzian_rejects_bad_kappa(k):
    with pytest.raises(tc.ValidationError):
        tc.lorentzian(1.0, 1.0, k)


def test_continuous_phase_matches_dense_unwrap(dev, bc_for):
    bc = bc_for(9.9)
    w = np.linspace(1e6, 12e9, 400001) * 2 * math.pi
    raw = tc.phase_shift(dev, bc, w)
    dense = tc.numerics.unwrap_phase(tc.numerics.GridFunction(w, raw)).ys
    cont = continuous_phase(dev, bc, w)
    np.testing.assert_allclose(cont - cont[0], dense - dense[0], atol=1e-9)
    k = (cont - raw) / (2 * math.pi)
    np.testing.assert_allclose(k, np.round(k), atol=1e-9)


def test_continuous_phase_rises_2pi_across_window(dev, bc_for):
    bc = bc_for(9.9)
    lo, hi = 9.9 * GHZ, dev.omega2
    rise = continuous_phase(dev, bc, hi * (1 - 1e-12)) - continuous_phase(dev, bc, lo * (1 + 1e-12))
    assert rise == pytest.approx(2 * math.pi, abs=1e-3)


def test_spectrum_9p9ghz_single_resonance(dev, bc_for):
    spec = tc.compute_spectrum(dev, bc_for(9.9), 9.0e9, 11.0e9, 2001)
    assert spec.omega_grid.size == 2001
    f = spec.frequency
    i = int(np.argmax(spec.e_over_p))
    assert 9.9e9 < f[i] < 10.0e9
    # single local maximum of E/P
    d = np.sign(np.diff(spec.e_over_p))
    assert np.count_nonzero((d[:-1] > 0) & (d[1:] < 0)) == 1
    # the 2pi step sits between 9.9 and 10 GHz on top of a slow background
    f9, f10 = np.searchsorted(f, [9.9e9, 10.0e9])
    assert spec.phase_unwrapped[f10] - spec.phase_unwrapped[f9] == pytest.approx(2 * math.pi, abs=0.1)
    rise = spec.phase_unwrapped[-1] - spec.phase_unwrapped[0]
    assert 2 * math.pi < rise < 2 * math.pi + 1.0
    k = (spec.phase_unwrapped - spec.phase_shift) / (2 * math.pi)
    np.testing.assert_allclose(k, np.round(k), atol=1e-9)
    assert np.all(spec.e_over_p > 0)


def test_larger_detuning_gives_broader_lower_peak(dev, bc_for):
    red = tc.compute_spectrum(dev, bc_for(9.9), 9.0e9, 11.0e9, 4001)
    blue = tc.compute_spectrum(dev, bc_for(9.6), 9.0e9, 11.0e9, 4001)

    def fwhm(s):
        y = s.e_over_p
        above = np.nonzero(y >= y.max() / 2)[0]
        return s.frequency[above[-1]] - s.frequency[above[0]]

    assert blue.frequency[np.argmax(blue.e_over_p)] < red.frequency[np.argmax(red.e_over_p)]
    assert fwhm(blue) > fwhm(red)


def test_spectrum_rejects_few_points(dev, bc_for):
    with pytest.raises(tc.ValidationError, match="n_points"):
        tc.compute_spectrum(dev, bc_for(9.9), 9e9, 11e9, 8)


def test_spectrum_rejects_bad_range(dev, bc_for):
    with pytest.raises(tc.ValidationError):
        tc.compute_spectrum(dev, bc_for(9.9), 11e9, 9e9, 100)


def test_spectrum_nudges_sample_on_pole(dev, bc_for):
    # omega2 lands exactly on a grid point; tan(a) has a pole there
    spec = tc.compute_spectrum(dev, bc_for(9.9), 9.0e9, 11.0e9, 21)
    assert np.all(np.isfinite(spec.e_over_p))
    assert spec.omega_grid[10] != 2 * math.pi * 10e9 or abs(math.cos(spec.omega_grid[10] * dev.l2 / dev.v)) >= 1e-9


def test_spectrum_deterministic(dev, bc_for):
    a = tc.compute_spectrum(dev, bc_for(9.6), 9e9, 11e9, 500)
    b = tc.compute_spectrum(dev, bc_for(9.6), 9e9, 11e9, 500)
    np.testing.assert_array_equal(a.e_over_p, b.e_over_p)
