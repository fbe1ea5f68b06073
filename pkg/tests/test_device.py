import dataclasses
import json
import math

import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

import tunable_coupler as tc
from tunable_coupler.device import DEFAULT_DISPLAY, load_config

from oracle_values import ES_5UA


def test_table1_defaults_give_10ghz(dev):
    assert dev.omega2 / (2 * math.pi) == pytest.approx(10e9, rel=1e-12)


def test_doubling_l2_halves_omega2():
    dev = tc.make_device(l2_mm=5.0)
    assert dev.omega2 / (2 * math.pi) == pytest.approx(5e9, rel=1e-12)


def test_per_unit_length_constants(dev):
    assert dev.cap_per_len == pytest.approx(200e-12, rel=1e-12)
    assert dev.ind_per_len == pytest.approx(500e-9, rel=1e-12)
    assert dev.cap_per_len * dev.ind_per_len == pytest.approx(1 / dev.v**2, rel=1e-12)


def test_josephson_energy_matches_high_precision():
    assert tc.josephson_energy_from_critical_current(5e-6) == pytest.approx(ES_5UA, rel=1e-13)


def test_josephson_energy_linear():
    e1 = tc.josephson_energy_from_critical_current(5e-6)
    assert tc.josephson_energy_from_critical_current(10e-6) == pytest.approx(2 * e1, rel=1e-15)


@pytest.mark.parametrize("ic", [0.0, -1e-6, math.nan, math.inf])
def test_josephson_energy_rejects_bad_current(ic):
    with pytest.raises(tc.ValidationError, match="ic"):
        tc.josephson_energy_from_critical_current(ic)


@pytest.mark.parametrize(
    "key, field",
    [("v_m_per_s", "v"), ("impedance_ohm", "impedance"), ("l2_mm", "l2"),
     ("l3_mm", "l3"), ("cs_ff", "cs"), ("ic_ua", "ic")],
)
@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_make_device_names_bad_field(key, field, bad):
    with pytest.raises(tc.ValidationError) as err:
        tc.make_device(**{key: bad})
    assert err.value.field == field


def test_make_device_rejects_unknown_key():
    with pytest.raises(tc.ValidationError, match="l4_mm"):
        tc.make_device({"l4_mm": 1.0})


def test_display_round_trip_is_bit_exact(dev):
    assert dev.to_display() == DEFAULT_DISPLAY


def test_config_overrides_and_fallback(tmp_path):
    path = tmp_path / "dev.json"
    path.write_text(json.dumps({"l3_mm": 4.2, "cs_ff": 80}))
    dev = tc.make_device(load_config(path), cs_ff=90)
    assert dev.l3 == pytest.approx(4.2e-3)
    assert dev.cs == pytest.approx(90e-15)
    assert dev.l2 == 2.5e-3


def test_device_is_immutable(dev):
    with pytest.raises(dataclasses.FrozenInstanceError):
        dev.l3 = 1.0


@given(
    v=st.floats(1e6, 3e8), l2=st.floats(1e-4, 1e-1), z=st.floats(1.0, 500.0),
)
def test_omega2_quarter_wave_condition(v, l2, z):
    dev = tc.DeviceParams(v=v, impedance=z, l2=l2)
    assert dev.omega2 * dev.l2 / dev.v - math.pi / 2 == pytest.approx(0.0, abs=1e-15)
    assert dev.cap_per_len * dev.ind_per_len * v**2 == pytest.approx(1.0, rel=1e-12)


def test_boundary_condition_flux_units():
    bc = tc.BoundaryCondition.from_flux(0.25)
    assert bc.phi_ex == pytest.approx(math.pi / 2)
    assert bc.flux_over_flux_quantum == pytest.approx(0.25)
    assert bc.abs_cos_half == pytest.approx(math.cos(math.pi / 4))


@given(st.floats(-20, 20))
def test_boundary_condition_depends_on_abs_cos_only(phi):
    a = tc.BoundaryCondition(phi)
    for other in (-phi, phi + 2 * math.pi, 2 * math.pi - phi):
        assert tc.BoundaryCondition(other).abs_cos_half == pytest.approx(a.abs_cos_half, abs=1e-12)


def test_boundary_condition_rejects_nan():
    with pytest.raises(tc.ValidationError):
        tc.BoundaryCondition(math.nan)


def test_constants_are_codata():
    assert tc.CONSTANTS.electron_charge == 1.602176634e-19
    assert mp.almosteq(
        mp.mpf(tc.CONSTANTS.reduced_planck), mp.mpf("6.62607015e-34") / (2 * mp.pi), rel_eps=1e-15
    )
