import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import tunable_coupler as tc
from tunable_coupler.modes import DecoupledError, NotDecoupledError, mode_function

GHZ = 2 * math.pi * 1e9


def check_invariants(sol, tol=1e-10):
    ca, cb = math.cos(sol.a), math.cos(sol.b)
    sa, sb = math.sin(sol.a), math.sin(sol.b)
    # voltage continuity and current conservation at the branch (alpha1 = 1)
    assert math.cos(sol.theta) == pytest.approx(sol.ratio2 * ca, abs=tol)
    assert math.cos(sol.theta) == pytest.approx(sol.ratio3 * cb, abs=tol)
    assert math.sin(sol.theta) == pytest.approx(sol.ratio2 * sa + sol.ratio3 * sb, abs=tol)
    if abs(ca) > 1e-3 and abs(cb) > 1e-3 and abs(math.cos(sol.theta)) > 1e-3:
        lhs = math.tan(sol.theta)
        assert lhs == pytest.approx(math.tan(sol.a) + math.tan(sol.b), rel=1e-10, abs=1e-10)
    assert -math.pi < sol.theta <= math.pi


def test_low_frequency_limit(dev):
    sol = tc.solve_mode(dev, tc.BoundaryCondition(math.pi), 1e3)
    assert sol.theta == pytest.approx(0.0, abs=1e-6)
    assert sol.ratio2 == pytest.approx(1.0, abs=1e-6)
    assert sol.ratio3 == pytest.approx(1.0, abs=1e-6)


def test_at_omega2_with_detuned_stub(dev, bc_for):
    bc = bc_for(9.6)
    sol = tc.solve_mode(dev, bc, dev.omega2)
    b = sol.b
    # a = pi/2: D = sin^2(pi/2 + b) = cos^2 b, ratio2 = cos b / |cos b|
    assert abs(sol.ratio2) == pytest.approx(1 / abs(math.sin(math.pi / 2 + b)) * abs(math.cos(b)), rel=1e-12)
    assert abs(sol.ratio2) == pytest.approx(1.0, rel=1e-12)
    assert math.isfinite(sol.ratio3)
    check_invariants(sol)


def test_linear_system_oracle(dev, bc_for):
    bc = bc_for(9.9)
    sol = tc.solve_mode(dev, bc, 9.95 * GHZ)
    check_invariants(sol)
    ca, cb = math.cos(sol.a), math.cos(sol.b)
    sa, sb = math.sin(sol.a), math.sin(sol.b)
    # solve  ratio2 cos a - ratio3 cos b = 0,  ratio2 sin a + ratio3 sin b = sin theta
    m = np.array([[ca, -cb], [sa, sb]])
    r2, r3 = np.linalg.solve(m, [0.0, math.sin(sol.theta)])
    assert sol.ratio2 == pytest.approx(r2, rel=1e-10)
    assert sol.ratio3 == pytest.approx(r3, rel=1e-10)


@settings(max_examples=1000, deadline=None)
@given(st.floats(0.5e9, 20e9), st.floats(0, 2 * math.pi))
def test_branch_invariants_random(f, phi):
    dev = tc.make_device()
    check_invariants(tc.solve_mode(dev, tc.BoundaryCondition(phi), 2 * math.pi * f))


@settings(max_examples=200)
@given(st.floats(0.5e9, 20e9), st.floats(0, 2 * math.pi))
def test_pole_free_equals_textbook(f, phi):
    dev = tc.make_device()
    sol = tc.solve_mode(dev, tc.BoundaryCondition(phi), 2 * math.pi * f)
    ca, cb = math.cos(sol.a), math.cos(sol.b)
    if abs(ca) > 0.1 and abs(cb) > 0.1:
        assert sol.ratio2 == pytest.approx(math.cos(sol.theta) / ca, rel=1e-9)
        assert sol.ratio3 == pytest.approx(math.cos(sol.theta) / cb, rel=1e-9)


def test_port_profiles_satisfy_branch_conditions(dev, bc_for):
    sol = tc.solve_mode(dev, bc_for(9.9), 9.93 * GHZ)
    vals = [mode_function(sol, dev, p, 0.0) for p in (1, 2, 3)]
    assert vals[0] == pytest.approx(vals[1], abs=1e-10)
    assert vals[0] == pytest.approx(vals[2], abs=1e-10)
    h = 1e-9
    slope = sum(
        (mode_function(sol, dev, p, h) - mode_function(sol, dev, p, -h)) / (2 * h) for p in (1, 2, 3)
    )
    scale = sol.omega / dev.v * max(1, abs(sol.ratio2), abs(sol.ratio3))
    assert abs(slope) / scale < 1e-6


def test_decoupling_limit_ratios_diverge(dev):
    ratios = []
    for f3 in (9.9, 9.99, 9.999, 9.9999):
        bc = tc.flux_for_omega3(dev, f3 * GHZ)
        ratios.append(abs(tc.solve_mode(dev, bc, dev.omega2 * (1 - 1e-13)).ratio3))
    assert all(b > 5 * a for a, b in zip(ratios, ratios[1:]))


def test_exact_degeneracy_raises():
    # L3 = L2 and no SQUID load: a = b everywhere, so D = 0 at a = pi/2
    dev = tc.DeviceParams(l3=2.5e-3, cs=1e-30, ic=1e-30)
    bc = tc.BoundaryCondition(math.pi)
    with pytest.raises(DecoupledError):
        tc.solve_mode(dev, bc, dev.omega2)


def test_cavity_mode_profile(dev):
    bc = tc.flux_for_omega3(dev, dev.omega2)
    cav = tc.cavity_mode(dev, bc, tol=2 * math.pi * 1e3, phi0=2.0)
    assert cav.omega == dev.omega2
    assert cav.profile(2, 0.0, dev.v) == 0.0
    assert cav.profile(3, 0.0, dev.v) == 0.0
    assert cav.profile(2, dev.l2, dev.v) == pytest.approx(-2.0, rel=1e-15)
    np.testing.assert_array_equal(cav.profile(1, np.linspace(0, 1, 5), dev.v), 0.0)


def test_cavity_mode_not_decoupled(dev, bc_for):
    with pytest.raises(NotDecoupledError) as err:
        tc.cavity_mode(dev, bc_for(9.9), tol=2 * math.pi * 1e6)
    assert err.value.detuning / GHZ == pytest.approx(-0.1, rel=1e-6)


def test_solve_mode_rejects_nonpositive(dev):
    with pytest.raises(tc.ValidationError):
        tc.solve_mode(dev, tc.BoundaryCondition(), 0.0)
