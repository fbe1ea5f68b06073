"""Reflection phase and stored energy seen from the semi-infinite port."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .device import CONSTANTS, BoundaryCondition, DeviceParams, ValidationError
from .modes import DEGENERATE_D, _mode_terms, mode_arrays
from .squid import termination_rhs

MIN_SPECTRUM_POINTS = 16
POLE_GUARD = 1e-9
NUDGE_FRACTION = 1e-6


def _positive_omega(omega):
    arr = np.asarray(omega, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise ValidationError("omega", "must be positive")
    return arr


def _scalar_or_array(x, like):
    return float(x) if np.ndim(like) == 0 else x


def phase_shift(dev: DeviceParams, bc: BoundaryCondition, omega):
    """Phase 2*theta acquired on reflection, in (-2pi, 2pi]."""
    w = _positive_omega(omega)
    theta, _, _ = mode_arrays(dev, bc, w)
    phase = np.where(theta == -math.pi, 2 * math.pi, 2.0 * theta)
    return _scalar_or_array(phase, omega)


def continuous_phase(dev: DeviceParams, bc: BoundaryCondition, omega):
    """Reflection phase 2*theta followed continuously from omega -> 0.

    tan(theta) = tan(a) + tan(b) jumps from +inf to -inf whenever a or b
    crosses an odd multiple of pi/2, and theta rises by pi between such
    poles.  Counting the poles below omega (a and b both increase with
    omega, b from above -pi/2) gives

        theta = pi * N(omega) + arctan(tan a + tan b),

    exact on any grid, however narrow the resonance.
    """
    w = _positive_omega(omega)
    a, b, ca, cb, s, _ = _mode_terms(dev, bc, w)
    poles = np.floor(a / math.pi + 0.5) + np.floor(b / math.pi + 0.5)
    with np.errstate(divide="ignore"):
        principal = np.arctan(s / (ca * cb))
    return _scalar_or_array(2.0 * (math.pi * poles + principal), omega)


def junction_energy_ratio(dev: DeviceParams, bc: BoundaryCondition, omega):
    """Energy held by the SQUID itself, over the input power (seconds).

    Capacitive part 2Cs omega^2 |phi|^2/2 plus linearized Josephson part
    (2e/hbar)^2 2Es|cos(phi_ex/2)| |phi|^2/2, with phi the flux at r3 = L3.
    """
    w = _positive_omega(omega)
    e, hbar = CONSTANTS.electron_charge, CONSTANTS.reduced_planck
    _, r3 = mode_arrays(dev, bc, w)[1:]
    rhs = termination_rhs(dev, w, bc)
    flux_sq = r3**2 / (1.0 + rhs**2)  # (alpha3 cos(omega (L3 - l3_eff)/v))^2
    stiffness = dev.cs + 4.0 * e**2 * dev.es * bc.abs_cos_half / (hbar**2 * w**2)
    return _scalar_or_array(4.0 * dev.impedance * stiffness * flux_sq, omega)


def energy_ratio(dev: DeviceParams, bc: BoundaryCondition, omega, include_squid: bool = True):
    """Cavity energy normalized by the input power, E/P in seconds.

    The line part integrates the field energy over the physical lengths
    of Ports 2 and 3: (2/v) (ratio2^2 L2 + ratio3^2 L3).  With
    ``include_squid`` (default) the energy stored in the SQUID is added;
    only then does the peak value equal 4/kappa, as the Lorentzian
    lineshape requires.
    """
    w = _positive_omega(omega)
    _, r2, r3 = mode_arrays(dev, bc, w)
    out = 2.0 / dev.v * (r2**2 * dev.l2 + r3**2 * dev.l3)
    if include_squid:
        out = out + junction_energy_ratio(dev, bc, w)
    return _scalar_or_array(out, omega)


def lorentzian(omega, omega_c: float, kappa: float):
    """kappa / ((omega - omega_c)^2 + kappa^2/4); peak value 4/kappa."""
    if not kappa > 0:
        raise ValidationError("kappa", "must be positive")
    w = np.asarray(omega, dtype=float)
    return _scalar_or_array(kappa / ((w - omega_c) ** 2 + kappa**2 / 4.0), omega)


@dataclass(frozen=True)
class Spectrum:
    omega_grid: np.ndarray
    phase_shift: np.ndarray
    phase_unwrapped: np.ndarray
    e_over_p: np.ndarray

    @property
    def frequency(self) -> np.ndarray:
        """Ordinary frequency omega/2pi, Hz."""
        return self.omega_grid / (2 * math.pi)


def _nudge_poles(dev: DeviceParams, bc: BoundaryCondition, omega: np.ndarray, step: float):
    _, _, ca, cb, _, d = _mode_terms(dev, bc, omega)
    bad = (np.abs(ca) < POLE_GUARD) | (np.abs(cb) < POLE_GUARD) | (d < DEGENERATE_D)
    if np.any(bad):
        omega = omega.copy()
        omega[bad] += NUDGE_FRACTION * step
    return omega


def compute_spectrum(
    dev: DeviceParams,
    bc: BoundaryCondition,
    f_min: float,
    f_max: float,
    n_points: int = 2001,
    include_squid: bool = True,
) -> Spectrum:
    """Phase shift and E/P on a uniform grid of ordinary frequencies (Hz)."""
    if not (math.isfinite(f_min) and f_min > 0):
        raise ValidationError("f_min", "must be positive")
    if not (math.isfinite(f_max) and f_max > f_min):
        raise ValidationError("f_max", "must exceed f_min")
    if int(n_points) != n_points or n_points < MIN_SPECTRUM_POINTS:
        raise ValidationError("n_points", f"must be an integer >= {MIN_SPECTRUM_POINTS}")
    omega = 2 * math.pi * np.linspace(f_min, f_max, int(n_points))
    omega = _nudge_poles(dev, bc, omega, omega[1] - omega[0])
    phase = phase_shift(dev, bc, omega)
    unwrapped = continuous_phase(dev, bc, omega)
    ep = energy_ratio(dev, bc, omega, include_squid=include_squid)
    return Spectrum(omega, phase, unwrapped, ep)
