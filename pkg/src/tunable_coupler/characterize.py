"""Cavity frequency and linewidth extraction, boundary sweeps, N_crit."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .device import CONSTANTS, BoundaryCondition, DeviceParams, ValidationError
from .modes import _mode_terms
from .numerics import (
    DEFAULT_REL_TOL,
    Bracket,
    GridFunction,
    NumericsError,
    find_root,
    peak_and_halfmax,
)
from .spectroscopy import energy_ratio, lorentzian
from .squid import UntunableError, flux_for_omega3, is_tunable, omega3

# windows narrower than this are treated as exactly decoupled
DECOUPLED_WINDOW = 2 * math.pi * 1e3
WINDOW_PAD = 1e-12
ENERGY_GRID_POINTS = 401
MAX_ZOOM = 60


class DecoupledCavity(NumericsError):
    def __init__(self, detuning: float):
        super().__init__(
            f"decoupled: kappa below numerical floor "
            f"(|omega3 - omega2| = 2pi x {abs(detuning) / (2 * math.pi):.3g} Hz)"
        )
        self.detuning = detuning


class ExtractionMethod(enum.Enum):
    PHASE_SHIFT = "phase_shift"
    ENERGY_LORENTZIAN = "energy_lorentzian"


@dataclass(frozen=True)
class CavityParams:
    omega_c: float
    kappa: float
    method: ExtractionMethod
    window: tuple[float, float]


@dataclass(frozen=True)
class CriticalPhotonResult:
    l3: float
    n_crit: float
    tunable_to_omega2: bool


def search_window(dev: DeviceParams, bc: BoundaryCondition) -> tuple[float, float]:
    """Open interval between omega2 and omega3 holding the resonance."""
    w3 = omega3(dev, bc)
    w2 = dev.omega2
    if abs(w3 - w2) < DECOUPLED_WINDOW:
        raise DecoupledCavity(w3 - w2)
    return (min(w2, w3), max(w2, w3))


def _pad(window: tuple[float, float]) -> tuple[float, float]:
    lo, hi = window
    pad = WINDOW_PAD * (hi - lo)
    return lo + pad, hi - pad


def extract_from_phase(
    dev: DeviceParams, bc: BoundaryCondition, rel_tol: float = DEFAULT_REL_TOL
) -> CavityParams:
    """omega_c where the reflection phase returns to zero; kappa between the +-pi/2 points.

    The zero is sin(a + b) = 0.  tan(theta) = +-1 is solved as
    sin(a + b) -+ cos(a) cos(b) = 0 so no tangent pole is crossed; the
    +-pi/2 points are solved as offsets from omega_c so kappa keeps full
    relative precision even when it is many orders below omega_c.
    """
    window = search_window(dev, bc)
    lo, hi = _pad(window)

    def g(w: float) -> float:
        _, _, _, _, s, _ = _mode_terms(dev, bc, w)
        return float(s)

    omega_c = find_root(g, Bracket.of(g, lo, hi), rel_tol=rel_tol)

    def tan_theta_minus(sign: float) -> Callable[[float], float]:
        def h(u: float) -> float:
            _, _, ca, cb, s, _ = _mode_terms(dev, bc, omega_c + u)
            return float(s - sign * ca * cb)

        return h

    h_plus, h_minus = tan_theta_minus(+1.0), tan_theta_minus(-1.0)
    u_plus = find_root(h_plus, Bracket.of(h_plus, 0.0, hi - omega_c), rel_tol=rel_tol)
    u_minus = find_root(h_minus, Bracket.of(h_minus, lo - omega_c, 0.0), rel_tol=rel_tol)
    return CavityParams(omega_c, u_plus - u_minus, ExtractionMethod.PHASE_SHIFT, window)


def _zoomed_grid(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float) -> GridFunction:
    """Uniform grid on [lo, hi], narrowed around the maximum until it is resolved.

    A sample grid resolves the peak once a neighbour of the best sample lies
    above half maximum.  For a unimodal function the true maximum lies
    between the neighbours of the best sample, so zooming there is safe.
    """
    for _ in range(MAX_ZOOM):
        xs = np.linspace(lo, hi, ENERGY_GRID_POINTS)
        ys = f(xs)
        i = int(np.argmax(ys))
        if i in (0, xs.size - 1):
            break
        if max(ys[i - 1], ys[i + 1]) >= ys[i] / 2:
            break
        lo, hi = xs[i - 1], xs[i + 1]
    return GridFunction(xs, ys)


def extract_from_energy(
    dev: DeviceParams, bc: BoundaryCondition, include_squid: bool = True
) -> CavityParams:
    """omega_c and kappa as the peak position and FWHM of E/P."""
    window = search_window(dev, bc)
    lo, hi = _pad(window)

    def f(w):
        return energy_ratio(dev, bc, w, include_squid=include_squid)

    # the zoomed samples resolve the peak; the coarse window grid guarantees
    # samples below half maximum on both sides
    zoom = _zoomed_grid(f, lo, hi)
    xs = np.union1d(np.linspace(lo, hi, ENERGY_GRID_POINTS), zoom.xs)
    pw = peak_and_halfmax(GridFunction(xs, f(xs)), lambda w: float(f(w)))
    return CavityParams(pw.x_peak, pw.width, ExtractionMethod.ENERGY_LORENTZIAN, window)


def lorentzian_deviation(
    dev: DeviceParams,
    bc: BoundaryCondition,
    params: CavityParams,
    span: float = 2.0,
    n_points: int = 2001,
    include_squid: bool = True,
) -> float:
    """max |E/P - Lorentzian| / (4/kappa) over |omega - omega_c| <= span*kappa.

    Samples are clipped to the search window.
    """
    lo, hi = _pad(params.window)
    w = np.linspace(params.omega_c - span * params.kappa, params.omega_c + span * params.kappa, n_points)
    w = w[(w > lo) & (w < hi)]
    ep = energy_ratio(dev, bc, w, include_squid=include_squid)
    ref = lorentzian(w, params.omega_c, params.kappa)
    return float(np.max(np.abs(ep - ref)) * params.kappa / 4.0)


@dataclass(frozen=True)
class SweepRow:
    omega3: float
    phi_ex: float | None
    phase: CavityParams | None
    energy: CavityParams | None
    status: str = "ok"
    message: str = ""


def sweep_vs_boundary(dev: DeviceParams, omega3_values: Iterable[float]) -> list[SweepRow]:
    """Both extractions for each target omega3; failures are recorded per row."""
    rows = []
    for w3 in omega3_values:
        w3 = float(w3)
        try:
            bc = flux_for_omega3(dev, w3)
        except UntunableError as exc:
            rows.append(SweepRow(w3, None, None, None, "untunable", str(exc)))
            continue
        try:
            phase = extract_from_phase(dev, bc)
            energy = extract_from_energy(dev, bc)
        except DecoupledCavity as exc:
            rows.append(SweepRow(w3, bc.phi_ex, None, None, "decoupled", str(exc)))
            continue
        except NumericsError as exc:
            rows.append(SweepRow(w3, bc.phi_ex, None, None, "failed", str(exc)))
            continue
        rows.append(SweepRow(w3, bc.phi_ex, phase, energy))
    return rows


def photon_number(dev: DeviceParams, phi0: float) -> float:
    """Photons in the localized cavity mode of amplitude phi0 (webers)."""
    return math.pi * (1.0 + dev.l3 / dev.l2) * phi0**2 / (4.0 * CONSTANTS.reduced_planck * dev.impedance)


def linear_flux_limit(dev: DeviceParams) -> float:
    """Largest phi0 keeping the junction flux at hbar/2e, the linearization limit."""
    s = abs(math.sin(math.pi * dev.l3 / (2.0 * dev.l2)))
    if s == 0.0:
        return math.inf
    return CONSTANTS.reduced_planck / (2.0 * CONSTANTS.electron_charge) / s


def critical_photon_number(dev: DeviceParams, l3: float | None = None) -> CriticalPhotonResult:
    """Photon number above which the SQUID nonlinearity shows (order of magnitude)."""
    if l3 is not None:
        if not (math.isfinite(l3) and l3 > 0):
            raise ValidationError("l3", "must be positive")
        dev = dev.with_l3(l3)
    e, hbar = CONSTANTS.electron_charge, CONSTANTS.reduced_planck
    s = math.sin(math.pi * dev.l3 / (2.0 * dev.l2))
    if abs(s) < 1e-12:
        raise ZeroDivisionError(f"divergent N_crit at l3 = {dev.l3!r} m")
    n = math.pi * hbar * (1.0 + dev.l3 / dev.l2) / (16.0 * e**2 * dev.impedance * s**2)
    return CriticalPhotonResult(dev.l3, n, is_tunable(dev, dev.omega2))


def max_tunable_l3(dev: DeviceParams, lo: float, hi: float, tol: float = 1e-9) -> float:
    """Largest L3 in [lo, hi] for which omega3 can still reach omega2 (bisection)."""
    if not is_tunable(dev.with_l3(lo), dev.omega2):
        raise ValidationError("lo", "must be tunable to omega2")
    if is_tunable(dev.with_l3(hi), dev.omega2):
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_tunable(dev.with_l3(mid), dev.omega2):
            lo = mid
        else:
            hi = mid
    return lo
