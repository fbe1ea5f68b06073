"""Continuum eigenmodes of the semi-infinite line with two finite stubs.

Port 1 (semi-infinite) carries alpha1 cos(omega r/v + theta), Port 2 carries
alpha2 cos(omega (r - L2)/v) and Port 3 alpha3 cos(omega (r - l3_eff)/v).
With a = omega L2/v and b = omega l3_eff/v the branch conditions give
tan(theta) = tan(a) + tan(b).  Everything here is written in the pole-free
form

    theta  = atan2(sin(a + b), cos(a) cos(b))
    ratio2 = cos(b) / sqrt(D),  ratio3 = cos(a) / sqrt(D),
    D      = cos(a)^2 cos(b)^2 + sin(a + b)^2,

which fixes alpha1 > 0 and stays finite across the tangent poles at
a = pi/2 or b = pi/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .device import BoundaryCondition, DeviceParams, ValidationError
from .squid import omega3, stub_phase


# D below this is an exact decoupling to machine precision
DEGENERATE_D = 1e-28


class DecoupledError(ArithmeticError):
    """The cavity is exactly decoupled from Port 1 at this frequency."""


class NotDecoupledError(ValueError):
    def __init__(self, detuning: float):
        super().__init__(
            f"not decoupled: omega3 - omega2 = 2pi x {detuning / (2 * math.pi) / 1e9:.6g} GHz"
        )
        self.detuning = detuning


@dataclass(frozen=True)
class ModeSolution:
    omega: float
    theta: float
    ratio2: float
    ratio3: float
    l3_eff: float
    a: float
    b: float


def _mode_terms(dev: DeviceParams, bc: BoundaryCondition, omega):
    omega = np.asarray(omega, dtype=float)
    a = omega * dev.l2 / dev.v
    b = stub_phase(dev, omega, bc)
    ca, cb = np.cos(a), np.cos(b)
    s = np.sin(a + b)
    d = (ca * cb) ** 2 + s**2
    return a, b, ca, cb, s, d


def mode_arrays(dev: DeviceParams, bc: BoundaryCondition, omega):
    """Vectorised (theta, ratio2, ratio3) over an array of frequencies.

    Raises :class:`DecoupledError` if any sample sits on the exactly
    decoupled point, D below DEGENERATE_D.
    """
    a, b, ca, cb, s, d = _mode_terms(dev, bc, omega)
    if np.any(d < DEGENERATE_D):
        raise DecoupledError(
            "exactly decoupled cavity (D ~ 0); use cavity_mode for the localized mode"
        )
    root_d = np.sqrt(d)
    return np.arctan2(s, ca * cb), cb / root_d, ca / root_d


def solve_mode(dev: DeviceParams, bc: BoundaryCondition, omega: float) -> ModeSolution:
    omega = float(omega)
    if not (math.isfinite(omega) and omega > 0):
        raise ValidationError("omega", "must be positive")
    theta, r2, r3 = mode_arrays(dev, bc, omega)
    a = omega * dev.l2 / dev.v
    b = float(stub_phase(dev, omega, bc))
    return ModeSolution(
        omega=omega,
        theta=float(theta),
        ratio2=float(r2),
        ratio3=float(r3),
        l3_eff=b * dev.v / omega,
        a=a,
        b=b,
    )


def mode_function(sol: ModeSolution, dev: DeviceParams, port: int, r, alpha1: float = 1.0):
    """Flux profile of a continuum mode on one port, ``r`` measured from the branch."""
    r = np.asarray(r, dtype=float)
    k = sol.omega / dev.v
    if port == 1:
        return alpha1 * np.cos(k * r + sol.theta)
    if port == 2:
        return alpha1 * sol.ratio2 * np.cos(k * (r - dev.l2))
    if port == 3:
        return alpha1 * sol.ratio3 * np.cos(k * (r - sol.l3_eff))
    raise ValueError(f"port must be 1, 2 or 3, got {port!r}")


@dataclass(frozen=True)
class CavityMode:
    """Lowest mode localized in Ports 2 and 3, with its node at the branch."""

    omega: float
    phi0: float = 1.0
    node_position: float = 0.0

    def profile(self, port: int, r, v: float):
        r = np.asarray(r, dtype=float)
        if port == 1:
            return np.zeros_like(r)
        if port == 2:
            return -self.phi0 * np.sin(self.omega * r / v)
        if port == 3:
            return self.phi0 * np.sin(self.omega * r / v)
        raise ValueError(f"port must be 1, 2 or 3, got {port!r}")


def cavity_mode(
    dev: DeviceParams, bc: BoundaryCondition, tol: float, phi0: float = 1.0
) -> CavityMode:
    """The exactly localized cavity mode, available only when omega3 = omega2."""
    detuning = omega3(dev, bc) - dev.omega2
    if abs(detuning) > tol:
        raise NotDecoupledError(detuning)
    return CavityMode(omega=dev.omega2, phi0=phi0)
