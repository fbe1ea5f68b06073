"""Linearized SQUID termination of Port 3.

The SQUID enters the line problem only as a frequency- and flux-dependent
boundary condition, which is expressed here as an effective open-stub
length ``l3_eff(omega)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .device import CONSTANTS, BoundaryCondition, DeviceParams, ValidationError
from .numerics import DEFAULT_REL_TOL, Bracket, find_root


# rounding slack on |cos(phi_ex/2)| at the ends of the tuning range
ENDPOINT_SLACK = 1e-9


class UntunableError(ValueError):
    """No external flux puts omega3 at the requested frequency."""

    def __init__(self, target_omega3: float, abs_cos_half: float | None = None):
        msg = f"target untunable: omega3/2pi = {target_omega3 / (2 * math.pi) / 1e9:.6g} GHz"
        if abs_cos_half is not None:
            msg += f" would need |cos(phi_ex/2)| = {abs_cos_half:.6g}"
        super().__init__(msg)
        self.target_omega3 = target_omega3
        self.abs_cos_half = abs_cos_half


@dataclass(frozen=True)
class StubState:
    omega: float
    phi_ex: float
    l3_eff: float
    rhs: float


def josephson_coefficient(dev: DeviceParams) -> float:
    """8 e^2 Z E_s / hbar^2, in rad/s; multiplies |cos(phi_ex/2)|/omega."""
    e, hbar = CONSTANTS.electron_charge, CONSTANTS.reduced_planck
    return 8.0 * e**2 * dev.impedance * dev.es / hbar**2


def termination_rhs(dev: DeviceParams, omega, bc: BoundaryCondition):
    """tan(omega (l3_eff - L3) / v): capacitive minus inductive SQUID load.

    Accepts scalar or array ``omega``.
    """
    omega = np.asarray(omega, dtype=float) if np.ndim(omega) else float(omega)
    return (
        2.0 * dev.impedance * dev.cs * omega
        - josephson_coefficient(dev) * bc.abs_cos_half / omega
    )


def effective_length(dev: DeviceParams, omega: float, bc: BoundaryCondition) -> StubState:
    """Length of an open stub equivalent to the SQUID-terminated Port 3.

    Uses the principal branch of arctan, so ``omega*(l3_eff - L3)/v`` lies
    in (-pi/2, pi/2).
    """
    omega = float(omega)
    if not (math.isfinite(omega) and omega > 0):
        raise ValidationError("omega", "must be positive")
    rhs = termination_rhs(dev, omega, bc)
    l3_eff = dev.l3 + dev.v / omega * math.atan(rhs)
    return StubState(omega, bc.phi_ex, l3_eff, rhs)


def stub_phase(dev: DeviceParams, omega, bc: BoundaryCondition):
    """omega * l3_eff / v, vectorised over ``omega``."""
    return omega * dev.l3 / dev.v + np.arctan(termination_rhs(dev, omega, bc))


def squid_residual(dev: DeviceParams, omega: float, bc: BoundaryCondition) -> float:
    """Relative residual of the SQUID equation of motion at r3 = L3.

    Substitutes cos(omega (r3 - l3_eff)/v) exp(-i omega t) into
    2Cs phi_tt = -(2e/hbar)^2 2Es|cos(phi_ex/2)| phi - (1/Lt) phi_r
    and returns |lhs - rhs| over the largest term.
    """
    e, hbar = CONSTANTS.electron_charge, CONSTANTS.reduced_planck
    state = effective_length(dev, omega, bc)
    x = omega * (dev.l3 - state.l3_eff) / dev.v
    flux = math.cos(x)
    dflux = -(omega / dev.v) * math.sin(x)
    lhs = -2.0 * dev.cs * omega**2 * flux
    inductive = -((2 * e / hbar) ** 2) * 2.0 * dev.es * bc.abs_cos_half * flux
    line = -dflux / dev.ind_per_len
    scale = max(abs(lhs), abs(inductive), abs(line))
    return abs(lhs - inductive - line) / scale


def omega3_bracket(dev: DeviceParams) -> tuple[float, float]:
    """Open interval (0, pi v / L3) shrunk away from both cotangent poles."""
    top = math.pi * dev.v / dev.l3
    delta = 1e-6 * top
    return delta, top - delta


def _omega3_equation(dev: DeviceParams, bc: BoundaryCondition):
    def f(omega: float) -> float:
        return 1.0 / math.tan(omega * dev.l3 / dev.v) - termination_rhs(dev, omega, bc)

    return f


def omega3(dev: DeviceParams, bc: BoundaryCondition, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Lowest frequency whose mode has no amplitude in Port 2.

    Solves cot(omega L3/v) = termination_rhs(omega) on (0, pi v/L3), where
    the left side falls from +inf to -inf and the right side rises, so the
    root is unique.
    """
    f = _omega3_equation(dev, bc)
    lo, hi = omega3_bracket(dev)
    return find_root(f, Bracket.of(f, lo, hi), rel_tol=min(rel_tol, 1e-13))


def abs_cos_for_omega3(dev: DeviceParams, target_omega3: float) -> float:
    """|cos(phi_ex/2)| required for omega3 = target (may fall outside [0, 1])."""
    w = float(target_omega3)
    cot = 1.0 / math.tan(w * dev.l3 / dev.v)
    return (2.0 * dev.impedance * dev.cs * w - cot) * w / josephson_coefficient(dev)


def flux_for_omega3(dev: DeviceParams, target_omega3: float) -> BoundaryCondition:
    """Boundary condition with phi_ex in [0, pi] that tunes omega3 to the target."""
    w = float(target_omega3)
    if not (math.isfinite(w) and 0.0 < w < math.pi * dev.v / dev.l3):
        raise UntunableError(w)
    c = abs_cos_for_omega3(dev, w)
    if not -ENDPOINT_SLACK <= c <= 1.0 + ENDPOINT_SLACK:
        raise UntunableError(w, c)
    return BoundaryCondition(2.0 * math.acos(min(max(c, 0.0), 1.0)))


def is_tunable(dev: DeviceParams, target_omega3: float) -> bool:
    try:
        flux_for_omega3(dev, target_omega3)
    except UntunableError:
        return False
    return True


def tunable_range(dev: DeviceParams) -> tuple[float, float]:
    """(omega3 at phi_ex = pi, omega3 at phi_ex = 0)."""
    return omega3(dev, BoundaryCondition(math.pi)), omega3(dev, BoundaryCondition(0.0))
