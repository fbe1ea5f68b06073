"""Device parameters for the three-port waveguide with a SQUID-terminated stub.

All quantities are SI internally (m, s, rad/s, F, A, J, ohm).  Display
units (GHz, mm, fF, uA) appear only in :func:`make_device` and
:meth:`DeviceParams.to_display`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

import scipy.constants as const


class ValidationError(ValueError):
    """Raised when an input parameter is outside its allowed domain."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name} {message}")
        self.field = field_name


@dataclass(frozen=True)
class PhysicalConstants:
    electron_charge: float = const.e
    reduced_planck: float = const.hbar


CONSTANTS = PhysicalConstants()

# key -> (DeviceParams field, display-to-SI divisor)
CONFIG_KEYS: dict[str, tuple[str, float]] = {
    "v_m_per_s": ("v", 1.0),
    "impedance_ohm": ("impedance", 1.0),
    "l2_mm": ("l2", 1e3),
    "l3_mm": ("l3", 1e3),
    "cs_ff": ("cs", 1e15),
    "ic_ua": ("ic", 1e6),
}

DEFAULT_DISPLAY: dict[str, float] = {
    "v_m_per_s": 1e8,
    "impedance_ohm": 50.0,
    "l2_mm": 2.5,
    "l3_mm": 4.5,
    "cs_ff": 100.0,
    "ic_ua": 5.0,
}


def _check_positive(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ValidationError(name, f"must be a number, got {value!r}") from None
    if not math.isfinite(value):
        raise ValidationError(name, "must be finite")
    if value <= 0.0:
        raise ValidationError(name, "must be positive")
    return value


def josephson_energy_from_critical_current(ic: float) -> float:
    """Josephson energy hbar*I_c/(2e) of a single junction, in joules."""
    ic = _check_positive("ic", ic)
    return CONSTANTS.reduced_planck * ic / (2.0 * CONSTANTS.electron_charge)


@dataclass(frozen=True)
class DeviceParams:
    """Physical configuration of the coupler (SI units).

    ``ic`` is the critical current of one of the two identical junctions
    forming the SQUID; the per-junction Josephson energy is derived from it.
    """

    v: float = 1e8
    impedance: float = 50.0
    l2: float = 2.5e-3
    l3: float = 4.5e-3
    cs: float = 100e-15
    ic: float = 5e-6

    def __post_init__(self):
        for name in ("v", "impedance", "l2", "l3", "cs", "ic"):
            object.__setattr__(self, name, _check_positive(name, getattr(self, name)))

    @property
    def es(self) -> float:
        """Josephson energy of one junction, J."""
        return josephson_energy_from_critical_current(self.ic)

    @property
    def cap_per_len(self) -> float:
        """Capacitance per unit length 1/(vZ), F/m."""
        return 1.0 / (self.v * self.impedance)

    @property
    def ind_per_len(self) -> float:
        """Inductance per unit length Z/v, H/m."""
        return self.impedance / self.v

    @property
    def omega2(self) -> float:
        """Lowest mode with a node at the branch and no Port-3 amplitude."""
        return math.pi * self.v / (2.0 * self.l2)

    def with_l3(self, l3: float) -> DeviceParams:
        return replace(self, l3=l3)

    def to_display(self) -> dict[str, float]:
        """Parameters in the display units used by config files and the CLI."""
        out = {}
        for key, (name, scale) in CONFIG_KEYS.items():
            out[key] = getattr(self, name) * scale
        return out


@dataclass(frozen=True)
class BoundaryCondition:
    """External flux through the SQUID loop, as a phase in units of hbar/2e.

    Everything downstream depends on ``phi_ex`` only through
    ``abs(cos(phi_ex / 2))``.
    """

    phi_ex: float = 0.0
    abs_cos_half: float = field(init=False, repr=False)

    def __post_init__(self):
        phi = float(self.phi_ex)
        if not math.isfinite(phi):
            raise ValidationError("phi_ex", "must be finite")
        object.__setattr__(self, "phi_ex", phi)
        object.__setattr__(self, "abs_cos_half", abs(math.cos(phi / 2.0)))

    @classmethod
    def from_flux(cls, flux_over_flux_quantum: float) -> BoundaryCondition:
        return cls(2.0 * math.pi * flux_over_flux_quantum)

    @property
    def flux_over_flux_quantum(self) -> float:
        return self.phi_ex / (2.0 * math.pi)


def make_device(config: Mapping[str, Any] | None = None, **overrides: Any) -> DeviceParams:
    """Build a :class:`DeviceParams` from display-unit keys.

    Keys follow the JSON config schema (``v_m_per_s``, ``impedance_ohm``,
    ``l2_mm``, ``l3_mm``, ``cs_ff``, ``ic_ua``).  ``overrides`` take
    precedence over ``config``; missing keys fall back to the reference
    defaults.  ``None`` values are ignored so argparse namespaces can be
    passed through directly.
    """
    merged = dict(DEFAULT_DISPLAY)
    for source in (config or {}), overrides:
        for key, value in source.items():
            if key not in CONFIG_KEYS:
                raise ValidationError(key, "is not a recognised device parameter")
            if value is not None:
                merged[key] = value
    kwargs = {}
    for key, (name, scale) in CONFIG_KEYS.items():
        kwargs[name] = _check_positive(name, merged[key]) / scale
    return DeviceParams(**kwargs)


def load_config(path: str | Path) -> dict[str, Any]:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValidationError("config", "must be a JSON object")
    return data
