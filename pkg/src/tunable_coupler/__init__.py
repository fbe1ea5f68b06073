"""Flux-tunable cavity-waveguide coupler built from a SQUID-terminated stub."""
from .characterize import (
    CavityParams,
    CriticalPhotonResult,
    DecoupledCavity,
    ExtractionMethod,
    SweepRow,
    critical_photon_number,
    extract_from_energy,
    extract_from_phase,
    lorentzian_deviation,
    max_tunable_l3,
    sweep_vs_boundary,
)
from .device import (
    CONSTANTS,
    BoundaryCondition,
    DeviceParams,
    ValidationError,
    josephson_energy_from_critical_current,
    make_device,
)
from .modes import CavityMode, ModeSolution, cavity_mode, solve_mode
from .spectroscopy import Spectrum, compute_spectrum, energy_ratio, lorentzian, phase_shift
from .squid import StubState, UntunableError, effective_length, flux_for_omega3, omega3, tunable_range

__version__ = "0.1.0"
