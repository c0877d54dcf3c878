"""Phase-time delays of evanescent (tunneling) waves in optical, quantum and acoustic barriers."""

from .delay_time import (
    DelayResult,
    hartman_scan,
    goos_haenchen_shift,
    phase_time,
    stack_phase_time,
    universal_ratio,
)
from .errors import TunnelTimeError
from .ftir import FtirConfig, coupler_ratio, ftir_kappa, solve_gap_for_ratio
from .quantum_barrier import RectangularBarrier, barrier_amplitude
from .scenarios import builtin_scenarios, emit_table, run_all, run_scenario
from .transfer_matrix import (
    Layer,
    Polarization,
    Stack,
    barrier_opacity,
    stack_amplitudes,
    transmission_spectrum,
)
from .wave_core import Kind, Medium, propagating_wavenumber
from .wavepacket import synthesize_gaussian, transmit

__version__ = "0.1.0"

__all__ = [
    "DelayResult",
    "FtirConfig",
    "Kind",
    "Layer",
    "Medium",
    "Polarization",
    "RectangularBarrier",
    "Stack",
    "TunnelTimeError",
    "barrier_amplitude",
    "barrier_opacity",
    "builtin_scenarios",
    "coupler_ratio",
    "emit_table",
    "ftir_kappa",
    "goos_haenchen_shift",
    "hartman_scan",
    "phase_time",
    "propagating_wavenumber",
    "run_all",
    "run_scenario",
    "solve_gap_for_ratio",
    "stack_amplitudes",
    "stack_phase_time",
    "synthesize_gaussian",
    "transmission_spectrum",
    "transmit",
    "universal_ratio",
]
