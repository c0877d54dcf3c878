"""Frustrated total internal reflection across a low-index gap.

Geometry: a guide (prism or fiber core) of index ``n_guide``, a gap of index
``n_gap < n_guide`` and width ``gap``, and a second identical guide.  Above
the critical angle the field in the gap decays with

    kappa = (omega / c) * sqrt(n_guide**2 sin(theta)**2 - n_gap**2)

and the transmitted intensity falls off as ``exp(-2 kappa gap)`` once the gap
is opaque.  The exact two-interface amplitudes come from the transfer-matrix
solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from scipy.optimize import bisect

from .constants import C
from .delay_time import goos_haenchen_shift, stack_phase_time
from .errors import DomainError, NoSolutionError, NotTotalReflectionError
from .transfer_matrix import Layer, Polarization, Stack, stack_amplitudes
from .wave_core import Medium


@dataclass(frozen=True)
class FtirConfig:
    """Double prism / fiber coupler.  Lengths in metres, angle in radians."""

    n_gap: float
    n_guide: float
    theta: float
    gap: float
    wavelength: float
    polarization: Polarization = Polarization.TE

    def __post_init__(self):
        object.__setattr__(self, "polarization", Polarization(self.polarization))
        if not self.n_guide > self.n_gap > 0:
            raise DomainError("need n_guide > n_gap > 0")
        if not 0 < self.theta < math.pi / 2:
            raise DomainError("theta must lie in (0, pi/2)")
        if not self.gap >= 0:
            raise DomainError("gap must be >= 0")
        if not self.wavelength > 0:
            raise DomainError("wavelength must be positive")

    @property
    def omega(self):
        return 2.0 * math.pi * C / self.wavelength

    @property
    def critical_angle(self):
        return math.asin(self.n_gap / self.n_guide)

    @property
    def k_parallel(self):
        return self.omega * self.n_guide * math.sin(self.theta) / C

    def with_gap(self, gap):
        return replace(self, gap=gap)

    def stack(self):
        guide = Medium.optical(self.n_guide)
        layers = (Layer(Medium.optical(self.n_gap), self.gap),)
        return Stack(guide, layers, guide, self.polarization, self.theta)

    def interface_stack(self):
        """Single guide/gap interface (gap medium semi-infinite)."""
        return Stack(Medium.optical(self.n_guide), (), Medium.optical(self.n_gap),
                     self.polarization, self.theta)


def ftir_kappa(cfg):
    """Decay constant of the gap field, in 1/m."""
    s = cfg.n_guide * math.sin(cfg.theta)
    arg = (s - cfg.n_gap) * (s + cfg.n_gap)
    if arg < 0:
        if arg > -1e-12 * cfg.n_gap**2:
            return 0.0
        raise NotTotalReflectionError(
            f"theta={cfg.theta!r} is below the critical angle {cfg.critical_angle!r}"
        )
    return cfg.omega / C * math.sqrt(arg)


def gap_transmittance(cfg):
    """Opaque-gap intensity ratio ``I_t / I_0 = exp(-2 kappa gap)``."""
    return math.exp(-2.0 * ftir_kappa(cfg) * cfg.gap)


def double_prism_amplitudes(cfg):
    """Exact face-referenced ``(r, t)`` of the guide | gap | guide structure."""
    if cfg.theta < cfg.critical_angle:
        ftir_kappa(cfg)
    r, t, _ = stack_amplitudes(cfg.stack(), cfg.omega)
    return r, t


def coupler_ratio(cfg):
    """Fraction of the incident power that tunnels into the second guide."""
    _, t = double_prism_amplitudes(cfg)
    return abs(t) ** 2


def solve_gap_for_ratio(cfg, target, max_opacity=40.0, rtol=1e-10):
    """Gap width at which :func:`coupler_ratio` equals ``target``.

    Bisection on ``[0, max_opacity / kappa]``; ``cfg.gap`` is ignored.

    Raises
    ------
    NoSolutionError
        If ``target`` is not reached inside the search interval.
    """
    if target == 1.0:
        return 0.0
    kappa = ftir_kappa(cfg)
    hi = max_opacity / kappa if kappa > 0 else 0.0
    bracket = (0.0, hi)
    if not 0.0 < target < 1.0 or kappa == 0.0:
        raise NoSolutionError(f"target ratio {target!r} not achievable", bracket=bracket)
    low_end = coupler_ratio(cfg.with_gap(hi))
    if low_end > target:
        raise NoSolutionError(
            f"target ratio {target!r} below {low_end!r} reached at gap {hi!r}", bracket=bracket
        )
    return bisect(lambda g: coupler_ratio(cfg.with_gap(g)) - target, 0.0, hi,
                  xtol=rtol * hi * 1e-3, rtol=rtol)


def gap_phase_time(cfg):
    """Phase time of the gap at fixed transverse wavenumber ``k_par``."""
    stack = cfg.stack().with_k_parallel(cfg.k_parallel)
    return stack_phase_time(stack, cfg.omega)


def interface_shift(cfg):
    """Goos-Haenchen shift of total reflection at one guide/gap interface."""
    return goos_haenchen_shift(cfg.interface_stack(), cfg.omega, cfg.theta)
