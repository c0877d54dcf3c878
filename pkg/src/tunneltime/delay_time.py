"""Phase (Wigner) delay times, Hartman length scans and the Goos-Haenchen shift.

With the package's ``exp(-1j omega t)`` convention the delay is
``tau = +d(arg t)/d(omega)``; for particles ``tau = hbar d(arg t)/dE``.
Derivatives are central differences of the phase increment
``angle(t(x + h) * conj(t(x - h)))``, which needs no global unwrapping,
Richardson-extrapolated from steps ``h`` and ``h/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .constants import C, HBAR
from .errors import (
    DomainError,
    GridTooCoarseError,
    NeedsMarginError,
    NotTotalReflectionError,
    NotTunnelingError,
)
from .transfer_matrix import (
    ComplexSpectrum,
    Stack,
    barrier_opacity,
    reflection_amplitude,
    transmission_spectrum,
)
from .wave_core import Kind

DEFAULT_REL_STEP = 1e-6
OPAQUE = 3.0  # kappa * L at which a barrier counts as opaque
SATURATION_TOLERANCE = 0.02

# absolute phase noise assumed for one amplitude evaluation, in rad
_PHASE_NOISE = 1e-14


class Method(str, Enum):
    PHASE_DERIVATIVE = "PhaseDerivative"
    ENERGY_DERIVATIVE = "EnergyDerivative"
    SAMPLED = "SampledSpline"


@dataclass(frozen=True)
class DelayResult:
    tau: float
    omega0: float
    method: Method
    step: float
    error: float


def unwrap_phase(spectrum, max_jump=math.pi):
    """Continuous phase of ``t`` over the grid.

    The first value lies in ``(-pi, pi]``.  Increments are taken sample to
    sample; an increment of at least ``max_jump``, or a change of at least
    ``max_jump`` from the increment extrapolated from the previous interval,
    means the grid cannot resolve the phase and raises
    :class:`GridTooCoarseError` naming the interval.

    ``spectrum`` may be a :class:`ComplexSpectrum` or ``(grid, t)``.
    """
    if isinstance(spectrum, ComplexSpectrum):
        grid, t = spectrum.grid, spectrum.t
    else:
        grid, t = (np.asarray(a) for a in spectrum)
    t = np.asarray(t, dtype=complex)
    if np.any(t == 0):
        i = int(np.flatnonzero(t == 0)[0])
        raise DomainError(f"phase undefined where t = 0 (sample {i})")
    steps = np.angle(t[1:] * np.conj(t[:-1]))
    bad = np.abs(steps) >= max_jump
    if steps.size > 1:
        h = np.diff(grid)
        predicted = steps[:-1] * h[1:] / h[:-1]
        bad[1:] |= np.abs(steps[1:] - predicted) >= max_jump
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise GridTooCoarseError(
            f"phase jump between samples {i} and {i + 1} "
            f"(omega {grid[i]!r} .. {grid[i + 1]!r}); densify the grid",
            interval=(i, i + 1),
        )
    return np.concatenate(([np.angle(t[0])], np.angle(t[0]) + np.cumsum(steps)))


def _phase_increment(func, x0, h):
    a, b = func(np.array([x0 + h, x0 - h]))
    return float(np.angle(a * np.conj(b)))


def phase_derivative(func, x0, h):
    """Richardson-extrapolated ``d(arg func)/dx`` at ``x0`` and an error estimate."""
    d_h = _phase_increment(func, x0, h) / (2.0 * h)
    d_h2 = _phase_increment(func, x0, 0.5 * h) / h
    value = (4.0 * d_h2 - d_h) / 3.0
    error = abs(d_h - d_h2) / 3.0 + _PHASE_NOISE / h
    return value, error


def phase_time(spectrum, omega0, rel_step=DEFAULT_REL_STEP):
    """Phase delay ``d(arg t)/d(omega)`` at ``omega0``.

    Uses the spectrum's amplitude function when it has one (step
    ``rel_step * omega0``); otherwise differentiates a cubic spline through the
    unwrapped samples.

    Raises
    ------
    NeedsMarginError
        If the difference stencil (or the spline's interior) does not fit in
        the grid around ``omega0``.
    """
    grid = spectrum.grid
    if spectrum.amplitude is not None:
        h = rel_step * abs(omega0)
        if h <= 0:
            raise DomainError("omega0 must be nonzero")
        if omega0 - h < grid[0] or omega0 + h > grid[-1]:
            raise NeedsMarginError(
                f"omega0={omega0!r} needs a margin of {h!r} inside [{grid[0]!r}, {grid[-1]!r}]"
            )
        tau, err = phase_derivative(spectrum.amplitude, omega0, h)
        return DelayResult(tau, omega0, Method.PHASE_DERIVATIVE, h, err)

    if grid.size < 5 or not grid[1] <= omega0 <= grid[-2]:
        raise NeedsMarginError(f"omega0={omega0!r} is not in the interior of the sampled grid")
    phi = unwrap_phase(spectrum)
    tau = float(CubicSpline(grid, phi)(omega0, 1))
    coarse = CubicSpline(grid[::2], phi[::2])(omega0, 1) if grid[::2].size >= 4 else tau
    h = float(np.median(np.diff(grid)))
    return DelayResult(tau, omega0, Method.SAMPLED, h, abs(tau - float(coarse)) / 3.0)


def energy_phase_time(t_of_energy, energy0, rel_step=DEFAULT_REL_STEP):
    """Particle delay ``hbar d(arg t)/dE`` at ``energy0`` (joules).

    Evaluated as ``d(arg t)/d(omega)`` of ``t(hbar omega)`` at
    ``omega0 = energy0 / hbar``, so it reproduces :func:`phase_time` on the
    mapped grid exactly.
    """
    if energy0 <= 0:
        raise DomainError("energy must be positive")
    omega0 = energy0 / HBAR
    h = rel_step * omega0

    def func(omegas):
        return np.asarray([t_of_energy(HBAR * float(w)) for w in omegas], dtype=complex)

    tau, err = phase_derivative(func, omega0, h)
    return DelayResult(tau, omega0, Method.ENERGY_DERIVATIVE, h, err)


def stack_phase_time(stack, omega0, rel_step=DEFAULT_REL_STEP):
    """Phase time of a :class:`Stack` without building a full spectrum."""
    margin = 4.0 * rel_step * omega0
    spectrum = transmission_spectrum(stack, [omega0 - margin, omega0, omega0 + margin])
    return phase_time(spectrum, omega0, rel_step)


@dataclass(frozen=True)
class HartmanScan:
    lengths: np.ndarray
    taus: np.ndarray
    opacities: np.ndarray
    spread: float
    saturated: bool


def hartman_scan(family: Callable[[float], Stack], lengths: Sequence[float], omega0,
                 require_tunneling=True):
    """Phase time against barrier length.

    ``family(L)`` returns the stack for barrier length ``L``.  The saturation
    metric is ``(max - min) / mean`` of ``tau`` over the opaque lengths
    (``kappa L >= 3``), or over all lengths when fewer than two are opaque.

    Raises
    ------
    NotTunnelingError
        If ``require_tunneling`` and some stack is not evanescent at ``omega0``.
    """
    lengths = np.asarray(lengths, dtype=float)
    if lengths.size < 3 or np.any(np.diff(lengths) <= 0):
        raise DomainError("need at least 3 strictly increasing lengths")
    taus = np.empty(lengths.size)
    opac = np.empty(lengths.size)
    for i, L in enumerate(lengths):
        stack = family(float(L))
        opac[i] = barrier_opacity(stack, omega0)
        if require_tunneling and opac[i] <= 0.0:
            raise NotTunnelingError(f"barrier of length {L!r} is propagating at omega0={omega0!r}")
        taus[i] = stack_phase_time(stack, omega0).tau
    opaque = opac >= OPAQUE
    sel = taus[opaque] if opaque.sum() >= 2 else taus
    spread = float((sel.max() - sel.min()) / abs(sel.mean()))
    saturated = bool(opaque.sum() >= 2 and spread < SATURATION_TOLERANCE)
    return HartmanScan(lengths, taus, opac, spread, saturated)


def universal_ratio(tau, nu):
    """``tau * nu``, the delay in units of the oscillation period ``T = 1/nu``."""
    if not nu > 0:
        raise DomainError("frequency must be positive")
    return tau * nu


def goos_haenchen_shift(stack, omega0, theta0=None, rel_step=DEFAULT_REL_STEP):
    """Lateral shift ``-d(arg r)/d(k_par)`` of a totally reflected beam, in metres.

    ``theta0`` (entry-medium angle) overrides the stack's own incidence.
    Positive values point along the forward beam direction.
    """
    theta = stack.theta if theta0 is None else theta0
    if stack.k_parallel is not None and theta0 is None:
        k0 = stack.k_parallel
    elif stack.kind is Kind.OPTICAL:
        k0 = stack.entry.n * omega0 * math.sin(theta) / C
    elif stack.kind is Kind.ACOUSTIC:
        k0 = omega0 * math.sin(theta) / stack.entry.speed
    else:
        raise DomainError("lateral shifts need an oblique optical or acoustic stack")
    if k0 <= 0:
        raise DomainError("normal incidence has no lateral shift")
    h = rel_step * k0

    def r_of_k(ks):
        return np.array([reflection_amplitude(stack.with_k_parallel(k), omega0) for k in ks])

    probe = r_of_k([k0 - h, k0, k0 + h])
    if np.any(np.abs(np.abs(probe) - 1.0) > 1e-6):
        raise NotTotalReflectionError(
            f"|r| = {np.abs(probe[1])!r} at theta={theta!r}; reflection is not total"
        )
    deriv, _ = phase_derivative(r_of_k, k0, h)
    return -deriv
