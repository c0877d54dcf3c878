"""Band-limited pulses filtered by a complex transmission spectrum.

Pulses are kept as complex baseband envelopes around a carrier ``nu0``: the
physical field is ``Re[envelope(t) * exp(-2j pi nu0 t)]``, consistent with the
``exp(-1j omega t)`` convention of the solver.  With numpy's FFT sign, the
FFT bin at baseband frequency ``f`` therefore carries the optical frequency
``nu0 - f``.

This module is an independent time-domain check of the phase-derivative
delays in :mod:`tunneltime.delay_time`: a narrowband pulse filtered by
``t(omega)`` must come out shifted by ``d(arg t)/d(omega)``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.interpolate import CubicSpline

from .constants import C
from .delay_time import unwrap_phase
from .errors import ConfigurationError, CoverageError, DomainError, MeasurementError
from .transfer_matrix import transmission_spectrum

BAND_FLOOR = 1e-8  # spectral amplitude, relative to the peak, defining the band edge
FRONT_LEVEL = 1e-6
POINTS_PER_BANDWIDTH = 8


def _is_power_of_two(n):
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class Pulse:
    """Carrier frequency (Hz), sample spacing (s) and complex envelope samples.

    ``bandwidth`` is the rms spectral width in Hz; ``band_limit`` the
    half-width outside which the spectrum is identically zero.
    """

    carrier: float
    dt: float
    envelope: np.ndarray
    bandwidth: float
    band_limit: float

    def __post_init__(self):
        env = np.asarray(self.envelope, dtype=complex)
        if not _is_power_of_two(env.size):
            raise ConfigurationError(f"sample count {env.size} is not a power of two")
        object.__setattr__(self, "envelope", env)

    @property
    def n(self):
        return self.envelope.size

    @property
    def times(self):
        return np.arange(self.n) * self.dt

    @cached_property
    def spectrum(self):
        return np.fft.fft(self.envelope)

    @property
    def baseband(self):
        return np.fft.fftfreq(self.n, self.dt)

    @property
    def frequencies(self):
        """Optical frequency (Hz) of each FFT bin."""
        return self.carrier - self.baseband

    @property
    def energy(self):
        return float(np.sum(np.abs(self.envelope) ** 2) * self.dt)

    @property
    def spectral_energy(self):
        return float(np.sum(np.abs(self.spectrum) ** 2) * self.dt / self.n)

    @property
    def power(self):
        return np.abs(self.envelope) ** 2

    def with_envelope(self, envelope):
        return Pulse(self.carrier, self.dt, envelope, self.bandwidth, self.band_limit)

    def band_mask(self):
        return np.abs(self.baseband) <= self.band_limit


def synthesize_gaussian(carrier, sigma_t, dt, n):
    """Unit-peak Gaussian envelope centred at ``n * dt / 2``.

    The spectrum is truncated where the Gaussian falls below ``1e-8`` of its
    peak, so the pulse is strictly band-limited.
    """
    if not (carrier > 0 and sigma_t > 0 and dt > 0):
        raise ConfigurationError("carrier, sigma_t and dt must be positive")
    if sigma_t < 10 * dt * (1 - 1e-9):
        raise ConfigurationError("sigma_t must be at least 10 samples")
    if not _is_power_of_two(int(n)):
        raise ConfigurationError(f"n={n!r} must be a power of two")
    if n * dt < 20 * sigma_t * (1 - 1e-9):
        raise ConfigurationError("time window must span at least 20 sigma_t")
    n = int(n)
    bandwidth = 1.0 / (2.0 * math.pi * sigma_t)
    band_limit = math.sqrt(2.0 * math.log(1.0 / BAND_FLOOR)) * bandwidth
    if band_limit >= carrier:
        raise ConfigurationError("pulse band reaches zero frequency; use a longer pulse")
    t = np.arange(n) * dt - 0.5 * n * dt
    spec = np.fft.fft(np.exp(-0.5 * (t / sigma_t) ** 2))
    spec[np.abs(np.fft.fftfreq(n, dt)) > band_limit] = 0.0
    env = np.fft.ifft(spec)
    env /= np.abs(env).max()
    return Pulse(float(carrier), float(dt), env, bandwidth, band_limit)


def _band_omegas(pulse):
    mask = pulse.band_mask()
    return 2.0 * math.pi * pulse.frequencies[mask], mask


def spectrum_for_pulse(stack, pulse, points_per_bandwidth=2 * POINTS_PER_BANDWIDTH):
    """Transmission spectrum of ``stack`` sampled densely enough for ``pulse``."""
    span = 1.05 * pulse.band_limit
    step = pulse.bandwidth / points_per_bandwidth
    count = int(math.ceil(2.0 * span / step)) + 1
    nu = np.linspace(pulse.carrier - span, pulse.carrier + span, count)
    return transmission_spectrum(stack, 2.0 * math.pi * nu)


def interpolate_transmission(spectrum, omega):
    """Cubic interpolation of ``t`` in magnitude and unwrapped phase."""
    phi = unwrap_phase(spectrum)
    mag = CubicSpline(spectrum.grid, np.abs(spectrum.t))(omega)
    return mag * np.exp(1j * CubicSpline(spectrum.grid, phi)(omega))


def propagate(pulse, spectrum):
    """Filter ``pulse`` by the transmission amplitude of ``spectrum``.

    Raises
    ------
    CoverageError
        If the pulse band is not inside the spectrum grid, or the grid has
        fewer than 8 samples per rms bandwidth.
    """
    omegas, mask = _band_omegas(pulse)
    grid = spectrum.grid
    if omegas.min() < grid[0] or omegas.max() > grid[-1]:
        raise CoverageError(
            f"pulse band [{omegas.min()!r}, {omegas.max()!r}] rad/s exceeds the spectrum grid "
            f"[{grid[0]!r}, {grid[-1]!r}]"
        )
    max_step = 2.0 * math.pi * pulse.bandwidth / POINTS_PER_BANDWIDTH
    local = (grid >= omegas.min()) & (grid <= omegas.max())
    if np.any(np.diff(grid)[local[:-1]] > max_step * (1 + 1e-9)):
        raise CoverageError("spectrum grid is coarser than 8 samples per pulse bandwidth")
    out = np.zeros_like(pulse.spectrum)
    out[mask] = pulse.spectrum[mask] * interpolate_transmission(spectrum, omegas)
    return pulse.with_envelope(np.fft.ifft(out))


@dataclass(frozen=True)
class DelayMeasurement:
    peak_delay: float
    centroid_delay: float
    correlation: float
    effective_speed: float | None


def _check_same_grid(a, b):
    if a.n != b.n or a.dt != b.dt:
        raise DomainError("pulses must share the same time grid")


def peak_time(pulse):
    """Envelope maximum, refined by a parabola through the log-magnitude at 3 samples.

    The log-magnitude parabola is exact for Gaussian envelopes.
    """
    mag = np.abs(pulse.envelope)
    i = int(np.argmax(mag))
    if mag[i] == 0 or np.ptp(mag) <= 1e-12 * mag[i]:
        raise MeasurementError("envelope is flat; no peak to measure")
    if i == 0 or i == pulse.n - 1:
        raise MeasurementError("envelope peak sits on the edge of the time window")
    y0, y1, y2 = np.log(mag[i - 1 : i + 2])
    curv = y0 - 2.0 * y1 + y2
    offset = 0.5 * (y0 - y2) / curv if curv < 0 else 0.0
    return (i + offset) * pulse.dt


def centroid_time(pulse):
    p = pulse.power
    return float(np.sum(pulse.times * p) / np.sum(p))


def envelope_correlation(a, b):
    """Maximum over circular shifts of the normalized envelope cross-correlation."""
    _check_same_grid(a, b)
    xc = np.fft.ifft(np.conj(np.fft.fft(a.envelope)) * np.fft.fft(b.envelope))
    norm = np.linalg.norm(a.envelope) * np.linalg.norm(b.envelope)
    return float(min(1.0, np.abs(xc).max() / norm))


def measure_delay(inp, out, reference_length=None):
    """Compare an output pulse against the input (vacuum reference) trace.

    ``effective_speed`` is ``reference_length / peak_delay`` (``inf`` for a
    non-positive delay), or ``None`` without a reference length.
    """
    _check_same_grid(inp, out)
    peak = peak_time(out) - peak_time(inp)
    centroid = centroid_time(out) - centroid_time(inp)
    corr = envelope_correlation(inp, out)
    speed = None
    if reference_length is not None:
        speed = reference_length / peak if peak > 0 else math.inf
    return DelayMeasurement(peak, centroid, corr, speed)


def front_time(pulse, level=FRONT_LEVEL):
    """Time of the first sample whose magnitude exceeds ``level`` of the peak."""
    mag = np.abs(pulse.envelope)
    return float(np.flatnonzero(mag > level * mag.max())[0] * pulse.dt)


def front_advance_samples(inp, out, level=FRONT_LEVEL):
    """How many samples the output front precedes the input front (negative: lags)."""
    _check_same_grid(inp, out)
    return (front_time(inp, level) - front_time(out, level)) / inp.dt


@dataclass(frozen=True)
class BandOccupancy:
    frequencies: np.ndarray
    ratio: np.ndarray
    min_ratio: float
    max_ratio: float
    variation: float
    truncated: bool


def band_occupancy(inp, out, level=1e-3, truncation_level=1e-3):
    """``|out(nu)| / |in(nu)|`` over the bins where the input exceeds ``level`` of its peak.

    ``truncated`` flags a hard spectral cut: some occupied bin attenuated by
    more than ``truncation_level`` relative to the best-transmitted bin.
    """
    _check_same_grid(inp, out)
    a = np.abs(inp.spectrum)
    occupied = a >= level * a.max()
    ratio = np.abs(out.spectrum[occupied]) / a[occupied]
    order = np.argsort(inp.frequencies[occupied])
    ratio = ratio[order]
    lo, hi = float(ratio.min()), float(ratio.max())
    return BandOccupancy(
        inp.frequencies[occupied][order],
        ratio,
        lo,
        hi,
        (hi - lo) / hi if hi > 0 else 0.0,
        bool(lo < truncation_level * hi),
    )


def write_trace_csv(pulse, fh):
    """Two-column ``t_s, power`` trace (``|envelope|**2``)."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["t_s", "power"])
    for t, p in zip(pulse.times, pulse.power):
        writer.writerow([f"{t:.9e}", f"{p:.9e}"])


@dataclass(frozen=True)
class PulseStudy:
    input: Pulse
    output: Pulse
    measurement: DelayMeasurement
    occupancy: BandOccupancy
    front_advance: float

    @property
    def speed_in_c(self):
        s = self.measurement.effective_speed
        return None if s is None else s / C


def transmit(stack, pulse, reference_length=None):
    """Propagate ``pulse`` through ``stack`` and measure the result."""
    spectrum = spectrum_for_pulse(stack, pulse)
    out = propagate(pulse, spectrum)
    if reference_length is None:
        reference_length = stack.thickness
    return PulseStudy(
        pulse,
        out,
        measure_delay(pulse, out, reference_length),
        band_occupancy(pulse, out),
        front_advance_samples(pulse, out),
    )
