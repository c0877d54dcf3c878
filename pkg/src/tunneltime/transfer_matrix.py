"""Exact 2x2 transfer-matrix solver for layered barriers.

Conventions
-----------
* Time dependence ``exp(-1j * omega * t)``; forward waves ``exp(+1j * k_z * z)``.
  Free propagation over ``L`` therefore adds ``+omega * L / c`` to ``arg t``
  and the phase time is ``+d(arg t)/d(omega)``.
* ``r`` and ``t`` are referenced to the front and back faces of the layer
  stack, so travel in the entry and exit media is not included.
* A medium's admittance is ``Y = k_z / g`` with ``g = 1`` (TE), ``n**2``
  (TM, magnetic field), particle mass (quantum) or density (acoustic).  The
  matching conditions are continuity of the field and of ``field' / g``.
* TM amplitudes are reported in the electric-field convention
  (``t_E = t_H * n_entry / n_exit``), matching the usual Fresnel formulas.

Amplitude-basis matrices (:func:`interface_matrix`, :func:`layer_matrix`) map
(forward, backward) amplitudes on the right of an element to those on its
left.  The stack product is evaluated back-to-front in the equivalent field
basis, ``D_entry^-1 F_1 ... F_N D_exit`` with ``F_j = D_j P_j D_j^-1``, which
stays finite at ``k_z = 0`` (band edges, cutoff).  Each evanescent layer
contributes its ``exp(kappa * d)`` growth to a separate log-scale so that
opacities of several hundred remain representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

from .constants import C
from .errors import DomainError, IncompatibleMediaError
from .wave_core import Kind, Medium, propagating_wavenumber


class Polarization(str, Enum):
    TE = "TE"
    TM = "TM"
    SCALAR = "Scalar"


@dataclass(frozen=True)
class Layer:
    medium: Medium
    thickness: float

    def __post_init__(self):
        if not self.thickness >= 0 or not math.isfinite(self.thickness):
            raise DomainError(f"layer thickness must be finite and >= 0, got {self.thickness!r}")


@dataclass(frozen=True)
class Stack:
    """Layers between two semi-infinite, lossless end media.

    The transverse wavenumber is set either by the incidence angle ``theta``
    (measured in the entry medium, so ``k_par`` scales with frequency) or,
    when ``k_parallel`` is given, held fixed at that value for every
    frequency.  The fixed form describes guided modes and the constant-``k_par``
    phase time used for FTIR gaps.
    """

    entry: Medium
    layers: tuple = ()
    exit: Optional[Medium] = None
    polarization: Optional[Polarization] = None
    theta: float = 0.0
    k_parallel: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if self.exit is None:
            object.__setattr__(self, "exit", self.entry)
        kind = self.entry.kind
        for medium in self.media:
            if medium.kind is not kind:
                raise IncompatibleMediaError(
                    f"cannot mix {kind.value} and {medium.kind.value} media in one stack"
                )
        pol = self.polarization
        if pol is None:
            pol = Polarization.TE if kind is Kind.OPTICAL else Polarization.SCALAR
        pol = Polarization(pol)
        if kind is Kind.OPTICAL and pol is Polarization.SCALAR:
            pol = Polarization.TE
        if kind is not Kind.OPTICAL and pol is not Polarization.SCALAR:
            raise DomainError(f"{kind.value} stacks require Scalar polarization")
        object.__setattr__(self, "polarization", pol)
        if not 0.0 <= self.theta < math.pi / 2:
            raise DomainError("incidence angle must lie in [0, pi/2)")
        if kind is Kind.QUANTUM and self.theta != 0.0:
            raise DomainError("quantum stacks are one-dimensional; theta must be 0")
        if self.k_parallel is not None and self.k_parallel < 0:
            raise DomainError("k_parallel must be >= 0")

    @property
    def kind(self):
        return self.entry.kind

    @property
    def media(self):
        return (self.entry, *(layer.medium for layer in self.layers), self.exit)

    @property
    def thickness(self):
        return sum(layer.thickness for layer in self.layers)

    @classmethod
    def periodic(cls, entry, cell, periods, exit=None, cap=(), **kwargs):
        """``entry | cell * periods | cap | exit``."""
        layers = tuple(cell) * int(periods) + tuple(cap)
        return cls(entry, layers, exit, **kwargs)

    def k_par(self, omega):
        omega = np.asarray(omega, dtype=float)
        if self.k_parallel is not None:
            return np.full(omega.shape, float(self.k_parallel))[()]
        if self.theta == 0.0:
            return np.zeros(omega.shape)[()]
        if self.kind is Kind.OPTICAL:
            return self.entry.n * omega * math.sin(self.theta) / C
        return omega * math.sin(self.theta) / self.entry.speed

    def with_k_parallel(self, k_parallel):
        return replace(self, k_parallel=float(k_parallel), theta=0.0)

    def with_layers(self, layers):
        return replace(self, layers=tuple(layers))

    def reversed(self):
        """The same structure illuminated from the exit side."""
        theta = 0.0
        if self.k_parallel is None and self.theta != 0.0:
            if self.kind is Kind.OPTICAL:
                s = self.entry.n * math.sin(self.theta) / self.exit.n
            else:
                s = self.exit.speed * math.sin(self.theta) / self.entry.speed
            if s >= 1.0:
                raise DomainError("exit medium is evanescent; the stack cannot be reversed")
            theta = math.asin(s)
        return Stack(self.exit, tuple(reversed(self.layers)), self.entry,
                     self.polarization, theta, self.k_parallel)


def _g_factor(medium, pol):
    if medium.kind is Kind.OPTICAL:
        return medium.n**2 if pol is Polarization.TM else 1.0
    if medium.kind is Kind.QUANTUM:
        return medium.mass
    return medium.density


def _check_pair(a, b, pol):
    if a.kind is not b.kind:
        raise IncompatibleMediaError(f"cannot match {a.kind.value} to {b.kind.value} medium")
    pol = Polarization(pol)
    if a.kind is Kind.OPTICAL:
        if pol is Polarization.SCALAR:
            pol = Polarization.TE
    elif pol is not Polarization.SCALAR:
        raise DomainError(f"{a.kind.value} media require Scalar polarization")
    return pol


def admittance(medium, pol, omega, k_par=0.0):
    """``k_z / g`` for ``medium``; the flux of a wave of amplitude A is ``Re(Y) |A|**2``."""
    return propagating_wavenumber(omega, medium, k_par) / _g_factor(medium, Polarization(pol))


def interface_matrix(a, b, pol, k_par, omega):
    """Amplitude transfer matrix of the ``a | b`` interface (b-side to a-side).

    Its determinant is ``Y_b / Y_a``.  Identical media give the identity.
    """
    pol = _check_pair(a, b, pol)
    if a == b:
        return np.eye(2, dtype=complex)
    ya = admittance(a, pol, omega, k_par)
    yb = admittance(b, pol, omega, k_par)
    if ya == 0:
        raise DomainError("interface matrix is singular when k_z vanishes on the a side")
    eta = yb / ya
    return 0.5 * np.array([[1 + eta, 1 - eta], [1 - eta, 1 + eta]], dtype=complex)


def layer_matrix(layer, omega, k_par=0.0, pol=Polarization.SCALAR):
    """``diag(exp(-1j k_z d), exp(+1j k_z d))``: right-face to left-face amplitudes."""
    kz = propagating_wavenumber(omega, layer.medium, k_par)
    phase = 1j * kz * layer.thickness
    return np.array([[np.exp(-phase), 0.0], [0.0, np.exp(phase)]], dtype=complex)


def _field_basis(y):
    """D = [[1, 1], [iY, -iY]] and its inverse, batched over frequency."""
    d = np.empty(y.shape + (2, 2), dtype=complex)
    d[..., 0, 0] = 1.0
    d[..., 0, 1] = 1.0
    d[..., 1, 0] = 1j * y
    d[..., 1, 1] = -1j * y
    dinv = np.empty_like(d)
    dinv[..., 0, 0] = 0.5
    dinv[..., 1, 0] = 0.5
    dinv[..., 0, 1] = 0.5 / (1j * y)
    dinv[..., 1, 1] = -0.5 / (1j * y)
    return d, dinv


def _field_matrix(kz, g, d):
    """Scaled field-basis matrix of one layer and its log growth factor.

    Returns ``(F_scaled, log_scale)`` with ``F = exp(log_scale) * F_scaled``.
    """
    kz = np.asarray(kz)
    kappa = kz.imag
    x = kappa * d
    prop = kz.real * d
    evan = x > 0.0
    big = x > 1.0
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        # propagating (or exactly k_z = 0)
        cos_p = np.cos(prop)
        sinc_p = np.where(prop == 0.0, 1.0, np.sin(prop) / np.where(prop == 0.0, 1.0, prop))
        # evanescent, small x
        xs = np.where(big, 0.0, x)
        cosh_s = np.cosh(xs)
        shc_s = np.where(xs == 0.0, 1.0, np.sinh(xs) / np.where(xs == 0.0, 1.0, xs))
        # evanescent, large x: factor exp(x) moved to the log scale
        em = np.exp(-2.0 * np.where(big, x, 0.0))
        cosh_b = 0.5 * (1.0 + em)
        shc_b = 0.5 * (1.0 - em) / np.where(big, x, 1.0)
    c = np.where(evan, np.where(big, cosh_b, cosh_s), cos_p)
    # S = sin(k d) / k, equal to d * sinh(x)/x for evanescent layers
    s = d * np.where(evan, np.where(big, shc_b, shc_s), sinc_p)
    ksq = np.where(evan, -(kappa**2), kz.real**2)
    f = np.empty(kz.shape + (2, 2), dtype=complex)
    f[..., 0, 0] = c
    f[..., 1, 1] = c
    f[..., 0, 1] = -g * s
    f[..., 1, 0] = ksq * s / g
    log_scale = np.where(big, x, 0.0)
    return f, log_scale


def _rescale(m, log_scale):
    s = np.max(np.abs(m), axis=(-2, -1))
    s = np.where(s > 0, s, 1.0)
    return m / s[..., None, None], log_scale + np.log(s)


def _product(stack, omega, k_par, exit_admittance):
    """Back-to-front scaled product ``prod F_j @ D_exit``."""
    pol = stack.polarization
    acc, _ = _field_basis(exit_admittance)
    log_scale = np.zeros(omega.shape)
    for layer in reversed(stack.layers):
        if layer.thickness == 0.0:
            continue
        kz = propagating_wavenumber(omega, layer.medium, k_par)
        f, ls = _field_matrix(np.asarray(kz), _g_factor(layer.medium, pol), layer.thickness)
        acc, log_scale = _rescale(f @ acc, log_scale + ls)
    return acc, log_scale


def _prepare(stack, omega):
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    if np.any(omega <= 0):
        raise DomainError("stack amplitudes require omega > 0")
    k_par = stack.k_par(omega)
    pol = stack.polarization
    y_in = np.asarray(admittance(stack.entry, pol, omega, k_par))
    y_out = np.asarray(admittance(stack.exit, pol, omega, k_par))
    return omega, k_par, y_in, y_out


def _first_bad(mask):
    idx = np.flatnonzero(mask)
    return int(idx[0]) if idx.size else None


def _scaled_matrix(stack, omega):
    """Scaled full transfer matrix, its log scale, and the end admittances."""
    omega, k_par, y_in, y_out = _prepare(stack, omega)
    bad = _first_bad((y_in.imag != 0) | (y_in.real <= 0))
    if bad is not None:
        raise DomainError(
            f"entry medium is not propagating at sample {bad} (omega={omega[bad]!r})"
        )
    if np.any(y_out == 0):
        bad = _first_bad(y_out == 0)
        raise DomainError(f"exit medium is at its propagation threshold at sample {bad}")
    acc, log_scale = _product(stack, omega, k_par, y_out)
    _, dinv = _field_basis(y_in)
    m, log_scale = _rescale(dinv @ acc, log_scale)
    return m, log_scale, y_in, y_out


def transfer_matrix(stack, omega):
    """Full amplitude transfer matrix ``M`` with ``(1, r) = M (t, 0)``.

    Returned unscaled; use only for moderately opaque stacks.
    """
    m, log_scale, _, _ = _scaled_matrix(stack, omega)
    out = m * np.exp(log_scale)[..., None, None]
    return out[0] if np.ndim(omega) == 0 else out


def _tm_factor(stack):
    if stack.kind is Kind.OPTICAL and stack.polarization is Polarization.TM:
        return stack.entry.n / stack.exit.n
    return 1.0


def _amplitudes(stack, omega, allow_evanescent_exit=False):
    m, log_scale, y_in, y_out = _scaled_matrix(stack, omega)
    if not allow_evanescent_exit:
        bad = _first_bad(y_out.imag != 0)
        if bad is not None:
            raise DomainError(
                f"exit medium is evanescent at sample {bad}; no transmitted propagating state"
            )
    r = m[..., 1, 0] / m[..., 0, 0]
    with np.errstate(under="ignore"):
        t = np.exp(-log_scale) / m[..., 0, 0] * _tm_factor(stack)
    flux = np.where(y_out.imag == 0, y_out.real / y_in.real, 0.0) / _tm_factor(stack) ** 2
    return r, t, flux


def stack_amplitudes(stack, omega):
    """Reflection and transmission amplitudes and the flux factor.

    For lossless stacks ``|r|**2 + flux_factor * |t|**2 == 1``.

    Raises
    ------
    DomainError
        If the entry or exit medium does not carry a propagating wave at
        ``omega``, or ``omega <= 0``.
    """
    r, t, flux = _amplitudes(stack, omega)
    if np.ndim(omega) == 0:
        return complex(r[0]), complex(t[0]), float(flux[0])
    return r, t, flux


def reflection_amplitude(stack, omega):
    """Reflection amplitude, permitting an evanescent exit medium (total reflection)."""
    r, _, _ = _amplitudes(stack, omega, allow_evanescent_exit=True)
    return complex(r[0]) if np.ndim(omega) == 0 else r


@dataclass(frozen=True)
class ComplexSpectrum:
    """Sampled complex reflection/transmission amplitudes.

    ``amplitude``, when present, evaluates ``t`` at arbitrary angular
    frequencies inside the grid range; derivative routines use it instead of
    finite differences on the samples.
    """

    grid: np.ndarray
    r: np.ndarray
    t: np.ndarray
    flux_factor: np.ndarray
    amplitude: Optional[Callable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise DomainError("grid must be a non-empty 1-D array")
        if np.any(np.diff(grid) <= 0):
            raise DomainError("grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)
        for name in ("r", "t"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=complex))
        object.__setattr__(self, "flux_factor", np.asarray(self.flux_factor, dtype=float))

    @property
    def transmittance(self):
        return self.flux_factor * np.abs(self.t) ** 2

    @property
    def reflectance(self):
        return np.abs(self.r) ** 2

    def transmission_at(self, omega):
        if self.amplitude is None:
            raise DomainError("spectrum has no amplitude function; only samples are available")
        return self.amplitude(omega)

    @classmethod
    def from_function(cls, grid, t_func, r_func=None):
        """Spectrum of an analytic transmission function ``t_func(omega)``."""
        grid = np.asarray(grid, dtype=float)

        def amplitude(omega):
            return np.asarray(t_func(np.asarray(omega, dtype=float)), dtype=complex)

        t = amplitude(grid) * np.ones(grid.shape)
        r = np.zeros(grid.shape, complex) if r_func is None else np.asarray(r_func(grid), complex)
        return cls(grid, r, t, np.ones(grid.shape), amplitude)


def transmission_spectrum(stack, grid):
    """Evaluate :func:`stack_amplitudes` on every sample of ``grid``."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be a strictly increasing 1-D array")
    r, t, flux = stack_amplitudes(stack, grid)

    def amplitude(omega):
        _, tt, _ = _amplitudes(stack, np.asarray(omega, dtype=float))
        return tt[0] if np.ndim(omega) == 0 else tt

    return ComplexSpectrum(grid, r, t, flux, amplitude)


def layer_opacity(stack, omega):
    """Sum of ``kappa * d`` over the evanescent layers of ``stack``."""
    k_par = float(stack.k_par(omega))
    total = 0.0
    for layer in stack.layers:
        kz = complex(propagating_wavenumber(omega, layer.medium, k_par))
        total += kz.imag * layer.thickness
    return total


def detect_period(layers: Sequence[Layer]):
    """Smallest period (>= 2 layers, >= 2 repeats) of a layer sequence, or None."""
    n = len(layers)
    for p in range(2, n // 2 + 1):
        if all(layers[i] == layers[i + p] for i in range(n - p)):
            if len({layer.medium for layer in layers[:p]}) > 1:
                return p
    return None


def bloch_cosine(cell, omega, k_par=0.0, pol=Polarization.SCALAR):
    """``cos(K * Lambda)`` of the infinite crystal built from ``cell``.

    Returned as ``(value_scaled, log_scale)`` so that deep gaps do not
    overflow: the half trace is ``value_scaled * exp(log_scale)``.
    """
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    acc = np.broadcast_to(np.eye(2, dtype=complex), omega.shape + (2, 2)).copy()
    log_scale = np.zeros(omega.shape)
    for layer in reversed(tuple(cell)):
        kz = propagating_wavenumber(omega, layer.medium, k_par)
        f, ls = _field_matrix(np.asarray(kz), _g_factor(layer.medium, Polarization(pol)),
                              layer.thickness)
        acc, log_scale = _rescale(f @ acc, log_scale + ls)
    half_trace = 0.5 * (acc[..., 0, 0] + acc[..., 1, 1]).real
    return half_trace, log_scale


def bloch_kappa_length(cell, omega, k_par=0.0, pol=Polarization.SCALAR):
    """Imaginary Bloch phase per cell (``kappa_B * Lambda``); zero in a pass band."""
    half, log_scale = bloch_cosine(cell, omega, k_par, pol)
    half, log_scale = float(half[0]), float(log_scale[0])
    if half == 0.0:
        return 0.0
    log_y = math.log(abs(half)) + log_scale
    if log_y <= 0.0:
        return 0.0
    # arccosh(y) = ln y + ln(1 + sqrt(1 - y**-2))
    return log_y + math.log1p(math.sqrt(-math.expm1(-2.0 * log_y)))


def barrier_opacity(stack, omega):
    """Opacity ``kappa * L`` of a stack at one angular frequency.

    Periodic stacks use the imaginary Bloch wavenumber times the number of
    full periods; other stacks the sum of ``kappa * d`` over evanescent
    layers.  Zero means the structure is not a tunneling barrier at ``omega``.
    """
    period = detect_period(stack.layers)
    if period is not None:
        k_par = float(stack.k_par(omega))
        cell = stack.layers[:period]
        return bloch_kappa_length(cell, omega, k_par, stack.polarization) * (
            len(stack.layers) // period
        )
    return layer_opacity(stack, omega)
