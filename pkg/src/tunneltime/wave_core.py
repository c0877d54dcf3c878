"""Media and dispersion relations for optical, quantum and acoustic waves.

Wavenumbers follow one convention throughout the package: a propagating
mode has a purely real ``k`` and an evanescent mode has ``k = 1j * kappa``
with ``kappa > 0`` (decaying in the forward direction).  Quantum energies are
tied to angular frequency by ``E = hbar * omega``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .constants import C, EV, HBAR, M_E
from .errors import DomainError, UnsupportedMediumError


class Kind(str, Enum):
    OPTICAL = "optical"
    QUANTUM = "quantum"
    ACOUSTIC = "acoustic"


def _real_positive(name, value):
    if isinstance(value, complex) or np.iscomplexobj(value):
        raise UnsupportedMediumError(f"{name} must be real; lossy media are not supported")
    value = float(value)
    if not value > 0.0 or not math.isfinite(value):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


@dataclass(frozen=True)
class Medium:
    """A homogeneous, lossless medium.

    Only the fields belonging to ``kind`` are meaningful; use the
    :meth:`optical`, :meth:`quantum` and :meth:`acoustic` constructors rather
    than filling fields by hand.

    Attributes
    ----------
    n : float
        Refractive index (optical).
    cutoff : float
        Cutoff frequency in Hz of a hollow-guide section (optical, TE mode).
        Zero for bulk media.
    potential : float
        Potential energy V in joules (quantum).
    mass : float
        Particle rest mass in kg (quantum).
    speed, density : float
        Sound speed in m/s and mass density in kg/m^3 (acoustic).
    """

    kind: Kind
    n: float = 1.0
    cutoff: float = 0.0
    potential: float = 0.0
    mass: float = M_E
    speed: float = 1.0
    density: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.OPTICAL:
            object.__setattr__(self, "n", _real_positive("refractive index", self.n))
            if self.cutoff < 0:
                raise DomainError("cutoff frequency must be >= 0")
        elif self.kind is Kind.QUANTUM:
            object.__setattr__(self, "mass", _real_positive("particle mass", self.mass))
            if isinstance(self.potential, complex):
                raise UnsupportedMediumError("complex potentials are not supported")
            object.__setattr__(self, "potential", float(self.potential))
        else:
            object.__setattr__(self, "speed", _real_positive("sound speed", self.speed))
            object.__setattr__(self, "density", _real_positive("density", self.density))

    @classmethod
    def optical(cls, n, cutoff=0.0):
        return cls(Kind.OPTICAL, n=n, cutoff=float(cutoff))

    @classmethod
    def quantum(cls, potential, mass=M_E):
        """Quantum medium with potential ``potential`` in joules."""
        return cls(Kind.QUANTUM, potential=potential, mass=mass)

    @classmethod
    def quantum_ev(cls, potential_ev, mass=M_E):
        return cls(Kind.QUANTUM, potential=potential_ev * EV, mass=mass)

    @classmethod
    def acoustic(cls, speed, density):
        return cls(Kind.ACOUSTIC, speed=speed, density=density)

    @property
    def impedance(self):
        """Characteristic acoustic impedance rho * v (acoustic media only)."""
        if self.kind is not Kind.ACOUSTIC:
            raise DomainError("impedance is defined for acoustic media only")
        return self.density * self.speed

    def wavenumber(self, omega, k_par=0.0):
        return propagating_wavenumber(omega, self, k_par)


def _sqrt_branch(ksq):
    """Square root on the package branch: real >= 0, or +1j * kappa."""
    ksq = np.asarray(ksq, dtype=float)
    root = np.sqrt(np.abs(ksq))
    out = np.where(ksq >= 0.0, root + 0j, 1j * root)
    return out[()] if out.ndim == 0 else out


def _difference_of_squares(a, b):
    # (a - b)(a + b) keeps relative accuracy close to a == b
    return (a - b) * (a + b)


def propagating_wavenumber(omega, medium, k_par=0.0):
    """Longitudinal wavenumber ``k_z`` in ``medium`` at angular frequency ``omega``.

    Parameters
    ----------
    omega : float or array_like
        Angular frequency in rad/s.  For quantum media the particle energy is
        ``hbar * omega``.
    medium : Medium
    k_par : float
        Conserved transverse wavenumber in 1/m.

    Returns
    -------
    complex or ndarray of complex
        Real for propagating modes, ``1j * kappa`` for evanescent ones.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0) or not np.all(np.isfinite(omega)):
        raise DomainError("angular frequency must be finite and non-negative")
    k_par = np.asarray(k_par, dtype=float)
    if np.any(k_par < 0):
        raise DomainError("transverse wavenumber k_par must be >= 0")

    if medium.kind is Kind.OPTICAL:
        k_cut = 2.0 * math.pi * medium.cutoff / C
        k_t = k_par if medium.cutoff == 0.0 else np.hypot(k_par, k_cut)
        ksq = _difference_of_squares(medium.n * omega / C, k_t)
    elif medium.kind is Kind.QUANTUM:
        ksq = 2.0 * medium.mass * (HBAR * omega - medium.potential) / HBAR**2 - k_par**2
    else:
        ksq = _difference_of_squares(omega / medium.speed, k_par)
    return _sqrt_branch(ksq)


def waveguide_kappa(omega, omega_c):
    """Decay constant of a hollow guide driven below its cutoff ``omega_c``."""
    if omega < 0 or omega > omega_c:
        raise DomainError(
            f"omega={omega!r} is outside [0, omega_c={omega_c!r}]; "
            "above cutoff use propagating_wavenumber"
        )
    return math.sqrt(_difference_of_squares(omega_c, omega)) / C


def quantum_kappa(energy, potential, mass):
    """Decay constant ``sqrt(2 m (V - E)) / hbar`` under a barrier (SI units)."""
    if mass <= 0:
        raise DomainError("mass must be positive")
    if energy < 0 or energy > potential:
        raise DomainError(f"need 0 <= E <= V, got E={energy!r}, V={potential!r}")
    return math.sqrt(2.0 * mass * (potential - energy)) / HBAR


def energy_relation_residual(k, mass, energy):
    """Residual ``E**2 - (s * (hbar |k| c)**2 + (m c**2)**2)`` of the relativistic relation.

    ``s`` is +1 for a real wavenumber and -1 for an imaginary one, so the value
    exposes how an evanescent mode turns ``(hbar k c)**2`` negative.  Genuinely
    complex wavenumbers are rejected.
    """
    k = complex(k)
    mag2 = k.real**2 + k.imag**2
    if abs(k.real * k.imag) > 1e-12 * mag2:
        raise UnsupportedMediumError("wavenumber is neither purely real nor purely imaginary")
    sign = 1.0 if abs(k.real) >= abs(k.imag) else -1.0
    momentum_term = (HBAR * C) ** 2 * mag2
    rest_term = (mass * C**2) ** 2
    return energy**2 - (sign * momentum_term + rest_term)
