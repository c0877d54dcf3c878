"""Closed-form rectangular potential barrier.

The amplitude is referenced to the barrier faces, like every amplitude in
:mod:`tunneltime.transfer_matrix`: for ``0 < E < V``

    t = 1 / (cosh(kappa L) + 1j * (kappa/k - k/kappa) / 2 * sinh(kappa L))

which is the textbook amplitude multiplied by ``exp(1j k L)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import EV, HBAR, M_E
from .errors import DomainError
from .transfer_matrix import Layer, Stack
from .wave_core import Medium, quantum_kappa


@dataclass(frozen=True)
class RectangularBarrier:
    """Potential ``V`` (J) of length ``L`` (m) on a zero background."""

    V: float
    L: float
    m0: float = M_E

    def __post_init__(self):
        if not self.V > 0:
            raise DomainError("barrier height V must be positive")
        if not self.L >= 0:
            raise DomainError("barrier length L must be >= 0")
        if not self.m0 > 0:
            raise DomainError("mass must be positive")

    @classmethod
    def from_ev(cls, V_ev, L, m0=M_E):
        return cls(V_ev * EV, L, m0)

    def with_length(self, L):
        return RectangularBarrier(self.V, L, self.m0)

    def wavenumbers(self, E):
        """``(k, kappa)`` outside and inside the barrier."""
        self._check_energy(E)
        k = math.sqrt(2.0 * self.m0 * E) / HBAR
        return k, quantum_kappa(E, self.V, self.m0)

    def opacity(self, E):
        return self.wavenumbers(E)[1] * self.L

    def to_stack(self):
        background = Medium.quantum(0.0, self.m0)
        return Stack(background, (Layer(Medium.quantum(self.V, self.m0), self.L),), background)

    def _check_energy(self, E):
        if not 0.0 < E < self.V:
            raise DomainError(f"closed form needs 0 < E < V (E={E!r}, V={self.V!r})")


def barrier_amplitude(b, E):
    """Face-referenced transmission amplitude for ``0 < E < V``."""
    k, kappa = b.wavenumbers(E)
    x = kappa * b.L
    if x == 0.0:
        return 1.0 + 0j
    alpha = 0.5 * (kappa / k - k / kappa)
    # divide through by exp(x) so that opaque barriers do not overflow
    em = math.exp(-2.0 * x)
    denom = 0.5 * (1.0 + em) + 1j * alpha * 0.5 * (1.0 - em)
    return math.exp(-x) / denom


def transmission_probability(b, E):
    """``|t|**2 = 1 / (1 + V**2 sinh(kappa L)**2 / (4 E (V - E)))``."""
    _, kappa = b.wavenumbers(E)
    return 1.0 / (1.0 + b.V**2 * math.sinh(kappa * b.L) ** 2 / (4.0 * E * (b.V - E)))


def opaque_phase_time_asymptote(b, E):
    """Length-independent phase time ``2 m0 / (hbar k kappa)`` of an opaque barrier."""
    if E <= 1e-6 * b.V or E >= (1.0 - 1e-6) * b.V:
        raise DomainError("asymptote diverges at E -> 0 and E -> V")
    k, kappa = b.wavenumbers(E)
    return 2.0 * b.m0 / (HBAR * k * kappa)
