"""Phase time of an electron crossing a rectangular barrier, against barrier length.

An electron at 5 eV meets a 10 eV barrier.  Below about kappa*L = 2 the delay
still grows with length; once the barrier is opaque it stops growing and
settles at 2 m / (hbar k kappa), whatever the length.
"""

import math

import numpy as np

from tunneltime import RectangularBarrier, stack_phase_time
from tunneltime.constants import EV, HBAR
from tunneltime.quantum_barrier import opaque_phase_time_asymptote, transmission_probability

E = 5 * EV
barrier = RectangularBarrier.from_ev(10.0, 1e-9)
kappa = barrier.wavenumbers(E)[1]
tau_inf = opaque_phase_time_asymptote(barrier, E)
nu = E / (2 * math.pi * HBAR)

print(f"kappa = {kappa:.4e} 1/m, asymptote = {tau_inf:.4e} s, tau_inf * nu = {tau_inf * nu:.4f}")
print(" kappa*L      L [nm]      |t|^2        tau [s]     tau/tau_inf")
for kl in (0.25, 0.5, 1, 2, 3, 5, 8, 12):
    b = barrier.with_length(kl / kappa)
    tau = stack_phase_time(b.to_stack(), E / HBAR).tau
    print(f"{kl:8.2f} {b.L * 1e9:11.4f} {transmission_probability(b, E):11.3e} "
          f"{tau:13.4e} {tau / tau_inf:12.5f}")

# At E = V/2 the curve is exactly tanh(kappa L).
kls = np.array([0.5, 1.0, 2.0])
ratios = [stack_phase_time(barrier.with_length(x / kappa).to_stack(), E / HBAR).tau / tau_inf
          for x in kls]
print("tanh law check:", np.allclose(ratios, np.tanh(kls), rtol=1e-7))
