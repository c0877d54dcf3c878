"""Physical constants (CODATA 2018, SI units) and unit conversions.

Every module takes its constants from here so that frozen test values stay
bit-stable.
"""

import math

C = 299_792_458.0  # speed of light in vacuum, m/s (exact)
H = 6.626_070_15e-34  # Planck constant, J s (exact)
HBAR = 1.054_571_817e-34  # reduced Planck constant, J s
M_E = 9.109_383_7015e-31  # electron rest mass, kg
E_CHARGE = 1.602_176_634e-19  # elementary charge, C (exact)

EV = E_CHARGE  # one electronvolt in joules


def ev_to_joule(energy_ev):
    return energy_ev * EV


def joule_to_ev(energy_j):
    return energy_j / EV


def energy_to_omega(energy_j):
    """Angular frequency for a quantum energy, using E = hbar * omega."""
    return energy_j / HBAR


def omega_to_energy(omega):
    return HBAR * omega


def hz_to_omega(nu):
    return 2.0 * math.pi * nu


def omega_to_hz(omega):
    return omega / (2.0 * math.pi)
