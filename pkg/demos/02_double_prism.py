"""Light tunneling across the air gap between two glass prisms.

Above the critical angle the field in the gap is evanescent.  The coupled
power falls as exp(-2 kappa gap) once the gap is opaque, while the delay at
fixed transverse wavenumber saturates.  The reflected beam at a single
interface is displaced along the surface by the Goos-Haenchen shift.
"""

import math

import numpy as np

from tunneltime import FtirConfig, coupler_ratio, ftir_kappa, solve_gap_for_ratio
from tunneltime.ftir import gap_phase_time, interface_shift

cfg = FtirConfig(n_gap=1.0, n_guide=1.5, theta=math.radians(45), gap=0.0, wavelength=850e-9)
kappa = ftir_kappa(cfg)
nu = cfg.omega / (2 * math.pi)
print(f"critical angle {math.degrees(cfg.critical_angle):.2f} deg, kappa = {kappa:.4e} 1/m")

print(" kappa*gap   gap [nm]    ratio        exp(-2 kg)   tau*nu")
gaps = np.array([0.1, 0.5, 1, 2, 3, 4, 6]) / kappa
for g in gaps:
    c = cfg.with_gap(g)
    print(f"{kappa * g:9.2f} {g * 1e9:9.1f} {coupler_ratio(c):12.4e} {math.exp(-2 * kappa * g):12.4e}"
          f" {gap_phase_time(c).tau * nu:8.4f}")

slope_gaps = np.linspace(2, 6, 21) / kappa
slope = np.polyfit(slope_gaps, np.log([coupler_ratio(cfg.with_gap(g)) for g in slope_gaps]), 1)[0]
print(f"log-slope / (-2 kappa) = {slope / (-2 * kappa):.5f}")

print(f"gap for a 50/50 coupler: {solve_gap_for_ratio(cfg, 0.5) * 1e9:.2f} nm")

shifted = FtirConfig(1.0, 1.5, cfg.critical_angle + math.radians(5), 0.0, 850e-9)
print(f"Goos-Haenchen shift 5 deg above critical: {interface_shift(shifted) / 850e-9:.3f} wavelengths")
