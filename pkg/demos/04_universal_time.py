"""Delay against oscillation period for every built-in experiment.

Twelve barriers, from an acoustic duct at 0.9 kHz to a dielectric mirror at
430 THz, optical, microwave, electronic and acoustic.  For each one the
simulated delay is compared with the period T = 1/nu of the wave.
"""

import numpy as np

from tunneltime import builtin_scenarios, run_all

records = run_all()
notes = {s.name: s.note for s in builtin_scenarios()}
print(f"{'preset':20s} {'nu [Hz]':>10s} {'opacity':>8s} {'tau*nu':>8s} {'measured':>9s}")
for r in records:
    print(f"{r.name:20s} {r.nu:10.3g} {r.opacity:8.2f} {r.ratio:8.3f} {r.ratio_paper:9.3f}")
ratios = np.array([r.ratio for r in records])
print(f"geometric mean of tau*nu: {np.exp(np.mean(np.log(ratios))):.3f}")
print()
for name, note in notes.items():
    print(f"{name}: {note}")
