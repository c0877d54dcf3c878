"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line that is printed in the pytest terminal
summary; ``python tests/test_acceptance.py`` prints the same lines directly.
"""

import csv
import math
import os
import time

import numpy as np
import pytest

from oracles import C, EV, HBAR, M_E
from tunneltime.delay_time import goos_haenchen_shift, hartman_scan, phase_time, stack_phase_time
from tunneltime.ftir import FtirConfig, coupler_ratio, ftir_kappa
from tunneltime.quantum_barrier import RectangularBarrier, barrier_amplitude
from tunneltime.scenarios import builtin_scenarios, emit_table, grating_preset, read_table, run_all
from tunneltime.transfer_matrix import ComplexSpectrum, Layer, Stack, stack_amplitudes
from tunneltime.wave_core import Medium
from tunneltime.wavepacket import synthesize_gaussian, transmit

GOLDEN = os.path.join(os.path.dirname(__file__), "data", "table1_golden.csv")
REPORT = []


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {title}: {detail}"
    REPORT.append(line)
    print(line)
    assert ok, line


def _random_stack(rng):
    kind = rng.choice(["TE", "TM", "quantum", "acoustic"])
    n_layers = int(rng.integers(1, 9))
    if kind in ("TE", "TM"):
        n_in = rng.uniform(1.0, 2.0)
        theta = rng.uniform(0.0, 1.2)
        layers = tuple(Layer(Medium.optical(rng.uniform(1.0, 3.5)), rng.uniform(10e-9, 400e-9))
                       for _ in range(n_layers))
        return Stack(Medium.optical(n_in), layers, Medium.optical(rng.uniform(n_in, 3.0)), kind, theta), \
            2 * math.pi * C / np.linspace(400e-9, 1600e-9, 64)[::-1]
    if kind == "quantum":
        mass = M_E * rng.uniform(0.05, 1.0)
        layers = tuple(Layer(Medium.quantum_ev(rng.uniform(-1.0, 3.0), mass), rng.uniform(0.1e-9, 2e-9))
                       for _ in range(n_layers))
        exit_ = Medium.quantum_ev(rng.uniform(-0.5, 0.05), mass)
        return Stack(Medium.quantum(0.0, mass), layers, exit_), np.linspace(0.1, 4.0, 64) * EV / HBAR
    layers = tuple(Layer(Medium.acoustic(rng.uniform(300, 6000), rng.uniform(1, 8000)),
                         rng.uniform(1e-4, 5e-3)) for _ in range(n_layers))
    entry = Medium.acoustic(1480.0, 1000.0)
    return Stack(entry, layers, Medium.acoustic(rng.uniform(300, 6000), rng.uniform(1, 8000)),
                 theta=0.0), 2 * math.pi * np.linspace(1e4, 2e6, 64)


def test_01_unitarity():
    rng = np.random.default_rng(20240101)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        stack, grid = _random_stack(rng)
        r, t, flux = stack_amplitudes(stack, grid)
        worst = max(worst, float(np.max(np.abs(np.abs(r) ** 2 + flux * np.abs(t) ** 2 - 1))))
    elapsed = time.perf_counter() - start
    record(1, "unitarity", worst < 1e-10 and elapsed < 10,
           f"max | |r|^2 + flux |t|^2 - 1 | = {worst:.2e} over 1000 stacks x 64 frequencies in {elapsed:.2f} s")


def test_02_closed_form_equivalence():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        b = RectangularBarrier.from_ev(rng.uniform(0.5, 20.0), rng.uniform(0.05e-9, 3e-9),
                                       M_E * rng.uniform(0.05, 1.0))
        E = rng.uniform(0.02, 0.98) * b.V
        _, t, _ = stack_amplitudes(b.to_stack(), E / HBAR)
        ref = barrier_amplitude(b, E)
        worst = max(worst, abs(t - ref) / abs(ref))
    record(2, "closed-form equivalence", worst < 1e-10,
           f"max relative |t_tmm - t_closed| = {worst:.2e} over 100 barriers")


def test_03_hartman_effect():
    E = 5 * EV
    kappa = math.sqrt(2 * M_E * E) / HBAR
    barrier = RectangularBarrier.from_ev(10.0, 1e-9)
    kl = np.linspace(3, 12, 10)
    electron = hartman_scan(lambda L: barrier.with_length(L).to_stack(), kl / kappa, E / HBAR)

    wide = Medium.optical(1.0, cutoff=C / (2 * 22.86e-3))
    narrow = Medium.optical(1.0, cutoff=9.49e9)
    omega = 2 * math.pi * 8.7e9
    k_wg = math.sqrt((2 * math.pi * 9.49e9) ** 2 - omega**2) / C
    guide = hartman_scan(lambda L: Stack(wide, (Layer(narrow, L),), wide), kl / k_wg, omega)

    air = Medium.optical(1.0)
    control = hartman_scan(lambda L: Stack(air, (Layer(air, L),)), kl / k_wg, omega,
                           require_tunneling=False)
    ok = electron.spread < 0.02 and guide.spread < 0.02 and not control.saturated
    record(3, "Hartman effect", ok,
           f"spread electron {electron.spread:.2e}, waveguide {guide.spread:.2e}, "
           f"free-space control {control.spread:.2f} (saturated={control.saturated})")


def test_04_universal_time():
    start = time.perf_counter()
    records = run_all()
    elapsed = time.perf_counter() - start
    ratios = np.array([r.ratio for r in records])
    nus = np.array([r.nu for r in records])
    gm = float(np.exp(np.mean(np.log(ratios))))
    ok = (len(records) >= 8 and np.all((ratios >= 0.1) & (ratios <= 10))
          and 0.3 <= gm <= 3 and elapsed < 60 and nus.min() < 2e3 and nus.max() > 4e14
          and all(r.opacity >= 3 for r in records))
    record(4, "universal tunneling time", ok,
           f"{len(records)} presets, {nus.min():.3g}..{nus.max():.3g} Hz, tau*nu in "
           f"[{ratios.min():.3f}, {ratios.max():.3f}], geometric mean {gm:.3f}, {elapsed:.1f} s")


def test_05_table_fidelity():
    emitted = read_table(emit_table(run_all()))
    with open(GOLDEN, encoding="utf-8") as fh:
        golden = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    cols = ("name", "T_s", "tau_paper_s", "ratio_paper")
    got = [",".join(row[c] for c in cols) for row in emitted]
    want = [",".join(row[c] for c in cols) for row in golden]
    mismatches = [g for g, w in zip(got, want) if g != w] + (["row count"] if len(got) != len(want) else [])
    record(5, "table fidelity", not mismatches,
           f"{len(want)} golden rows, mismatches: {mismatches or 'none'}")


def test_06_cross_oracle_delay():
    nu = 3e14
    lam = C / nu
    cell = (Layer(Medium.optical(2.25), lam / (4 * 2.25)), Layer(Medium.optical(1.0), lam / 4))
    stack = Stack.periodic(Medium.optical(1.0), cell, 10)
    tau = stack_phase_time(stack, 2 * math.pi * nu).tau
    study = transmit(stack, synthesize_gaussian(nu, 100e-15, 5e-15, 1024))
    err = abs(study.measurement.peak_delay / tau - 1)
    record(6, "cross-oracle delay", err < 0.01,
           f"phase time {tau:.4e} s, pulse peak delay {study.measurement.peak_delay:.4e} s, "
           f"relative difference {err:.2e}")


def test_07_ftir_decay_law():
    worst = 0.0
    for pol in ("TE", "TM"):
        cfg = FtirConfig(1.0, 1.5, math.radians(45), 0.0, 850e-9, pol)
        k = ftir_kappa(cfg)
        gaps = np.linspace(2, 6, 41) / k
        slope = np.polyfit(gaps, np.log([coupler_ratio(cfg.with_gap(g)) for g in gaps]), 1)[0]
        worst = max(worst, abs(slope / (-2 * k) - 1))
    record(7, "FTIR decay law", worst < 5e-3,
           f"max relative slope error vs -2 kappa = {worst:.2e} (TE and TM, kappa*gap in [2, 6])")


def test_08_superluminal_peak():
    g = grating_preset()
    study = transmit(g.stack, g.pulse())
    speed = study.speed_in_c
    m = study.measurement
    ok = (speed > 1.2 and m.correlation > 0.99 and not study.occupancy.truncated
          and study.front_advance <= 0)
    record(8, "superluminal peak", ok,
           f"effective speed {speed:.2f} c, correlation {m.correlation:.4f}, "
           f"truncated={study.occupancy.truncated}, front advance {study.front_advance:.0f} samples")


def test_09_goos_haenchen():
    lam = 850e-9
    theta = math.asin(1 / 1.5) + math.radians(5)
    d = goos_haenchen_shift(Stack(Medium.optical(1.5), (), Medium.optical(1.0), "TE", theta),
                            2 * math.pi * C / lam)
    record(9, "Goos-Haenchen shift", 0.1 <= d / lam <= 10, f"D = {d / lam:.3f} wavelengths")


def test_10_differentiation():
    w0 = 2e15
    grid = np.linspace(0.5 * w0, 1.5 * w0, 21)
    worst = 0.0
    for a, b in ((1e-14, 3e-30), (-2e-15, 5e-31), (5e-13, -1e-29)):
        s = ComplexSpectrum.from_function(grid, lambda w: np.exp(1j * (a * w + b * (w - w0) ** 2)))
        for w in (0.8 * w0, w0, 1.2 * w0):
            exact = a + 2 * b * (w - w0)
            worst = max(worst, abs(phase_time(s, w).tau / exact - 1))
    air = Medium.optical(1.0)
    L = 0.3
    free = abs(stack_phase_time(Stack(air, (Layer(air, L),)), 2 * math.pi * 1e10).tau / (L / C) - 1)
    record(10, "differentiation", worst < 1e-8 and free < 1e-6,
           f"quadratic phase max rel error {worst:.2e}, free space tau vs L/c {free:.2e}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
