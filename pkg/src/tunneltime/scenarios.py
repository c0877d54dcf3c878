"""Catalogue of tunneling experiments and the report comparing ``tau`` with ``T = 1/nu``.

Published delay measurements give the carrier and the measured delay but
not the barrier geometry, so every preset here carries a representative
geometry of its own, chosen to be opaque (``kappa L >= 3``) at the carrier.
The simulated delay depends only weakly on that choice once the barrier is
opaque, which is the point being tested.  Measured delays are stored as
display metadata and never enter a computation.

Carrier choice: ``nu = 1 / T`` with ``T`` the oscillation time quoted for the
experiment.  For particles ``nu = E / h``, so the preset energy is ``h / T``.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import build_stack, parse_frequency
from .constants import C, H, M_E
from .delay_time import hartman_scan, stack_phase_time
from .errors import ConfigurationError, NotTunnelingError, TunnelTimeError
from .ftir import FtirConfig, ftir_kappa
from .transfer_matrix import Layer, Stack, barrier_opacity, detect_period
from .wave_core import Medium, propagating_wavenumber

THREADS_ENV = "TUNNELTIME_THREADS"
ANALYSES = ("phase_time", "hartman", "pulse")
TABLE_COLUMNS = (
    "name", "family", "nu_hz", "T_s", "tau_sim_s", "ratio_sim", "tau_paper_s", "ratio_paper",
)

FTIR = "frustrated total reflection"
LATTICE = "photonic lattice"
WAVEGUIDE = "undersized waveguide"
ELECTRON = "electron tunneling"
ACOUSTIC = "acoustic tunneling"
FAMILIES = (FTIR, LATTICE, WAVEGUIDE, ELECTRON, ACOUSTIC)


@dataclass(frozen=True)
class Scenario:
    """One tunneling experiment with a representative barrier.

    ``tau_paper`` is the measured delay written in seconds exactly as it is
    emitted in the report (``"a..b"`` for a quoted range, a leading ``~`` for
    an approximate value); ``ratio_paper`` is the measured ``tau / T`` (range
    midpoint for ranges).
    """

    name: str
    family: str
    nu: float
    stack: Stack
    analyses: tuple = ("phase_time",)
    reference: str = ""
    tau_paper: str = ""
    ratio_paper: Optional[float] = None
    note: str = ""

    def __post_init__(self):
        if not self.nu > 0 or not math.isfinite(self.nu):
            raise ConfigurationError(f"scenario {self.name!r}: carrier nu must be positive")
        unknown = set(self.analyses) - set(ANALYSES)
        if unknown:
            raise ConfigurationError(f"scenario {self.name!r}: unknown analyses {sorted(unknown)}")
        object.__setattr__(self, "analyses", tuple(self.analyses))

    @property
    def omega(self):
        return 2.0 * math.pi * self.nu

    @property
    def period(self):
        return 1.0 / self.nu


@dataclass(frozen=True)
class ScenarioRecord:
    name: str
    family: str
    nu: float
    tau_sim: float
    opacity: float
    delay_error: float
    tau_paper: str = ""
    ratio_paper: Optional[float] = None
    hartman_spread: Optional[float] = None
    pulse_delay: Optional[float] = None

    @property
    def T(self):
        return 1.0 / self.nu

    @property
    def ratio(self):
        return self.tau_sim * self.nu


def _optical_qw_cell(n_low, n_high, nu):
    lam = C / nu
    return (Layer(Medium.optical(n_high), lam / (4 * n_high)),
            Layer(Medium.optical(n_low), lam / (4 * n_low)))


def _double_prism(name, reference, nu, n_prism, theta_deg, tau_paper, ratio_paper, note):
    cfg = FtirConfig(1.0, n_prism, math.radians(theta_deg), 0.0, C / nu)
    cfg = cfg.with_gap(4.0 / ftir_kappa(cfg))
    stack = cfg.stack().with_k_parallel(cfg.k_parallel)
    return Scenario(name, FTIR, nu, stack, ("phase_time", "hartman"), reference,
                    tau_paper, ratio_paper, note)


def _acoustic_qw(nu, low, high, periods, entry):
    cell = (Layer(high, high.speed / (4 * nu)), Layer(low, low.speed / (4 * nu)))
    return Stack.periodic(entry, cell, periods, cap=cell[:1])


def builtin_scenarios():
    """The twelve presets, one per measured row, in table order."""
    out = []
    out.append(_double_prism(
        "haibel_nimtz", "Haibel/Nimtz", 1.0 / 120e-12, 1.605, 45.0, "1.17e-10", 117 / 120,
        "perspex prisms (n = 1.605) at 45 deg, air gap with kappa*gap = 4, TE, fixed k_par"))
    out.append(_double_prism(
        "carey", "Carey et al.", 1.0 / 3e-12, 1.5, 45.0, "~1e-12", 1 / 3,
        "nu = 1/T = 333 GHz assumed from T alone; glass-like prisms n = 1.5 at 45 deg"))
    out.append(_double_prism(
        "balcou_dutriaux", "Balcou/Dutriaux", 1.0 / 11.3e-15, 1.5, 45.0, "3e-14", 30 / 11.3,
        "glass prisms n = 1.5 at 45 deg, air gap with kappa*gap = 4"))
    out.append(_double_prism(
        "mugnai", "Mugnai et al.", 1.0 / 100e-12, 1.49, 45.0, "1.34e-10", 134 / 100,
        "paraffin prisms n = 1.49 at 45 deg, air gap with kappa*gap = 4"))

    nu = 1.0 / 2.34e-15
    cell = _optical_qw_cell(1.41, 2.22, nu)
    out.append(Scenario(
        "steinberg", LATTICE, nu,
        Stack.periodic(Medium.optical(1.0), cell, 7, Medium.optical(1.0), cap=cell[:1]),
        ("phase_time", "hartman", "pulse"), "Steinberg et al.", "2.13e-15", 2.13 / 2.34,
        "(HL)^7 H quarter-wave mirror, TiO2 2.22 / SiO2 1.41, gap centre at nu"))
    nu = 1.0 / 2.7e-15
    cell = _optical_qw_cell(1.46, 2.35, nu)
    out.append(Scenario(
        "spielmann", LATTICE, nu,
        Stack.periodic(Medium.optical(1.0), cell, 8, Medium.optical(1.0), cap=cell[:1]),
        ("phase_time", "hartman"), "Spielmann et al.", "2.7e-15", 1.0,
        "(HL)^8 H quarter-wave mirror, n 2.35 / 1.46, gap centre at nu"))
    nu = 1.0 / 115e-12
    cell = _optical_qw_cell(1.0, 1.605, nu)
    out.append(Scenario(
        "nimtz_lattice", LATTICE, nu,
        Stack.periodic(Medium.optical(1.0), cell, 10, Medium.optical(1.0), cap=cell[:1]),
        ("phase_time", "hartman"), "Nimtz et al.", "8.1e-11", 81 / 115,
        "microwave lattice of 10 perspex (1.605) / air quarter-wave periods plus cap"))

    nu = 1.0 / 115e-12
    wide = Medium.optical(1.0, cutoff=C / (2 * 22.86e-3))
    narrow = Medium.optical(1.0, cutoff=9.49e9)
    out.append(Scenario(
        "enders_nimtz", WAVEGUIDE, nu, Stack(wide, (Layer(narrow, 50e-3),), wide),
        ("phase_time", "hartman"), "Enders/Nimtz", "1.3e-10", 130 / 115,
        "X-band guide (cutoff 6.56 GHz) with a 50 mm section of cutoff 9.49 GHz, kappa*L = 4"))

    period = 2.43e-15
    energy = H / period
    free = Medium.quantum(0.0)
    barrier = Medium.quantum(2.0 * energy)
    kappa = math.sqrt(2 * M_E * energy) * 2 * math.pi / H
    out.append(Scenario(
        "sekatskii_letokhov", ELECTRON, 1.0 / period,
        Stack(free, (Layer(barrier, 5.0 / kappa),), free),
        ("phase_time", "hartman"), "Sekatskii/Letokhov", "6e-15..8e-15", 7 / 2.43,
        "electron at E = h/T = 1.70 eV on a V = 2E rectangular barrier, kappa*L = 5; "
        "the quoted T is a lower bound, nu = 1/T taken at the bound"))

    period = 37.5e-15
    m_eff = 0.067 * M_E
    well = Medium.quantum(0.0, m_eff)
    wall = Medium.quantum_ev(0.3, m_eff)
    cell = (Layer(wall, 2e-9), Layer(well, 7.6e-9))
    out.append(Scenario(
        "pereyra", ELECTRON, 1.0 / period,
        Stack.periodic(well, cell, 3, cap=cell[:1]),
        ("phase_time",), "Pereyra", "1e-13", 100 / 37.5,
        "GaAs/AlGaAs superlattice (m* = 0.067 m_e, 0.3 eV walls of 2 nm, 7.6 nm wells), "
        "4 barriers, E = h/T = 0.110 eV inside a minigap; mapping is interpretive"))

    water = Medium.acoustic(1480.0, 1000.0)
    pmma = Medium.acoustic(2700.0, 1190.0)
    out.append(Scenario(
        "yang", ACOUSTIC, 1e6, _acoustic_qw(1e6, water, pmma, 5, water),
        ("phase_time", "hartman"), "Yang et al.", "6e-07..1e-06", 0.8,
        "water / PMMA phononic mirror, 5 quarter-wave periods plus cap, gap centre 1 MHz"))
    # duct sections enter through rho / S: an area step acts as an impedance step
    nu = 1.0 / 1.12e-3
    narrow_duct = Medium.acoustic(343.0, 1.204)
    wide_duct = Medium.acoustic(343.0, 1.204 / 2.0)
    out.append(Scenario(
        "robertson", ACOUSTIC, nu, _acoustic_qw(nu, wide_duct, narrow_duct, 5, narrow_duct),
        ("phase_time", "hartman"), "Robertson et al.", "0.0009", 0.9 / 1.12,
        "air duct with 5 quarter-wave periods of cross-section ratio 2 plus cap"))
    return tuple(out)


def builtin_scenario(name):
    for s in builtin_scenarios():
        if s.name == name:
            return s
    raise ConfigurationError(f"no built-in scenario named {name!r}")


def length_family(stack, omega):
    """Barrier family and nominal length for a Hartman scan of ``stack``.

    Periodic stacks grow by whole periods (lengths are period multiples);
    other stacks scale every evanescent layer together, or every layer when
    none is evanescent.
    """
    p = detect_period(stack.layers)
    if p is not None:
        cell = stack.layers[:p]
        cap = stack.layers[p * (len(stack.layers) // p):]
        span = sum(layer.thickness for layer in cell)

        def family(L):
            return stack.with_layers(cell * max(1, round(L / span)) + cap)

        return family, span * (len(stack.layers) // p)

    k_par = float(stack.k_par(omega))
    evanescent = [
        complex(propagating_wavenumber(omega, layer.medium, k_par)).imag > 0
        for layer in stack.layers
    ]
    if not any(evanescent):
        # propagating control: scale the whole stack
        evanescent = [True] * len(stack.layers)
    if not stack.layers:
        raise NotTunnelingError("stack has no layers to scale")
    L0 = sum(layer.thickness for layer, e in zip(stack.layers, evanescent) if e)

    def family(L):
        scale = L / L0
        return stack.with_layers(
            Layer(layer.medium, layer.thickness * scale) if e else layer
            for layer, e in zip(stack.layers, evanescent)
        )

    return family, L0


def _hartman_spread(stack, omega):
    family, L0 = length_family(stack, omega)
    if detect_period(stack.layers) is not None:
        span = L0 / (len(stack.layers) // detect_period(stack.layers))
        n0 = round(L0 / span)
        lengths = span * np.array([n0, n0 + 2, n0 + 4, 2 * n0])
        lengths = np.unique(lengths)
    else:
        lengths = L0 * np.array([1.0, 1.5, 2.0, 3.0])
    return hartman_scan(family, lengths, omega).spread


def _pulse_delay(scenario):
    from .wavepacket import synthesize_gaussian, transmit

    sigma_t = 20.0 / scenario.nu
    pulse = synthesize_gaussian(scenario.nu, sigma_t, sigma_t / 16.0, 512)
    return transmit(scenario.stack, pulse).measurement.peak_delay


def _tag(exc, name):
    exc.scenario = name
    if exc.args:
        exc.args = (f"scenario {name!r}: {exc.args[0]}",) + exc.args[1:]
    return exc


def run_scenario(s):
    """Simulated delay of one scenario.

    Raises
    ------
    NotTunnelingError
        If the preset barrier is not evanescent at the carrier.
    TunnelTimeError
        Any solver or differentiation error, with the scenario name prefixed.
    """
    try:
        opacity = barrier_opacity(s.stack, s.omega)
        if opacity <= 0.0:
            raise NotTunnelingError(f"barrier is propagating at nu = {s.nu!r} Hz")
        result = stack_phase_time(s.stack, s.omega)
        spread = _hartman_spread(s.stack, s.omega) if "hartman" in s.analyses else None
        pulse = _pulse_delay(s) if "pulse" in s.analyses else None
    except (TunnelTimeError, ValueError) as exc:
        raise _tag(exc, s.name)
    return ScenarioRecord(s.name, s.family, s.nu, result.tau, opacity, result.error,
                          s.tau_paper, s.ratio_paper, spread, pulse)


def thread_count(threads=None):
    if threads is not None:
        return max(1, int(threads))
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigurationError(f"{THREADS_ENV}={raw!r} is not an integer") from None


def run_all(scenarios=None, threads=None):
    """Records for ``scenarios`` (built-ins by default), in input order."""
    scenarios = builtin_scenarios() if scenarios is None else tuple(scenarios)
    workers = thread_count(threads)
    if workers == 1:
        return [run_scenario(s) for s in scenarios]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(run_scenario, scenarios))


def _fmt(x):
    return "" if x is None else f"{x:.6g}"


def emit_table(records, provenance=None):
    """CSV report; ``provenance`` becomes a leading ``#`` comment line."""
    if not records:
        raise ConfigurationError("emit_table needs at least one record")
    buf = io.StringIO()
    if provenance:
        buf.write(f"# {provenance}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for r in records:
        writer.writerow([
            r.name, r.family, _fmt(r.nu), _fmt(r.T), _fmt(r.tau_sim), _fmt(r.ratio),
            r.tau_paper or "", "" if r.ratio_paper is None else f"{r.ratio_paper:.3g}",
        ])
    return buf.getvalue()


def read_table(text):
    """Rows of an emitted report as dicts (comment lines skipped)."""
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(lines))


def scenarios_from_config(data):
    """Scenarios from the ``[[scenario]]`` array of a parsed configuration."""
    entries = data.get("scenario")
    if not entries:
        raise ConfigurationError("configuration has no [[scenario]] entries")
    out = []
    for i, entry in enumerate(entries):
        try:
            name = entry["name"]
            stack = build_stack(entry["stack"])
            nu = parse_frequency(entry["nu"])
        except KeyError as exc:
            raise ConfigurationError(f"scenario #{i} is missing {exc.args[0]!r}") from exc
        family = entry.get("family", "")
        ratio = entry.get("ratio_paper")
        out.append(Scenario(
            name, family, nu, stack, tuple(entry.get("analyses", ("phase_time",))),
            entry.get("reference", ""), str(entry.get("tau_paper", "")),
            None if ratio is None else float(ratio), entry.get("note", ""),
        ))
    return tuple(out)


@dataclass(frozen=True)
class GratingPreset:
    """Band-gap pulse experiment: a weak fiber grating and a Gaussian at gap centre."""

    stack: Stack
    carrier: float
    sigma_t: float
    dt: float
    samples: int
    note: str = field(default="")

    def pulse(self):
        from .wavepacket import synthesize_gaussian

        return synthesize_gaussian(self.carrier, self.sigma_t, self.dt, self.samples)


def grating_preset():
    """Fiber Bragg grating, n 1.45 / 1.462 in 600 quarter-wave periods at 2e14 Hz.

    The grating is about 0.3 mm long with ``kappa L`` about 5 at gap centre;
    a 2 ps Gaussian fits inside the stop band.
    """
    nu = 2e14
    cell = _optical_qw_cell(1.45, 1.462, nu)
    stack = Stack.periodic(Medium.optical(1.45), cell, 600)
    return GratingPreset(stack, nu, 2e-12, 1e-13, 1024,
                         "weak index grating, 600 periods, carrier at the Bragg frequency")
