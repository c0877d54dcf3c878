"""Command-line driver: ``tunneltime <subcommand> [--config FILE] [options]``.

Data go to ``--output`` (default stdout) as CSV headed by a ``#`` provenance
line; human-readable verdicts and measurements go to stderr.  Exit status is
0 on success, 1 on a runtime error and 2 on a usage or configuration error.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import config as cfgmod
from .delay_time import hartman_scan, stack_phase_time, unwrap_phase
from .errors import ConfigurationError, TunnelTimeError
from .ftir import FtirConfig, coupler_ratio, ftir_kappa, solve_gap_for_ratio
from .scenarios import emit_table, grating_preset, length_family, run_all, scenarios_from_config
from .transfer_matrix import Polarization, transmission_spectrum
from .wavepacket import synthesize_gaussian, transmit

SUBCOMMANDS = ("spectrum", "delay", "hartman", "ftir", "pulse", "table")
NEEDS_CONFIG = ("spectrum", "delay", "hartman", "ftir")


class UsageError(Exception):
    pass


@dataclass
class Command:
    subcommand: str
    config: dict = field(default_factory=dict)
    config_hash: str = "builtin"
    output: str | None = None
    overrides: tuple = ()
    threads: int | None = None

    @property
    def provenance(self):
        text = f"tunneltime {__version__} schema_version={cfgmod.SCHEMA_VERSION} " \
               f"config_sha256={self.config_hash}"
        if self.overrides:
            text += " set=" + ";".join(self.overrides)
        return text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _build_parser():
    parser = _Parser(prog="tunneltime", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"tunneltime {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    helps = {
        "spectrum": "transmittance and unwrapped phase over a frequency grid",
        "delay": "phase time of a stack at one frequency",
        "hartman": "phase time against barrier length, with a saturation verdict",
        "ftir": "double-prism coupling ratio against gap, or the gap for a target ratio",
        "pulse": "Gaussian pulse through a stack: traces and delay measurement",
        "table": "run the scenario catalogue and emit the comparison table",
    }
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--config", help="TOML configuration file")
        p.add_argument("--output", "-o", help="output file (default: stdout)")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="KEY=VALUE", help="override a configuration entry")
        if name in ("delay", "hartman"):
            p.add_argument("--omega0", help="carrier, e.g. 1.2e15, '300 THz' or '5 eV'")
        if name == "table":
            p.add_argument("--threads", type=int, help="worker threads (overrides TUNNELTIME_THREADS)")
    return parser


def parse_invocation(argv):
    """:class:`Command` for ``argv``; raises :class:`UsageError` on bad input."""
    args = _build_parser().parse_args(argv)
    overrides = list(args.overrides)
    if getattr(args, "omega0", None) is not None:
        section = "delay" if args.subcommand == "delay" else "hartman"
        overrides.append(f"{section}.omega0={_quote(args.omega0)}")
    cmd = Command(args.subcommand, output=args.output, overrides=tuple(overrides),
                  threads=getattr(args, "threads", None))
    if args.config:
        try:
            cmd.config, cmd.config_hash = cfgmod.load(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc.strerror}") from exc
        except ConfigurationError as exc:
            raise UsageError(f"config {args.config!r}: {exc}") from exc
    elif args.subcommand in NEEDS_CONFIG:
        raise UsageError(f"tunneltime {args.subcommand}: error: --config is required")
    try:
        for item in overrides:
            cfgmod.apply_override(cmd.config, item)
    except (ConfigurationError, ValueError, IndexError, TypeError) as exc:
        raise UsageError(f"bad override: {exc}") from exc
    return cmd


def _quote(text):
    try:
        float(text)
        return text
    except ValueError:
        return '"' + text.replace('"', "") + '"'


def _section(cmd, name):
    if name not in cmd.config:
        raise ConfigurationError(f"{cmd.subcommand}: configuration lacks a [{name}] section")
    return cmd.config[name]


def _stack(cmd):
    return cfgmod.build_stack(_section(cmd, "stack"))


def _omega0(cmd, *sections):
    for name in sections:
        value = cmd.config.get(name, {}).get("omega0")
        if value is not None:
            return cfgmod.parse_omega(value)
    raise ConfigurationError(f"{cmd.subcommand}: no omega0 given (use --omega0 or [{sections[0]}])")


def _csv(cmd, header, rows, trailer=()):
    buf = io.StringIO()
    buf.write(f"# {cmd.provenance}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else f"{v:.9e}" for v in row])
    for line in trailer:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def _run_spectrum(cmd, err):
    spec = _section(cmd, "spectrum")
    lo, hi = cfgmod.parse_omega(spec["start"]), cfgmod.parse_omega(spec["stop"])
    grid = np.linspace(lo, hi, int(spec.get("points", 512)))
    s = transmission_spectrum(_stack(cmd), grid)
    phi = unwrap_phase(s)
    return _csv(cmd, ("omega_rad_s", "transmittance", "phase_rad"),
                zip(grid, s.transmittance, phi))


def _run_delay(cmd, err):
    omega0 = _omega0(cmd, "delay")
    r = stack_phase_time(_stack(cmd), omega0)
    lines = [
        f"# {cmd.provenance}",
        f"tau_s = {r.tau:.12e}",
        f"omega0_rad_s = {r.omega0:.12e}",
        f"nu_hz = {r.omega0 / (2 * math.pi):.12e}",
        f"ratio = {r.tau * r.omega0 / (2 * math.pi):.9e}",
        f"method = {r.method.value}",
        f"step_rad_s = {r.step:.6e}",
        f"error_s = {r.error:.3e}",
    ]
    return "\n".join(lines) + "\n"


def _run_hartman(cmd, err):
    spec = _section(cmd, "hartman")
    omega0 = _omega0(cmd, "hartman", "delay")
    stack = _stack(cmd)
    family, _ = length_family(stack, omega0)
    lengths = [cfgmod.parse_quantity(v, "length") for v in spec["lengths"]]
    scan = hartman_scan(family, lengths, omega0, bool(spec.get("require_tunneling", True)))
    verdict = f"spread={scan.spread:.6e} saturated={'yes' if scan.saturated else 'no'}"
    err.write(f"hartman: {verdict}\n")
    return _csv(cmd, ("L_m", "tau_s", "opacity"),
                zip(scan.lengths, scan.taus, scan.opacities), (verdict,))


def _ftir_config(spec):
    return FtirConfig(
        float(spec.get("n_gap", 1.0)),
        float(spec["n_guide"]),
        cfgmod.parse_quantity(spec["theta"], "angle"),
        cfgmod.parse_quantity(spec.get("gap", 0.0), "length"),
        cfgmod.parse_quantity(spec["wavelength"], "length"),
        Polarization(spec.get("polarization", "TE")),
    )


def _run_ftir(cmd, err):
    spec = _section(cmd, "ftir")
    cfg = _ftir_config(spec)
    if "target_ratio" in spec:
        gap = solve_gap_for_ratio(cfg, float(spec["target_ratio"]))
        kappa = ftir_kappa(cfg)
        return _csv(cmd, ("target_ratio", "gap_m", "kappa_gap", "ratio"),
                    [(float(spec["target_ratio"]), gap, kappa * gap,
                      coupler_ratio(cfg.with_gap(gap)))])
    if "gaps" in spec:
        gaps = [cfgmod.parse_quantity(g, "length") for g in spec["gaps"]]
    else:
        gaps = np.linspace(cfgmod.parse_quantity(spec["gap_start"], "length"),
                           cfgmod.parse_quantity(spec["gap_stop"], "length"),
                           int(spec.get("gap_points", 50)))
    kappa = ftir_kappa(cfg)
    rows = [(g, kappa * g, coupler_ratio(cfg.with_gap(float(g)))) for g in gaps]
    return _csv(cmd, ("gap_m", "kappa_gap", "ratio"), rows)


def _run_pulse(cmd, err):
    if "stack" in cmd.config:
        spec = _section(cmd, "pulse")
        stack = _stack(cmd)
        pulse = synthesize_gaussian(
            cfgmod.parse_frequency(spec["carrier"]),
            cfgmod.parse_quantity(spec["sigma_t"], "time"),
            cfgmod.parse_quantity(spec["dt"], "time"),
            int(spec.get("samples", 1024)),
        )
        ref = spec.get("reference_length")
        ref = None if ref is None else cfgmod.parse_quantity(ref, "length")
    else:
        preset = grating_preset()
        stack, pulse, ref = preset.stack, preset.pulse(), None
    study = transmit(stack, pulse, ref)
    m = study.measurement
    speed = study.speed_in_c
    summary = [
        f"peak_delay_s={m.peak_delay:.9e}",
        f"centroid_delay_s={m.centroid_delay:.9e}",
        f"correlation={m.correlation:.9f}",
        f"effective_speed_c={'none' if speed is None else f'{speed:.6f}'}",
        f"superluminal={'yes' if speed is not None and speed > 1.0 else 'no'}",
        f"band_truncated={'yes' if study.occupancy.truncated else 'no'}",
        f"front_advance_samples={study.front_advance:.3f}",
    ]
    for line in summary:
        err.write(f"pulse: {line}\n")
    return _csv(cmd, ("t_s", "input_power", "output_power"),
                zip(pulse.times, pulse.power, study.output.power), summary)


def _run_table(cmd, err):
    scenarios = scenarios_from_config(cmd.config) if "scenario" in cmd.config else None
    return emit_table(run_all(scenarios, cmd.threads), cmd.provenance)


_RUNNERS = {
    "spectrum": _run_spectrum,
    "delay": _run_delay,
    "hartman": _run_hartman,
    "ftir": _run_ftir,
    "pulse": _run_pulse,
    "table": _run_table,
}


def execute(cmd, out=None, err=None):
    """Run ``cmd``; returns the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        text = _RUNNERS[cmd.subcommand](copy.deepcopy(cmd), err)
    except ConfigurationError as exc:
        err.write(f"tunneltime {cmd.subcommand}: configuration error: {exc}\n")
        return 2
    except KeyError as exc:
        err.write(f"tunneltime {cmd.subcommand}: configuration error: missing key {exc}\n")
        return 2
    except (TunnelTimeError, ValueError, ArithmeticError) as exc:
        err.write(f"tunneltime {cmd.subcommand}: {type(exc).__name__}: {exc}\n")
        return 1
    if cmd.output:
        with open(cmd.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def main(argv=None, out=None, err=None):
    err = sys.stderr if err is None else err
    try:
        cmd = parse_invocation(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    return execute(cmd, out, err)
