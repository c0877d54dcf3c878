"""TOML configuration files shared by the scenarios catalogue and the CLI.

Bare numbers are SI.  Strings carry an explicit unit suffix, e.g.
``"5 eV"``, ``"2.34 fs"``, ``"8.7 GHz"``, ``"45 deg"``.  Frequency-like values
(``omega0``, spectrum ``start``/``stop``) accept a bare number in rad/s, a
frequency in Hz units, or a quantum energy (converted with ``E = hbar
omega``).  See README for the full schema.
"""

from __future__ import annotations

import hashlib
import math
import re
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .constants import EV, HBAR, M_E
from .errors import ConfigurationError
from .transfer_matrix import Layer, Polarization, Stack
from .wave_core import Kind, Medium

SCHEMA_VERSION = 1

_UNITS = {
    "energy": {"J": 1.0, "eV": EV, "meV": 1e-3 * EV, "keV": 1e3 * EV},
    "length": {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "µm": 1e-6, "nm": 1e-9, "pm": 1e-12},
    "time": {"s": 1.0, "ms": 1e-3, "us": 1e-6, "µs": 1e-6, "ns": 1e-9, "ps": 1e-12, "fs": 1e-15,
             "as": 1e-18},
    "frequency": {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9, "THz": 1e12, "PHz": 1e15},
    "angle": {"rad": 1.0, "deg": math.pi / 180.0},
    "mass": {"kg": 1.0, "me": M_E},
    "speed": {"m/s": 1.0},
    "density": {"kg/m3": 1.0},
    "wavenumber": {"1/m": 1.0, "1/um": 1e6, "1/nm": 1e9},
}

_QUANTITY = re.compile(r"^\s*([-+]?[0-9.]+(?:[eE][-+]?\d+)?)\s*(\S*)\s*$")


def _split(value):
    m = _QUANTITY.match(str(value))
    if not m:
        raise ConfigurationError(f"cannot parse quantity {value!r}")
    return float(m.group(1)), m.group(2)


def parse_quantity(value, dimension):
    """SI value of a bare number or a ``"<number> <unit>"`` string."""
    if isinstance(value, bool):
        raise ConfigurationError(f"expected a {dimension}, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    number, unit = _split(value)
    if not unit:
        return number
    table = _UNITS[dimension]
    if unit not in table:
        raise ConfigurationError(f"unit {unit!r} is not a {dimension} unit ({', '.join(table)})")
    return number * table[unit]


def parse_omega(value):
    """Angular frequency from rad/s, a frequency, or a quantum energy."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    number, unit = _split(value)
    if unit in ("", "rad/s"):
        return number
    if unit in _UNITS["frequency"]:
        return 2.0 * math.pi * number * _UNITS["frequency"][unit]
    if unit in _UNITS["energy"]:
        return number * _UNITS["energy"][unit] / HBAR
    raise ConfigurationError(f"unit {unit!r} is not a frequency or energy unit")


def parse_frequency(value):
    """Frequency in Hz (bare numbers are Hz)."""
    if isinstance(value, str) and _split(value)[1] in _UNITS["energy"]:
        return parse_omega(value) / (2.0 * math.pi)
    return parse_quantity(value, "frequency")


def load_text(text):
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigurationError(f"invalid TOML: {exc}") from exc
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigurationError(f"unsupported schema_version {version!r}")
    return data


def load(path):
    """Parsed configuration and the SHA-256 of the file bytes."""
    with open(path, "rb") as fh:
        raw = fh.read()
    return load_text(raw.decode("utf-8")), hashlib.sha256(raw).hexdigest()


def _parse_scalar(text):
    try:
        return tomllib.loads(f"v = {text}")["v"]
    except tomllib.TOMLDecodeError:
        return text


def apply_override(data, assignment):
    """Apply ``dotted.key=value`` in place; list elements are addressed by index."""
    if "=" not in assignment:
        raise ConfigurationError(f"override {assignment!r} is not of the form key=value")
    key, text = assignment.split("=", 1)
    parts = key.strip().split(".")
    node = data
    for part in parts[:-1]:
        if isinstance(node, list):
            node = node[int(part)]
        else:
            node = node.setdefault(part, {})
    last = parts[-1]
    value = _parse_scalar(text.strip())
    if isinstance(node, list):
        node[int(last)] = value
    else:
        node[last] = value
    return data


def build_medium(kind, spec):
    kind = Kind(kind)
    try:
        if kind is Kind.OPTICAL:
            cutoff = parse_quantity(spec.get("cutoff", 0.0), "frequency")
            return Medium.optical(float(spec["n"]), cutoff)
        if kind is Kind.QUANTUM:
            if "mass_ratio" in spec:
                mass = float(spec["mass_ratio"]) * M_E
            else:
                mass = parse_quantity(spec.get("mass", M_E), "mass")
            return Medium.quantum(parse_quantity(spec.get("V", 0.0), "energy"), mass)
        return Medium.acoustic(parse_quantity(spec["speed"], "speed"),
                               parse_quantity(spec["density"], "density"))
    except KeyError as exc:
        raise ConfigurationError(f"{kind.value} medium is missing {exc.args[0]!r}") from exc


def _layers(kind, entries):
    return tuple(
        Layer(build_medium(kind, entry), parse_quantity(entry["thickness"], "length"))
        for entry in entries
    )


def build_stack(spec):
    """Stack from a ``[stack]`` table."""
    if "entry" not in spec:
        raise ConfigurationError("stack needs an 'entry' medium")
    kind = spec.get("kind", "optical")
    entry = build_medium(kind, spec["entry"])
    exit_ = build_medium(kind, spec["exit"]) if "exit" in spec else entry
    layers = _layers(kind, spec.get("layers", ())) * int(spec.get("periods", 1))
    layers += _layers(kind, spec.get("cap", ()))
    pol = spec.get("polarization")
    k_par = spec.get("k_parallel")
    return Stack(
        entry,
        layers,
        exit_,
        Polarization(pol) if pol else None,
        parse_quantity(spec.get("theta", 0.0), "angle"),
        None if k_par is None else parse_quantity(k_par, "wavenumber"),
    )
