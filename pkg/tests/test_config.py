import hashlib
import math

import pytest

from oracles import EV, HBAR, M_E
from tunneltime.config import (
    apply_override,
    build_stack,
    load,
    load_text,
    parse_frequency,
    parse_omega,
    parse_quantity,
)
from tunneltime.errors import ConfigurationError
from tunneltime.transfer_matrix import Polarization
from tunneltime.wave_core import Kind


@pytest.mark.parametrize(
    "text,dim,value",
    [("5 eV", "energy", 5 * EV), ("2.34 fs", "time", 2.34e-15), ("50 mm", "length", 0.05),
     ("45 deg", "angle", math.pi / 4), ("8.7 GHz", "frequency", 8.7e9), (0.3, "length", 0.3),
     ("1e-3", "length", 1e-3), ("1.5 um", "length", 1.5e-6)],
)
def test_parse_quantity(text, dim, value):
    assert parse_quantity(text, dim) == pytest.approx(value, rel=1e-15)


def test_parse_quantity_errors():
    with pytest.raises(ConfigurationError):
        parse_quantity("5 eV", "length")
    with pytest.raises(ConfigurationError):
        parse_quantity("five", "length")
    with pytest.raises(ConfigurationError):
        parse_quantity(True, "length")


def test_parse_omega_and_frequency():
    assert parse_omega(1.5e15) == 1.5e15
    assert parse_omega("1 GHz") == pytest.approx(2 * math.pi * 1e9)
    assert parse_omega("5 eV") == pytest.approx(5 * EV / HBAR)
    assert parse_omega("2 rad/s") == 2.0
    assert parse_frequency("5 eV") == pytest.approx(5 * EV / HBAR / (2 * math.pi))
    assert parse_frequency(1e6) == 1e6
    with pytest.raises(ConfigurationError):
        parse_omega("3 nm")


def test_schema_version():
    assert load_text("schema_version = 1\n")["schema_version"] == 1
    with pytest.raises(ConfigurationError):
        load_text("schema_version = 2\n")
    with pytest.raises(ConfigurationError):
        load_text("not toml = = 1")


def test_load_hash(tmp_path):
    p = tmp_path / "c.toml"
    p.write_bytes(b"schema_version = 1\n")
    data, digest = load(p)
    assert data == {"schema_version": 1}
    assert digest == hashlib.sha256(b"schema_version = 1\n").hexdigest()


def test_overrides():
    data = {"stack": {"layers": [{"n": 2.0}]}}
    apply_override(data, "stack.layers.0.n=3.5")
    apply_override(data, 'delay.omega0="5 eV"')
    apply_override(data, "stack.polarization=TM")
    assert data["stack"]["layers"][0]["n"] == 3.5
    assert data["delay"]["omega0"] == "5 eV"
    assert data["stack"]["polarization"] == "TM"
    with pytest.raises(ConfigurationError):
        apply_override(data, "novalue")


def test_build_stack_periodic_with_cap():
    spec = load_text('''
[stack]
kind = "optical"
polarization = "TM"
theta = "10 deg"
periods = 3
entry = { n = 1.0 }
exit = { n = 1.5 }
layers = [ { n = 2.0, thickness = "100 nm" }, { n = 1.4, thickness = "150 nm" } ]
cap = [ { n = 2.0, thickness = "100 nm" } ]
''')["stack"]
    s = build_stack(spec)
    assert len(s.layers) == 7
    assert s.polarization is Polarization.TM
    assert s.theta == pytest.approx(math.radians(10))
    assert s.exit.n == 1.5
    assert s.thickness == pytest.approx(3 * 250e-9 + 100e-9)


def test_build_stack_quantum_and_acoustic():
    q = build_stack({"kind": "quantum", "entry": {"V": 0.0, "mass_ratio": 0.067},
                     "layers": [{"V": "0.3 eV", "mass_ratio": 0.067, "thickness": "2 nm"}]})
    assert q.kind is Kind.QUANTUM
    assert q.layers[0].medium.mass == pytest.approx(0.067 * M_E)
    assert q.layers[0].medium.potential == pytest.approx(0.3 * EV)
    a = build_stack({"kind": "acoustic", "entry": {"speed": 1480, "density": 1000}, "k_parallel": 10.0})
    assert a.kind is Kind.ACOUSTIC and a.k_parallel == 10.0
    with pytest.raises(ConfigurationError):
        build_stack({"kind": "acoustic", "entry": {"speed": 1480}})
    with pytest.raises(ConfigurationError):
        build_stack({"kind": "optical"})
