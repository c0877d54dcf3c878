import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import C, EV, HBAR, M_E
from tunneltime.delay_time import (
    Method,
    energy_phase_time,
    goos_haenchen_shift,
    hartman_scan,
    phase_derivative,
    phase_time,
    stack_phase_time,
    universal_ratio,
    unwrap_phase,
)
from tunneltime.errors import (
    DomainError,
    GridTooCoarseError,
    NeedsMarginError,
    NotTotalReflectionError,
    NotTunnelingError,
)
from tunneltime.quantum_barrier import RectangularBarrier, barrier_amplitude
from tunneltime.transfer_matrix import ComplexSpectrum, Layer, Stack, transmission_spectrum
from tunneltime.wave_core import Medium

AIR = Medium.optical(1.0)
GLASS = Medium.optical(1.5)


@settings(max_examples=40, deadline=None)
@given(a=st.floats(-1e-12, 1e-12), b=st.floats(-1e-25, 1e-25), w0=st.floats(1e12, 1e13))
def test_quadratic_phase_recovers_exact_slope(a, b, w0):
    grid = np.linspace(0.5 * w0, 1.5 * w0, 11)
    s = ComplexSpectrum.from_function(grid, lambda w: np.exp(1j * (a * (w - w0) + b * (w - w0) ** 2 + 0.3 * w * 0)))
    w1 = 1.1 * w0
    exact = a + 2 * b * (w1 - w0)
    r = phase_time(s, w1)
    assert abs(r.tau - exact) <= 1e-8 * max(abs(exact), 1e-14) + r.error
    assert r.method is Method.PHASE_DERIVATIVE


def test_free_space_delay_is_length_over_c():
    L = 0.3
    r = stack_phase_time(Stack(AIR, (Layer(AIR, L),)), 2 * math.pi * 1e10)
    assert r.tau == pytest.approx(L / C, rel=1e-6)
    assert r.tau == pytest.approx(1.0007e-9, rel=1e-4)


def test_phase_derivative_of_cubic_is_richardson_exact():
    func = lambda x: np.exp(1j * 1e-3 * x**3)
    value, err = phase_derivative(func, 10.0, 1e-3)
    assert value == pytest.approx(3e-3 * 100, rel=1e-9)
    assert err >= 0


def test_sampled_route_matches_callable_route():
    stack = Stack(AIR, (Layer(GLASS, 2e-6),), AIR)
    grid = np.linspace(1.0e15, 1.2e15, 801)
    s = transmission_spectrum(stack, grid)
    sampled = ComplexSpectrum(s.grid, s.r, s.t, s.flux_factor)
    a = phase_time(s, 1.1e15).tau
    b = phase_time(sampled, 1.1e15)
    assert b.method is Method.SAMPLED
    assert b.tau == pytest.approx(a, rel=1e-5)


def test_margin_errors():
    grid = np.linspace(1.0, 2.0, 11)
    s = ComplexSpectrum.from_function(grid, lambda w: np.exp(1j * w))
    with pytest.raises(NeedsMarginError):
        phase_time(s, 2.0)
    sampled = ComplexSpectrum(s.grid, s.r, s.t, s.flux_factor)
    with pytest.raises(NeedsMarginError):
        phase_time(sampled, 1.0)


def test_unwrap_phase_continuous_and_coarse_grid_error():
    grid = np.linspace(0, 10, 201)
    phi = 0.7 * grid**1.5
    assert np.allclose(unwrap_phase((grid, np.exp(1j * phi))), phi - phi[0] + np.angle(np.exp(1j * phi[0])))
    # a falling phase that suddenly jumps by +3 rad breaks the local trend
    coarse = np.arange(5.0)
    phi = np.array([0.0, -0.5, -1.0, 2.0, 1.5])
    with pytest.raises(GridTooCoarseError) as info:
        unwrap_phase((coarse, np.exp(1j * phi)))
    assert info.value.interval == (2, 3)
    with pytest.raises(DomainError):
        unwrap_phase((grid[:3], np.array([1, 0, 1], complex)))


def test_energy_phase_time_equals_omega_route():
    b = RectangularBarrier.from_ev(10.0, 0.5e-9)
    E = 5 * EV
    a = energy_phase_time(lambda e: barrier_amplitude(b, e), E)
    c = stack_phase_time(b.to_stack(), E / HBAR)
    assert a.method is Method.ENERGY_DERIVATIVE
    assert a.tau == pytest.approx(c.tau, rel=1e-9)
    with pytest.raises(DomainError):
        energy_phase_time(lambda e: 1.0, 0.0)


def test_hartman_scan_saturates_for_opaque_barrier():
    E = 5 * EV
    kappa = math.sqrt(2 * M_E * E) / HBAR
    b = RectangularBarrier.from_ev(10.0, 1e-9)
    lengths = np.array([3, 5, 8, 12]) / kappa
    scan = hartman_scan(lambda L: b.with_length(L).to_stack(), lengths, E / HBAR)
    assert scan.saturated and scan.spread < 0.02
    assert np.all(scan.opacities >= 3 - 1e-9)


def test_hartman_scan_control_and_errors():
    family = lambda L: Stack(AIR, (Layer(AIR, L),))
    omega = 2 * math.pi * 1e10
    with pytest.raises(NotTunnelingError):
        hartman_scan(family, [0.1, 0.2, 0.3], omega)
    scan = hartman_scan(family, [0.1, 0.2, 0.3], omega, require_tunneling=False)
    assert not scan.saturated
    assert scan.spread == pytest.approx(1.0, rel=1e-6)
    with pytest.raises(DomainError):
        hartman_scan(family, [0.2, 0.1, 0.3], omega, require_tunneling=False)


def test_universal_ratio():
    assert universal_ratio(117e-12, 1 / 120e-12) == pytest.approx(0.975)
    assert universal_ratio(2.13e-15, 1 / 2.34e-15) == pytest.approx(0.910, abs=5e-4)
    with pytest.raises(DomainError):
        universal_ratio(1.0, 0.0)


def _tir(theta, pol):
    return Stack(GLASS, (), AIR, pol, theta)


@pytest.mark.parametrize("pol", ["TE", "TM"])
def test_goos_haenchen_matches_analytic(pol):
    lam = 850e-9
    omega = 2 * math.pi * C / lam
    theta = math.asin(1 / 1.5) + math.radians(5)
    k1, k2 = 1.5 * omega / C, omega / C
    kx = k1 * math.sin(theta)
    kz = math.sqrt(k1**2 - kx**2)
    kappa = math.sqrt(kx**2 - k2**2)
    if pol == "TE":
        expected = 2 * kx / (kappa * kz)
    else:
        n = 1.5**2
        expected = 2 * n * kx * (k1**2 - k2**2) / (kappa * kz * (kz**2 + n**2 * kappa**2))
    d = goos_haenchen_shift(_tir(theta, pol), omega)
    assert d == pytest.approx(expected, rel=1e-7)


def test_goos_haenchen_te_value_in_wavelengths():
    lam = 850e-9
    theta = math.asin(1 / 1.5) + math.radians(5)
    d = goos_haenchen_shift(_tir(theta, "TE"), 2 * math.pi * C / lam)
    assert d / lam == pytest.approx(0.766, abs=1e-3)


def test_goos_haenchen_errors():
    with pytest.raises(NotTotalReflectionError):
        goos_haenchen_shift(_tir(math.radians(30), "TE"), 1e15)
    with pytest.raises(DomainError):
        goos_haenchen_shift(_tir(0.0, "TE"), 1e15)
    with pytest.raises(DomainError):
        goos_haenchen_shift(Stack(Medium.quantum(0.0)), 1e15)
