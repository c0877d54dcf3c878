import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import EV, HBAR, M_E, hartman_asymptote, rectangular_barrier_textbook
from tunneltime.delay_time import energy_phase_time, stack_phase_time
from tunneltime.errors import DomainError
from tunneltime.quantum_barrier import (
    RectangularBarrier,
    barrier_amplitude,
    opaque_phase_time_asymptote,
    transmission_probability,
)
from tunneltime.transfer_matrix import stack_amplitudes


@settings(max_examples=50, deadline=None)
@given(V=st.floats(0.5, 20.0), frac=st.floats(0.05, 0.95), L=st.floats(0.05e-9, 1.5e-9))
def test_closed_form_matches_textbook_after_face_shift(V, frac, L):
    b = RectangularBarrier.from_ev(V, L)
    E = frac * b.V
    k = math.sqrt(2 * M_E * E) / HBAR
    ref = rectangular_barrier_textbook(E, b.V, L) * np.exp(1j * k * L)
    assert abs(barrier_amplitude(b, E) - ref) <= 1e-12 * abs(ref)
    assert transmission_probability(b, E) == pytest.approx(abs(ref) ** 2, rel=1e-10)


def test_reference_value_5ev_on_10ev():
    b = RectangularBarrier.from_ev(10.0, 0.5e-9)
    # |t|^2 = 1 / (1 + V^2 sinh^2(kappa L) / (4 E (V - E)))
    kappa = math.sqrt(2 * M_E * 5 * EV) / HBAR
    expected = 1 / (1 + math.sinh(kappa * 0.5e-9) ** 2)
    assert transmission_probability(b, 5 * EV) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(4.2353e-5, rel=1e-4)
    _, t, _ = stack_amplitudes(b.to_stack(), 5 * EV / HBAR)
    assert abs(t - barrier_amplitude(b, 5 * EV)) < 1e-13 * abs(t)


def test_opaque_barrier_no_overflow():
    b = RectangularBarrier.from_ev(10.0, 50e-9)
    t = barrier_amplitude(b, 5 * EV)
    assert np.isfinite(t) and abs(t) < 1e-200


def test_asymptote_formula():
    b = RectangularBarrier.from_ev(10.0, 1e-9)
    assert opaque_phase_time_asymptote(b, 5 * EV) == pytest.approx(
        hartman_asymptote(5 * EV, 10 * EV), rel=1e-14)
    assert opaque_phase_time_asymptote(b, 5 * EV) == pytest.approx(1.3164239e-16, rel=1e-6)
    with pytest.raises(DomainError):
        opaque_phase_time_asymptote(b, 0.0)


@pytest.mark.parametrize("kl", [0.5, 1.0, 3.0, 6.0])
def test_half_height_phase_time_is_tanh_law(kl):
    # at E = V/2, k = kappa and d(arg t)/dE gives tau = tau_inf * tanh(kappa L)
    E = 5 * EV
    kappa = math.sqrt(2 * M_E * E) / HBAR
    b = RectangularBarrier.from_ev(10.0, kl / kappa)
    tau = energy_phase_time(lambda e: barrier_amplitude(b, e), E).tau
    assert tau == pytest.approx(hartman_asymptote(E, 10 * EV) * math.tanh(kl), rel=1e-8)
    assert stack_phase_time(b.to_stack(), E / HBAR).tau == pytest.approx(tau, rel=1e-8)


def test_domain_errors():
    with pytest.raises(DomainError):
        RectangularBarrier(-1.0, 1e-9)
    with pytest.raises(DomainError):
        RectangularBarrier.from_ev(1.0, -1e-9)
    b = RectangularBarrier.from_ev(1.0, 1e-9)
    with pytest.raises(DomainError):
        barrier_amplitude(b, 2 * EV)
    assert b.with_length(2e-9).L == 2e-9
    assert barrier_amplitude(b.with_length(0.0), 0.5 * EV) == 1.0
    assert b.opacity(0.5 * EV) == pytest.approx(math.sqrt(2 * M_E * 0.5 * EV) / HBAR * 1e-9)
