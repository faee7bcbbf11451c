import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heun_pulses.errors import InfiniteTimeError, NotExactlySolvableError, ParameterError
from heun_pulses.pulses import (DimensionlessParams, PhaseMap, PulseKind, PulseSpec, default_span,
                                gamma_for_area, heun_params_for, omega, phase_grid, phase_of_time,
                                pulse_area, rescale_to_area, time_of_phase)
from heun_pulses.specfun import ConfluentHeunParams, HeunParams

CAPTION = DimensionlessParams.from_physical(0.02, 0.08, 0.2)


def test_caption_units_convert_to_dimensionless():
    assert CAPTION.gamma == pytest.approx(0.25)
    assert CAPTION.beta == pytest.approx(2.5)
    assert CAPTION.alpha == pytest.approx(0.08)


@pytest.mark.parametrize("kwargs", [dict(alpha=0.0), dict(gamma=-0.1), dict(beta=math.nan)])
def test_dimensionless_params_validate(kwargs):
    with pytest.raises(ParameterError):
        DimensionlessParams(**kwargs)


# ---------------------------------------------------------------------------
# Phase map

@settings(max_examples=60, deadline=None)
@given(tau=st.floats(-3, 3), mu=st.floats(0.5, 3.0), ratio=st.floats(-0.5, 2.0))
def test_phase_map_round_trip(tau, mu, ratio):
    pmap = PhaseMap(mu, ratio * mu)
    assert time_of_phase(pmap, phase_of_time(pmap, tau).phi) == pytest.approx(tau, abs=1e-6)


@settings(max_examples=40, deadline=None)
@given(t1=st.floats(-5, 3), dt=st.floats(0.01, 2), lam=st.floats(-0.5, 3.0))
def test_phase_is_increasing(t1, dt, lam):
    pmap = PhaseMap(1.0, lam)
    assert phase_of_time(pmap, t1 + dt).phi > phase_of_time(pmap, t1).phi


def test_symmetric_map_is_logistic():
    pmap = PhaseMap()
    tau = np.linspace(-5, 5, 11)
    phi, comp = phase_grid(pmap, tau)
    assert np.allclose(phi, 1 / (1 + np.exp(-2 * tau)), rtol=1e-14)
    assert np.allclose(phi + comp, 1.0, rtol=1e-15)


def test_complement_is_resolved_independently():
    root = phase_of_time(PhaseMap(1.0, 0.5), 40.0)
    assert root.complement > 0
    assert root.complement < 1e-16
    assert root.saturated


@pytest.mark.parametrize("pmap", [PhaseMap(), PhaseMap(2.0, 1.0)])
def test_phase_of_time_flags_saturation(pmap):
    assert not phase_of_time(pmap, 5.0).saturated
    early = phase_of_time(pmap, -40.0)
    assert early.saturated
    assert early.phi < 1e-16
    assert early.complement == pytest.approx(1.0)


def test_time_of_phase_rejects_endpoints():
    with pytest.raises(InfiniteTimeError):
        time_of_phase(PhaseMap(), 0.0)
    with pytest.raises(InfiniteTimeError):
        time_of_phase(PhaseMap(), 1.0)


@pytest.mark.parametrize("mu, lam", [(0.0, 0.0), (-1.0, 0.0), (1.0, -1.0), (2.0, -3.0)])
def test_phase_map_validation(mu, lam):
    with pytest.raises(ParameterError):
        PhaseMap(mu, lam)


# ---------------------------------------------------------------------------
# Envelopes

def test_named_pulses_need_symmetric_map():
    with pytest.raises(ParameterError):
        PulseSpec(PulseKind.SECH, params=CAPTION, phase_map=PhaseMap(2.0, 0.0))


def test_omega_delta_matches_closed_form():
    spec = PulseSpec.named(PulseKind.OMEGA_DELTA, CAPTION, delta=2.0)
    tau = np.linspace(-6, 6, 25)
    expected = 0.25 / np.cosh(tau) / np.sqrt(2.0 - np.tanh(tau))
    assert np.allclose(omega(spec, tau), expected, rtol=1e-13)


def test_omega_plus_and_minus_are_mirror_images():
    plus = PulseSpec.named(PulseKind.OMEGA_PLUS, CAPTION)
    minus = PulseSpec.named(PulseKind.OMEGA_MINUS, CAPTION)
    tau = np.linspace(-8, 8, 33)
    assert np.allclose(omega(plus, tau), omega(minus, -tau), rtol=1e-14)


def test_omega_one_switches_on_and_stays_on():
    spec = PulseSpec.named(PulseKind.OMEGA_ONE, CAPTION)
    assert omega(spec, -40.0) < 1e-15
    assert omega(spec, 40.0) == pytest.approx(0.25 * math.sqrt(2), rel=1e-14)


def test_envelopes_stay_finite_far_out():
    for kind in (PulseKind.SECH, PulseKind.OMEGA_PLUS, PulseKind.OMEGA_MINUS):
        values = omega(PulseSpec.named(kind, CAPTION), np.array([-800.0, 800.0]))
        assert np.all(np.isfinite(values))
        assert np.all(values >= 0)


def test_box_envelope():
    spec = PulseSpec.named(PulseKind.BOX, CAPTION, t0=125.0)
    assert spec.box_width == pytest.approx(10.0)
    assert omega(spec, -0.1) == 0.0
    assert omega(spec, 5.0) == pytest.approx(0.25)
    assert omega(spec, 10.1) == 0.0
    assert spec.breakpoints() == (0.0, pytest.approx(10.0))


def test_heun_family_envelope_at_midpoint():
    spec = PulseSpec.heun_family(ab=0.0, q=-1.0, c=2.0)
    # radicand 4 phi (1-phi)(-q)/((c-1) + (1-phi)) at phi = 1/2
    assert omega(spec, 0.0) == pytest.approx(math.sqrt(2.0 / 3.0), rel=1e-14)


def test_confluent_family_envelope_at_midpoint():
    spec = PulseSpec.confluent_family(p=1.0, q=-1.0)
    assert omega(spec, 0.0) == pytest.approx(math.sqrt(0.5), rel=1e-14)


@pytest.mark.parametrize("build", [
    lambda: PulseSpec.heun_family(ab=0.0, q=1.0, c=2.0),
    lambda: PulseSpec.heun_family(ab=0.0, q=-1.0, c=1.0),
    lambda: PulseSpec.confluent_family(p=-1.0, q=1.0),
    lambda: PulseSpec.named(PulseKind.OMEGA_DELTA, CAPTION, delta=1.0),
    lambda: PulseSpec.named(PulseKind.BOX, CAPTION),
    lambda: PulseSpec.named(PulseKind.HEUN_FAMILY, CAPTION),
])
def test_invalid_pulses_are_rejected(build):
    with pytest.raises(ParameterError):
        build()


# ---------------------------------------------------------------------------
# Areas

def test_sech_area_convention():
    half = PulseSpec.named(PulseKind.SECH, DimensionlessParams(gamma=0.5))
    assert pulse_area(half) == pytest.approx(math.pi, rel=1e-9)


def test_box_area_is_twice_height_times_width():
    spec = PulseSpec.named(PulseKind.BOX, CAPTION, t0=125.0)
    assert pulse_area(spec) == pytest.approx(5.0, rel=1e-9)


@pytest.mark.parametrize("kind, delta", [(PulseKind.OMEGA_PLUS, None), (PulseKind.OMEGA_MINUS, None),
                                         (PulseKind.OMEGA_DELTA, 2.0), (PulseKind.SMOOTH_BOX, 1.001)])
def test_gamma_for_area(kind, delta):
    spec = PulseSpec.named(kind, DimensionlessParams(), delta=delta)
    gamma = gamma_for_area(spec, math.pi)
    assert pulse_area(spec.with_params(DimensionlessParams(gamma=gamma))) == pytest.approx(math.pi, rel=1e-9)


def test_rescale_family_to_area():
    spec = rescale_to_area(PulseSpec.confluent_family(p=1.0, q=-1.0), 2 * math.pi)
    assert spec.p == pytest.approx(-spec.q)
    assert pulse_area(spec) == pytest.approx(2 * math.pi, rel=1e-9)


def test_partial_area_is_additive():
    spec = PulseSpec.named(PulseKind.OMEGA_PLUS, CAPTION)
    left = pulse_area(spec, tau_max=0.0)
    right = pulse_area(spec, tau_min=0.0)
    assert left + right == pytest.approx(pulse_area(spec), rel=1e-9)


def test_default_span_covers_smooth_box_plateau():
    spec = PulseSpec.named(PulseKind.SMOOTH_BOX, CAPTION, delta=1 + 1e-9)
    lo, hi = default_span(spec)
    assert lo == -20.0
    assert hi == pytest.approx(20.0 + 0.5 * math.log(2e9))


# ---------------------------------------------------------------------------
# ODE parameters

@pytest.mark.parametrize("kind, delta", [(PulseKind.OMEGA_DELTA, 2.0), (PulseKind.OMEGA_ONE, None),
                                         (PulseKind.SMOOTH_BOX, 1.5)])
def test_heun_kinds_satisfy_fuchs(kind, delta):
    hp = heun_params_for(PulseSpec.named(kind, CAPTION, delta=delta))
    assert isinstance(hp, HeunParams)
    assert abs(hp.fuchs_defect) < 1e-14
    assert hp.q == pytest.approx(-CAPTION.gamma ** 2 / 2)


def test_omega_delta_singular_point():
    hp = heun_params_for(PulseSpec.named(PulseKind.OMEGA_DELTA, CAPTION, delta=11.0))
    assert hp.c == pytest.approx(6.0)


def test_confluent_kinds():
    sech = heun_params_for(PulseSpec.named(PulseKind.SECH, CAPTION))
    plus = heun_params_for(PulseSpec.named(PulseKind.OMEGA_PLUS, CAPTION))
    minus = heun_params_for(PulseSpec.named(PulseKind.OMEGA_MINUS, CAPTION))
    assert isinstance(sech, ConfluentHeunParams) and sech.p == 0
    assert plus.q == 0 and plus.p == pytest.approx(-2 * CAPTION.gamma ** 2)
    assert minus.p == pytest.approx(-minus.q)


@pytest.mark.parametrize("build", [
    lambda: PulseSpec.heun_family(ab=-0.5, q=-1.0, c=2.0),
    lambda: PulseSpec.confluent_family(p=1.0, q=-2.0),
    lambda: PulseSpec.named(PulseKind.BOX, CAPTION, t0=10.0),
])
def test_not_exactly_solvable(build):
    with pytest.raises(NotExactlySolvableError):
        heun_params_for(build())
