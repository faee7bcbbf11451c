import cmath, math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from scipy import special

from heun_pulses.errors import (ConvergenceError, DegenerateParameterError, DivergenceError, DomainError,
                                ParameterError, PoleError)
from heun_pulses.specfun import (ConfluentHeunParams, HeunParams, bessel_j, confluent_heun_local,
                                 confluent_heun_path, gamma_ratio, heun_at_one, heun_coefficients,
                                 heun_continue, heun_local, heun_path, hyp2f1, hyp2f1_at_one,
                                 hyp2f1_continue, hyp2f1_path, hyp2f1_via_confluent, log_gamma)


def _random_heun(rng, c=2.0):
    a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
    u = complex(rng.uniform(0.5, 2.5), rng.uniform(-1.5, 1.5))
    v = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
    w = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    q = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    return HeunParams.from_fuchs(a=a, c=c, q=q, u=u, v=v, w=w)


# ---------------------------------------------------------------------------
# Parameter sets

def test_fuchs_violation_is_rejected():
    with pytest.raises(ParameterError):
        HeunParams(a=1, b=1, c=2, q=0, u=1, v=1, w=1)


def test_complex_singular_point_is_rejected():
    with pytest.raises(ParameterError):
        HeunParams.from_fuchs(a=0.5, c=2 + 1j, q=0, u=1, v=0.5, w=0.5)


def test_radius_follows_c():
    assert HeunParams.from_fuchs(a=0, c=3.0, q=0, u=1, v=0.5, w=0.5).radius == 1.0
    assert HeunParams.from_fuchs(a=0, c=0.4, q=0, u=1, v=0.5, w=0.5).radius == pytest.approx(0.4)
    assert HeunParams(a=0.5, b=0.5, c=0.0, q=0.0, u=1.0, v=0.5, w=0.5).radius == 1.0


def test_first_coefficient_is_q_over_uc():
    hp = HeunParams.from_fuchs(a=0.3, c=2.5, q=0.7 - 0.2j, u=1.4 + 0.3j, v=0.5, w=0.5)
    table = heun_coefficients(hp, 5)
    assert table[0] == 1
    assert table[1] == pytest.approx(hp.q / (hp.u * hp.c), rel=1e-14)
    assert table[-1] == 0


def test_coefficients_satisfy_three_term_recursion():
    rng = np.random.default_rng(7)
    for _ in range(5):
        hp = _random_heun(rng, c=rng.uniform(1.2, 4.0))
        table = heun_coefficients(hp, 40)
        assert max(table.recursion_residual(hp, j) for j in range(1, 39)) < 1e-12


# ---------------------------------------------------------------------------
# Local series

@pytest.mark.parametrize("z", [-0.45, -0.1, 0.2, 0.49, 0.3 + 0.3j])
def test_hyp2f1_matches_scipy(z):
    a, b, c = 0.7, -1.3, 2.2
    assert hyp2f1(a, b, c, z).value == pytest.approx(complex(special.hyp2f1(a, b, c, z)), rel=1e-13)


def test_hyp2f1_log_identity():
    for z in (0.1, 0.5, 0.9):
        assert hyp2f1(1, 1, 2, z).value == pytest.approx(-math.log1p(-z) / z, rel=1e-12)


def test_hyp2f1_outside_disk_raises():
    with pytest.raises(DomainError):
        hyp2f1(0.5, 0.5, 1.5, 1.2)


def test_hyp2f1_pole_in_lower_parameter():
    with pytest.raises(PoleError):
        hyp2f1(0.5, 0.5, -2, 0.1)


def test_series_reports_convergence_failure(monkeypatch):
    import heun_pulses.specfun as specfun
    monkeypatch.setattr(specfun, "MAX_TERMS", 5)
    with pytest.raises(ConvergenceError) as exc:
        hyp2f1(0.5, 0.5, 1.5, 0.9)
    assert exc.value.terms_used == 5
    assert exc.value.tail_estimate > 0


@settings(max_examples=80, deadline=None)
@given(ar=st.floats(-2, 2), ai=st.floats(-2, 2), zr=st.floats(-0.85, 0.85), zi=st.floats(-0.5, 0.5),
       exponent=st.floats(-14.0, -6.0), family=st.sampled_from(["heun", "confluent", "2f1"]))
def test_converged_series_tail_is_within_tolerance(ar, ai, zr, zi, exponent, family):
    z = complex(zr, zi)
    assume(abs(z) < 0.9)
    tol = 10.0 ** exponent
    a = complex(ar, ai)
    if family == "heun":
        res = heun_local(HeunParams.from_fuchs(a=a, c=2.5, q=0.3 - 0.1j, u=1.3 + 0.2j, v=0.4 - 0.6j, w=0.7), z, tol)
    elif family == "confluent":
        res = confluent_heun_local(ConfluentHeunParams(u=1.3 + 0.2j, v=a, p=0.5, q=-0.2), z, tol)
    else:
        res = hyp2f1(a, 0.7 - 0.3j, 1.4 + 0.5j, z, tol)
    assert res.converged
    assert res.tail_estimate <= tol


def test_heun_derivative_matches_finite_difference():
    hp = HeunParams.from_fuchs(a=0.4 + 0.1j, c=2.0, q=-0.3, u=0.5 - 1.25j, v=0.5 + 1.25j, w=0.5)
    z, h = 0.3, 1e-5
    fd = (heun_local(hp, z + h).value - heun_local(hp, z - h).value) / (2 * h)
    assert heun_local(hp, z).derivative == pytest.approx(fd, rel=1e-8)


def test_heun_c_one_reduces_to_hypergeometric():
    rng = np.random.default_rng(11)
    for _ in range(10):
        a, b = complex(*rng.uniform(-2, 2, 2)), complex(*rng.uniform(-2, 2, 2))
        u = complex(rng.uniform(0.5, 2.5), rng.uniform(-1.5, 1.5))
        v = complex(*rng.uniform(-2, 2, 2))
        hp = HeunParams(a, b, 1.0, a * b, u, v, a + b + 1 - u - v)
        for z in np.linspace(-0.5, 0.5, 5):
            ref = hyp2f1(a, b, u, z).value
            assert abs(heun_local(hp, z).value - ref) <= 1e-10 * max(1.0, abs(ref))


def test_heun_w_zero_reduces_to_hypergeometric():
    a, b, u, c = 0.3 + 0.4j, -0.8 + 0.1j, 1.2 - 0.5j, 2.4
    hp = HeunParams(a, b, c, c * a * b, u, a + b - u + 1, 0.0)
    for z in (-0.5, -0.2, 0.25, 0.5):
        assert heun_local(hp, z).value == pytest.approx(hyp2f1(a, b, u, z).value, rel=1e-12)


def test_heun_two_term_limit():
    a, b, u, v = 0.6, 0.2 + 0.3j, 1.1, 0.4
    hp = HeunParams(a, b, 0.0, 0.0, u, v, a + b + 1 - u - v)
    for z in (-0.4, 0.1, 0.45):
        assert heun_local(hp, z).value == pytest.approx(hyp2f1(a, b, u + hp.w, z).value, rel=1e-13)


def test_heun_c_zero_with_q_is_degenerate():
    hp = HeunParams(0.5, 0.5, 0.0, 0.2, 1.0, 0.5, 0.5)
    with pytest.raises(DegenerateParameterError):
        heun_local(hp, 0.1)


@settings(max_examples=30, deadline=None)
@given(ar=st.floats(-2, 2), ai=st.floats(-2, 2), z=st.floats(-0.5, 0.5))
def test_heun_is_symmetric_in_a_and_b(ar, ai, z):
    hp = HeunParams.from_fuchs(a=complex(ar, ai), c=2.5, q=0.3 - 0.1j, u=1.3 + 0.2j, v=0.4 - 0.6j, w=0.7)
    assert heun_local(hp, z).value == pytest.approx(heun_local(hp.swap_ab(), z).value, rel=1e-13, abs=1e-13)


def test_confluent_p_zero_is_hypergeometric():
    cp = ConfluentHeunParams(u=1.5 - 0.5j, v=0.5 + 0.5j, p=0.0, q=0.1875)
    a, b, c = cp.as_hypergeometric()
    for z in (-0.5, 0.2, 0.45):
        assert confluent_heun_local(cp, z).value == pytest.approx(hyp2f1(a, b, c, z).value, rel=1e-13)


def test_as_hypergeometric_needs_p_zero():
    with pytest.raises(ParameterError):
        ConfluentHeunParams(u=1.0, v=0.5, p=0.3, q=0.0).as_hypergeometric()


# ---------------------------------------------------------------------------
# Continuation and boundary values

@pytest.mark.parametrize("z", [0.6, 0.8, 0.95])
def test_hyp2f1_continuation_matches_scipy(z):
    a, b, c = 0.3, 0.45, 1.6
    res = hyp2f1_continue(a, b, c, z)
    assert res.value == pytest.approx(special.hyp2f1(a, b, c, z), rel=1e-10)


def test_paths_are_continuous_across_the_seed_point():
    hp = HeunParams.from_fuchs(a=0, c=1.5, q=-0.125, u=0.5 - 1.25j, v=0.5 + 1.25j, w=0.5)
    z = np.array([0.499999, 0.5, 0.500001])
    values, derivs = heun_path(hp, z)
    assert abs(values[2] - values[0]) < 1e-5
    assert derivs[1] == pytest.approx(heun_local(hp, 0.5).derivative, rel=1e-12)


def test_heun_continue_agrees_with_path():
    hp = HeunParams.from_fuchs(a=0, c=2.0, q=-0.2, u=0.5, v=0.5, w=0.5)
    values, _ = heun_path(hp, [0.9])
    assert heun_continue(hp, 0.9).value == pytest.approx(values[0], rel=1e-12)


def test_continuation_rejects_targets_beyond_one():
    hp = HeunParams.from_fuchs(a=0, c=2.0, q=-0.2, u=0.5, v=0.5, w=0.5)
    with pytest.raises(DomainError):
        heun_continue(hp, 1.5)
    assert cmath.isfinite(heun_continue(hp, 1.0).value)
    with pytest.raises(DomainError):
        heun_path(hp, [0.2, 1.0])


def test_heun_value_at_one_matches_gauss_sum():
    a, b, u, v = 0.3 + 0.2j, 0.1 - 0.4j, 1.2 + 0.3j, 0.3
    hp = HeunParams(a, b, 0.0, 0.0, u, v, a + b + 1 - u - v)
    assert heun_at_one(hp) == pytest.approx(hyp2f1_at_one(a, b, u + hp.w), rel=1e-6)


def test_value_at_one_diverges_for_nonpositive_exponent():
    hp = HeunParams.from_fuchs(a=0, c=2.0, q=-0.2, u=0.5, v=1.5, w=0.5)
    with pytest.raises(DivergenceError):
        heun_at_one(hp)


def test_confluent_path_beyond_seed_matches_hypergeometric():
    cp = ConfluentHeunParams(u=1.5, v=0.7, p=0.0, q=-0.3)
    a, b, c = cp.as_hypergeometric()
    values, _ = confluent_heun_path(cp, [0.3, 0.7, 0.9])
    ref, _ = hyp2f1_path(a, b, c, [0.3, 0.7, 0.9])
    assert np.allclose(values, ref, rtol=1e-10)


# ---------------------------------------------------------------------------
# Gamma, Gauss sum and the 1/(1 - z) connection

@settings(max_examples=200, deadline=None)
@given(x=st.floats(-10.0, 10.0), y=st.floats(0.05, 10.0), lower=st.booleans())
def test_log_gamma_recurrence(x, y, lower):
    z = complex(x, -y if lower else y)
    assert abs(log_gamma(z + 1) - log_gamma(z) - cmath.log(z)) < 1e-9


@pytest.mark.parametrize("z", [0.3, 4.5, 2 + 3j, -0.7 + 0.2j, -0.993 + 5.926j, -7.3 - 0.4j, -2.5 + 8j,
                               0.49 - 6j, -4.2 + 0.01j])
def test_log_gamma_is_the_principal_branch(z):
    assert log_gamma(z) == pytest.approx(complex(special.loggamma(z)), rel=1e-11, abs=1e-11)


def test_log_gamma_is_continuous_across_one_half():
    for y in (0.3, 2.0, 5.926):
        left, right = log_gamma(complex(0.5 - 1e-9, y)), log_gamma(complex(0.5 + 1e-9, y))
        assert abs(left - right) < 1e-6


@pytest.mark.parametrize("z", [0.3, 1.0, 4.5, -1.5, 2 + 3j, -0.7 + 0.2j])
def test_log_gamma_matches_scipy(z):
    assert cmath.exp(log_gamma(z)) == pytest.approx(complex(special.gamma(z)), rel=1e-12)


def test_log_gamma_pole():
    with pytest.raises(PoleError):
        log_gamma(-3)


def test_gamma_ratio_vanishes_at_denominator_pole():
    assert gamma_ratio([1.5], [-2.0]) == 0


def test_gauss_sum():
    a, b, c = 0.3, 0.45, 1.6
    expected = special.gamma(c) * special.gamma(c - a - b) / (special.gamma(c - a) * special.gamma(c - b))
    assert hyp2f1_at_one(a, b, c) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(DivergenceError):
        hyp2f1_at_one(1.0, 1.0, 1.5)


@pytest.mark.parametrize("z", np.linspace(-3.0, -0.5, 10))
def test_connection_formula_matches_scipy(z):
    a, b, c = 0.3, 1.1, 1.7
    assert hyp2f1_via_confluent(a, b, c, z) == pytest.approx(complex(special.hyp2f1(a, b, c, z)), rel=1e-10)


def test_connection_formula_agrees_with_series_inside_disk():
    a, b, c = 0.3 + 0.2j, 1.1 - 0.4j, 1.7 + 0.5j
    assert hyp2f1_via_confluent(a, b, c, -0.5) == pytest.approx(hyp2f1(a, b, c, -0.5).value, rel=1e-10)


def test_connection_formula_integer_difference_is_degenerate():
    with pytest.raises(DegenerateParameterError):
        hyp2f1_via_confluent(0.5, 1.5, 2.0, -2.0)
    with pytest.raises(DomainError):
        hyp2f1_via_confluent(0.3, 1.1, 1.7, 0.2)


# ---------------------------------------------------------------------------
# Bessel

def test_bessel_matches_scipy_across_regimes():
    x = np.concatenate([np.linspace(0.0, 8.0, 41), np.linspace(8.1, 25.0, 40), np.linspace(25.5, 200.0, 40)])
    assert np.allclose(bessel_j(0, x), special.j0(x), rtol=0, atol=1e-12)
    assert np.allclose(bessel_j(1, x), special.j1(x), rtol=0, atol=1e-12)


def test_bessel_scalar_and_errors():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert isinstance(bessel_j(1, 2.0), float)
    with pytest.raises(ParameterError):
        bessel_j(2, 1.0)
    with pytest.raises(DomainError):
        bessel_j(0, -1.0)
