from math import factorial

import pytest

from artifact.gamma import (
    LaurentSeries,
    bernoulli_from_series,
    bernoulli_plus,
    ch_coefficients,
    gamma_ratio_expansion,
    rhat_prefactor_series,
)
from artifact.scalar import Params, S, sample_params

P2 = sample_params(2, 2)


def dual_params(params):
    return Params(t1=-params.t1, t2=-params.t2, a=(S(0),), q=params.q)


# ---------------------------------------------------------------------------
# Bernoulli numbers


def test_bernoulli_routes_agree_through_twelve():
    assert bernoulli_plus(12) == bernoulli_from_series(12)


def test_bernoulli_known_values():
    b = bernoulli_plus(12)
    assert b[0] == 1
    assert b[1] == S(1, 2)
    assert b[2] == S(1, 6)
    assert b[4] == S(-1, 30)
    assert b[6] == S(1, 42)
    assert b[8] == S(-1, 30)
    assert b[10] == S(5, 66)
    assert b[12] == S(-691, 2730)


def test_bernoulli_odd_indices_vanish():
    b = bernoulli_plus(11)
    assert all(b[k] == 0 for k in range(3, 12, 2))


def test_bernoulli_rejects_negative():
    with pytest.raises(ValueError):
        bernoulli_plus(-1)
    with pytest.raises(ValueError):
        bernoulli_from_series(-1)


# ---------------------------------------------------------------------------
# Laurent series container


def test_laurent_series_validation():
    with pytest.raises(ValueError):
        LaurentSeries(-3, 0, (1, 2, 3, 4))
    with pytest.raises(ValueError):
        LaurentSeries(0, -1, ())
    with pytest.raises(ValueError):
        LaurentSeries(-2, 0, (1, 2))


def test_laurent_series_coefficient_access():
    s = LaurentSeries(-1, 2, (1, 2, 3, 4))
    assert s.coefficient(-1) == 1
    assert s.coefficient(2) == 4
    assert s.coefficient(-2) == 0
    with pytest.raises(ValueError):
        s.coefficient(3)


def test_laurent_series_json():
    s = LaurentSeries(-2, 0, (S(1, 2), 0, 7))
    assert s.to_json() == {
        "low": -2,
        "order": 0,
        "coefficients": {"-2": "1/2", "-1": "0", "0": "7"},
    }


# ---------------------------------------------------------------------------
# Chern-character coefficients


def test_ch_leading_coefficient():
    ch = ch_coefficients(S(0), 0, P2)
    assert ch.coefficient(-2) == 1 / (P2.t1 * P2.t2)


def test_ch_subleading_coefficient():
    a = S(5, 3)
    ch = ch_coefficients(a, 0, P2)
    assert ch.coefficient(-1) == (a + (P2.t1 + P2.t2) / 2) / (P2.t1 * P2.t2)


def test_ch_constant_coefficient_at_zero_shift():
    ch = ch_coefficients(S(0), 0, P2)
    t1, t2 = P2.t1, P2.t2
    assert ch.coefficient(0) == (t1 * t1 + 3 * t1 * t2 + t2 * t2) / (12 * t1 * t2)


def test_ch_routes_agree_through_six():
    for a in (S(0), S(3, 7), S(-2)):
        d = ch_coefficients(a, 6, P2, method="division")
        b = ch_coefficients(a, 6, P2, method="bernoulli")
        assert d == b


def test_ch_validation():
    with pytest.raises(ValueError):
        ch_coefficients(S(0), 7, P2)
    with pytest.raises(ValueError):
        ch_coefficients(S(0), -3, P2)
    with pytest.raises(ValueError):
        ch_coefficients(S(0), 2, P2, method="numeric")


# ---------------------------------------------------------------------------
# Double-gamma ratio expansion


def test_ratio_log_inverse_coefficient_is_tau_one():
    for a in (S(0), S(4, 5)):
        series = gamma_ratio_expansion(a, 2, P2)
        assert series.coefficient(-1) == P2.tau1()


def test_ratio_log_coefficient_is_minus_tau_a():
    a = S(4, 5)
    series = gamma_ratio_expansion(a, 2, P2)
    assert series.coefficient(0) == -(a * P2.tau1())
    assert series.coefficient(0) == a / (P2.t1 * P2.t2)


def test_ratio_inverse_u_coefficient():
    # ch-side value: (1/2) tau(a^2) - 1/12; at a = 0 it is exactly -1/12,
    # independent of the weights.
    for params in (P2, sample_params(9, 2)):
        assert gamma_ratio_expansion(S(0), 1, params).coefficient(1) == S(-1, 12)
    a = S(4, 5)
    series = gamma_ratio_expansion(a, 1, P2)
    assert series.coefficient(1) == a * a * P2.tau1() / 2 - S(1, 12)


def test_ratio_lowest_index_is_minus_one():
    series = gamma_ratio_expansion(S(3, 7), 4, P2)
    assert series.low == -1
    assert series.coefficient(-2) == 0


def test_ratio_routes_agree():
    for a in (S(0), S(3, 7), S(-2)):
        d = gamma_ratio_expansion(a, 4, P2, method="division")
        b = gamma_ratio_expansion(a, 4, P2, method="bernoulli")
        assert d == b


def test_ratio_matches_ch_difference():
    # The ratio kernel is (ch-kernel at a) - (ch-kernel at a - t1 - t2),
    # all over hbar; compare coefficient by coefficient after the basis
    # sign/factorial conversion.
    a = S(3, 7)
    ebar = P2.t1 + P2.t2
    series = gamma_ratio_expansion(a, 4, P2)
    ch_a = ch_coefficients(a, 4, P2)
    ch_shift = ch_coefficients(a - ebar, 4, P2)
    for k in range(-1, 5):
        f = (ch_a.coefficient(k) - ch_shift.coefficient(k)) / P2.hbar
        sign = S(1) if (k + 1) % 2 == 0 else S(-1)
        fac = factorial(k - 1) if k >= 1 else 1
        assert series.coefficient(k) == sign * fac * f


def test_ratio_duality():
    # Negating (a, t1, t2) flips the sign of every other basis coefficient.
    dual = dual_params(P2)
    for a in (S(0), S(4, 5)):
        orig = gamma_ratio_expansion(a, 4, P2)
        flipped = gamma_ratio_expansion(-a, 4, dual)
        for k in range(-1, 5):
            sign = S(1) if (k + 1) % 2 == 0 else S(-1)
            assert flipped.coefficient(k) == sign * orig.coefficient(k)


def test_ratio_validation():
    with pytest.raises(ValueError):
        gamma_ratio_expansion(S(0), 5, P2)
    with pytest.raises(ValueError):
        gamma_ratio_expansion(S(0), -2, P2)
    with pytest.raises(ValueError):
        gamma_ratio_expansion(S(0), 2, P2, method="numeric")


def test_rhat_prefactor_is_the_ratio_expansion():
    a = S(4, 5)
    assert rhat_prefactor_series(a, 3, P2) == gamma_ratio_expansion(a, 3, P2)
