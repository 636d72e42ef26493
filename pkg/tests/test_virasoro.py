"""Oracle tests for Feigin-Fuchs Virasoro modes and screening operators.

Scalar expectations are frozen from independent hand computations with the
mode conventions [a_k, a_l] = k tau1 delta_{k+l}, a_0 = -eta tau1.
"""

import pytest
from gmpy2 import mpq

from artifact import Params, S, sample_params
from artifact.fock import (
    FockVector,
    Insertion,
    apply_alpha_pm,
    commutator,
    ins_one,
    pm_vector,
)
from artifact.partitions import multipartition_basis
from artifact.virasoro import (
    BosonSpec,
    fock_boson_rep,
    geometric_minus_spec,
    minus_boson_rep,
    sample_boson_spec,
    screening_etas,
    screening_mode,
    virasoro_bracket_rhs,
    virasoro_mode,
)

ONE = ins_one()
VAC1 = ((),)
VAC2 = ((), ())


def vectors_equal(a, b):
    return (a - b).is_zero()


def ops_agree(x, y, rank, degrees):
    for d in degrees:
        for mp in multipartition_basis(d, rank):
            if not vectors_equal(x.on_basis(mp), y.on_basis(mp)):
                return False, (d, mp)
    return True, None


def test_boson_spec_requires_nonzero_tau1():
    with pytest.raises(ValueError):
        BosonSpec(mpq(0), mpq(1), mpq(1))


def test_fock_rep_heisenberg_commutation():
    spec = BosonSpec(S(5, 3), S(-2), S(1, 2))
    rep = fock_boson_rep(spec)
    for k in (1, 2, 3):
        for l in (1, 2, 3):
            for key in (((),), ((2, 1),), ((3, 1, 1),)):
                v = FockVector.basis_vector(1, key)
                lhs = rep.apply_mode(k, rep.apply_mode(-l, v)) - rep.apply_mode(
                    -l, rep.apply_mode(k, v)
                )
                expected = v.scale(k * spec.tau1) if k == l else FockVector(1)
                assert vectors_equal(lhs, expected)


def test_l0_vacuum_eigenvalue():
    for seed in (1, 2, 3):
        spec = sample_boson_spec(seed)
        g = S(7, 2)
        out = virasoro_mode(0, Insertion(g), spec).on_basis(VAC1)
        expect = g * spec.tau1 * (spec.eta ** 2 - spec.kappa ** 2) / 2
        assert vectors_equal(
            out, FockVector.basis_vector(1, VAC1).scale(expect)
        )
    balanced = BosonSpec(S(3), S(5, 4), S(5, 4))
    assert virasoro_mode(0, ONE, balanced).on_basis(VAC1).is_zero()


def test_positive_modes_annihilate_vacuum():
    spec = sample_boson_spec(4)
    for n in (1, 2, 3, 4):
        assert virasoro_mode(n, Insertion(S(2, 5)), spec).on_basis(VAC1).is_zero()
    assert virasoro_mode(1, ONE, spec).on_basis(VAC1).is_zero()


def test_l_minus_two_vacuum_explicit():
    spec = sample_boson_spec(6)
    g = S(3, 4)
    out = virasoro_mode(-2, Insertion(g), spec).on_basis(VAC1)
    expected = FockVector(
        1,
        {
            ((2,),): g * (2 * spec.kappa - spec.eta),
            ((1, 1),): g / (2 * spec.tau1),
        },
    )
    assert vectors_equal(out, expected)


def test_l0_grades_by_degree():
    spec = sample_boson_spec(7)
    op = virasoro_mode(0, ONE, spec)
    vac_value = spec.tau1 * (spec.eta ** 2 - spec.kappa ** 2) / 2
    for d in range(6):
        for mp in multipartition_basis(d, 1):
            out = op.on_basis(mp)
            expected = FockVector.basis_vector(1, mp).scale(vac_value + d)
            assert vectors_equal(out, expected)


def test_virasoro_bracket_with_central_term():
    g1 = Insertion(S(2, 3))
    g2 = Insertion(S(-3))
    for seed in (11, 12):
        spec = sample_boson_spec(seed)
        rep = fock_boson_rep(spec)
        for n in range(-3, 4):
            for m in range(-3, 4):
                lhs = commutator(
                    virasoro_mode(n, g1, spec, rep),
                    virasoro_mode(m, g2, spec, rep),
                )
                rhs = virasoro_bracket_rhs(n, m, g1, g2, spec, rep)
                for d in range(5):
                    if d - (n + m) < 0:
                        continue
                    for mp in multipartition_basis(d, 1):
                        assert vectors_equal(lhs.on_basis(mp), rhs.on_basis(mp)), (
                            seed, n, m, d, mp,
                        )


def test_central_term_value_on_vacuum():
    spec = sample_boson_spec(21)
    g1 = Insertion(S(5, 7))
    g2 = Insertion(S(2))
    lhs = commutator(
        virasoro_mode(2, g1, spec), virasoro_mode(-2, g2, spec)
    ).on_basis(VAC1)
    l0 = virasoro_mode(0, g1 * g2, spec).on_basis(VAC1).scale(4)
    central = (
        g1.value * g2.value * (1 - 12 * spec.kappa ** 2 * spec.tau1) * mpq(1, 2)
    )
    expected = l0 + FockVector.basis_vector(1, VAC1).scale(central)
    assert vectors_equal(lhs, expected)


def test_minus_boson_l0_vacuum_value():
    params = sample_params(5, 2)
    u = params.a[0] - params.a[1]
    for sign in (1, -1):
        spec = geometric_minus_spec(params, u / 2, kappa_sign=sign)
        rep = minus_boson_rep(params, u / 2)
        out = virasoro_mode(0, ONE, spec, rep).on_basis(VAC2)
        expect = -(u ** 2 - params.hbar ** 2) / (4 * params.t1 * params.t2)
        assert vectors_equal(out, FockVector.basis_vector(2, VAC2).scale(expect))


def test_minus_boson_bracket():
    params = sample_params(8, 2)
    u = params.a[0] - params.a[1]
    spec = geometric_minus_spec(params, u / 2)
    rep = minus_boson_rep(params, u / 2)
    g = Insertion(S(1, 2))
    for n in range(-2, 3):
        for m in range(-2, 3):
            lhs = commutator(
                virasoro_mode(n, ONE, spec, rep), virasoro_mode(m, g, spec, rep)
            )
            rhs = virasoro_bracket_rhs(n, m, ONE, g, spec, rep)
            ok, where = ops_agree(
                lhs, rhs, 2, [d for d in range(4) if d - (n + m) >= 0]
            )
            assert ok, (n, m, where)


# ---------------------------------------------------------------------------
# Screening operators.


def screening_params(n, t1=S(2), t2=S(5), slope="t1"):
    """Rank-2 Params satisfying the integrality constraint for the slope."""
    shift = n * t1 - t2 if slope == "t1" else n * t2 - t1
    a2 = S(1, 3)
    return Params(
        t1=t1, t2=t2, a=(a2 + shift, a2), q=S(7), seed=0, check_separation=False
    )


def test_screening_rejects_bad_inputs():
    params = screening_params(1)
    with pytest.raises(ValueError):
        screening_mode(params.t1, 1, params)  # slope must be 1/t1 or 1/t2
    with pytest.raises(ValueError):
        screening_mode(1 / params.t1, 2, params)  # integrality fails for n=2
    rank1 = sample_params(1, 1)
    with pytest.raises(ValueError):
        screening_mode(1 / rank1.t1, 1, rank1)


def test_screening_vacuum_image_small():
    tau_one = None
    for n in (0, 1, 2):
        params = screening_params(n)
        t2 = params.t2
        tau_one = -1 / (params.t1 * t2)
        op = screening_mode(1 / params.t1, n, params)
        out = op.on_basis(VAC2)
        if n == 0:
            expected = FockVector.basis_vector(2, VAC2).scale(tau_one)
        elif n == 1:
            expected = pm_vector((), (1,), params).scale(tau_one * (-t2))
        else:
            expected = pm_vector((), (2,), params).scale(tau_one * (-t2) / 2) + (
                pm_vector((), (1, 1), params).scale(tau_one * t2 ** 2 / 2)
            )
        assert vectors_equal(out, expected), n


def test_screening_mirror_slope_vacuum_image():
    params = screening_params(1, slope="t2")
    t1 = params.t1
    tau_one = -1 / (t1 * params.t2)
    out = screening_mode(1 / params.t2, 1, params).on_basis(VAC2)
    expected = pm_vector((), (1,), params).scale(tau_one * (-t1))
    assert vectors_equal(out, expected)


def test_screening_negative_mode_kills_vacuum():
    params = screening_params(-1)
    op = screening_mode(1 / params.t1, -1, params)
    assert op.on_basis(VAC2).is_zero()
    assert op.degree_shift == -1


def test_screening_commutes_with_plus_modes():
    params = screening_params(1)
    op = screening_mode(1 / params.t1, 1, params)
    for k in (-2, -1, 1, 2):
        for d in range(3):
            for mp in multipartition_basis(d, 2):
                v = FockVector.basis_vector(2, mp)
                lhs = op.apply(apply_alpha_pm(1, k, ONE, v, params))
                rhs = apply_alpha_pm(1, k, ONE, op.apply(v), params)
                assert vectors_equal(lhs, rhs), (k, mp)


def test_screening_intertwines_virasoro():
    for slope in ("t1", "t2"):
        for n in (1, 2):
            params = screening_params(n, slope=slope)
            mu = 1 / (params.t1 if slope == "t1" else params.t2)
            eta_src, eta_tgt = screening_etas(mu, n, params)
            screen = screening_mode(mu, n, params)
            rep_src = minus_boson_rep(params, eta_src)
            rep_tgt = minus_boson_rep(params, eta_tgt)
            spec_src = geometric_minus_spec(params, eta_src)
            spec_tgt = geometric_minus_spec(params, eta_tgt)
            for k in (-2, -1, 0, 1, 2):
                l_src = virasoro_mode(k, ONE, spec_src, rep_src)
                l_tgt = virasoro_mode(k, ONE, spec_tgt, rep_tgt)
                for d in range(3):
                    for mp in multipartition_basis(d, 2):
                        v = FockVector.basis_vector(2, mp)
                        lhs = screen.apply(l_src.apply(v))
                        rhs = l_tgt.apply(screen.apply(v))
                        assert vectors_equal(lhs, rhs), (slope, n, k, mp)
