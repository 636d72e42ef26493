"""Fock module: mode action, zero modes, +/- splitting, matrix extraction."""

from gmpy2 import mpq

import pytest

from artifact.fock import (
    FockVector,
    GradedOperator,
    alpha_operator,
    apply_alpha,
    apply_alpha_pm,
    commutator,
    identity_operator,
    ins_one,
    ins_pt,
    operator_matrix,
    pm_change_of_basis,
    pm_vector,
    zero_mode,
)
from artifact.linalg import mat_eq, mat_identity, mat_mul, det_bareiss
from artifact.partitions import multipartition_basis, partitions_of
from artifact.scalar import Params, S, sample_params

P = sample_params(1, 1)
P2 = sample_params(1, 2)
P3 = sample_params(1, 3)
ONE = ins_one()


def vac(rank=1):
    return FockVector.vacuum(rank)


def test_insertion_conventions():
    pt = ins_pt(P)
    assert pt.value == P.t1 * P.t2
    assert ONE.tau(P) == -1 / (P.t1 * P.t2)
    assert pt.tau(P) == -1
    assert (pt * pt).value == (P.t1 * P.t2) ** 2


def test_creation_on_vacuum():
    v = apply_alpha(1, -1, ONE, vac(), P)
    assert v == FockVector.basis_vector(1, ((1,),))


def test_annihilation_pairing():
    # alpha_1(pt) alpha_{-1}(1) vac = -vac
    v = apply_alpha(1, -1, ONE, vac(), P)
    w = apply_alpha(1, 1, ins_pt(P), v, P)
    assert w == vac().scale(S(-1))


def test_derivative_multiplicity():
    # alpha_2(1) on p_1 p_2 vac = 2 tau(1) p_1 vac
    v = FockVector.basis_vector(1, ((2, 1),))
    w = apply_alpha(1, 2, ONE, v, P)
    assert w == FockVector.basis_vector(1, ((1,),)).scale(2 * ONE.tau(P))


def test_heisenberg_relation_small():
    # [alpha_k(g), alpha_{-l}(g')] = delta_{kl} k tau(gg') on sampled vectors
    pt = ins_pt(P)
    for k in range(1, 4):
        for l in range(1, 4):
            for g1, g2 in [(ONE, ONE), (ONE, pt), (pt, ONE), (pt, pt)]:
                a = alpha_operator(1, k, g1, P, 1)
                b = alpha_operator(1, -l, g2, P, 1)
                comm = commutator(a, b)
                for la in partitions_of(3):
                    got = comm.on_basis((la,))
                    expect = FockVector(1)
                    if k == l:
                        expect = FockVector.basis_vector(1, (la,)).scale(
                            k * (g1 * g2).tau(P)
                        )
                    assert got == expect, (k, l, la)


def test_cross_factor_modes_commute():
    pt = ins_pt(P2)
    a = alpha_operator(1, 2, pt, P2, 2)
    b = alpha_operator(2, -2, ONE, P2, 2)
    comm = commutator(a, b)
    for mp in multipartition_basis(3, 2):
        assert comm.on_basis(mp).is_zero()


def test_zero_mode_values():
    p = Params(t1=S(1), t2=S(1, 3), a=(S(3),), q=S(1, 2))
    assert zero_mode(1, ins_pt(p), p) == 3
    p0 = Params(t1=S(1), t2=S(1, 3), a=(S(0),), q=S(1, 2))
    assert zero_mode(1, ONE, p0) == 0
    pe = Params(t1=S(1), t2=S(1, 3), a=(S(1, 3),), q=S(1, 2))
    assert zero_mode(1, ONE, pe) == 1  # a = t1 t2


def test_pm_modes_commute_and_normalize():
    # [alpha^eps_k, alpha^eta_l] = 2 k tau(1) delta_{k+l} delta_{eps,eta}
    two_tau = 2 * ONE.tau(P2)
    for k in range(1, 4):
        for eps in (+1, -1):
            for eta in (+1, -1):
                def act_plus(mp, k=k, eps=eps):
                    return apply_alpha_pm(
                        eps, k, ONE, FockVector.basis_vector(2, mp), P2)

                def act_minus(mp, k=k, eta=eta):
                    return apply_alpha_pm(
                        eta, -k, ONE, FockVector.basis_vector(2, mp), P2)

                a = GradedOperator(2, 2, -k, act_plus)
                b = GradedOperator(2, 2, k, act_minus)
                comm = commutator(a, b)
                for mp in multipartition_basis(2, 2):
                    got = comm.on_basis(mp)
                    if eps == eta:
                        assert got == FockVector.basis_vector(2, mp).scale(
                            k * two_tau)
                    else:
                        assert got.is_zero()


def test_pm_vector_degree_one():
    plus = pm_vector((1,), (), P2)
    minus = pm_vector((), (1,), P2)
    p1_first = FockVector.basis_vector(2, ((1,), ()))
    p1_second = FockVector.basis_vector(2, ((), (1,)))
    assert plus == p1_first + p1_second
    assert minus == p1_first - p1_second


def test_pm_change_of_basis_examples():
    assert pm_change_of_basis(0, "from_pm", P2) == [[mpq(1)]]
    m = pm_change_of_basis(1, "from_pm", P2)
    assert m == [[mpq(1), mpq(1)], [mpq(1), mpq(-1)]]
    for n in range(5):
        f = pm_change_of_basis(n, "from_pm", P2)
        t = pm_change_of_basis(n, "to_pm", P2)
        assert mat_eq(mat_mul(f, t), mat_identity(len(f)))
    # determinant of the degree-3 block is a power of 2 up to sign
    d3 = det_bareiss(pm_change_of_basis(3, "from_pm", P2))
    num = abs(d3)
    assert num.denominator == 1 and (int(num.numerator) & (int(num.numerator) - 1)) == 0


def test_operator_matrix_shapes_and_identity():
    ident = identity_operator(2)
    m = operator_matrix(ident, 3)
    assert mat_eq(m, mat_identity(10))
    a = alpha_operator(1, -1, ONE, P, 1)
    col = operator_matrix(a, 0)
    assert col == [[mpq(1)]]


def test_operator_linear_combinations():
    a = alpha_operator(1, -1, ONE, P, 1)
    twice = a + a
    assert twice.on_basis(((),)) == a.on_basis(((),)).scale(S(2))
    minus = a - a
    assert minus.on_basis(((1,),)).is_zero()
