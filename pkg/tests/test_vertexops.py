"""Charges, divisor operators, quantum multiplication, spectrum matrices."""

from gmpy2 import mpq

import pytest

from artifact.fock import (
    FockVector,
    identity_operator,
    ins_one,
    operator_matrix,
    pm_vector,
)
from artifact.linalg import char_poly, mat_eq, mat_sub
from artifact.partitions import multipartition_basis, partitions_of
from artifact.scalar import Params, S, poly_mul, sample_params
from artifact.symfunc import fock_dictionary, jack_polynomial, lehn_eigenvalue
from artifact.vertexops import (
    ChamberOrder,
    cubic_part,
    integral_charge,
    lehn_operator,
    omega,
    omega_hat,
    phi_n,
    purely_quantum_part,
    q_classical,
    q_hat_cl,
    q_quantum,
    q_zero_derivation,
    quadratic_part,
    rank_one_correction,
    spectrum_matrix,
)

P = sample_params(2, 1)
P2 = sample_params(2, 2)
A_TEST = S(4, 7)


def basis1(*parts):
    return FockVector.basis_vector(1, (tuple(parts),))


def op_equal(x, y, degrees):
    return all(mat_eq(operator_matrix(x, d), operator_matrix(y, d))
               for d in degrees)


def test_chamber_order():
    c = ChamberOrder.standard(3)
    assert c.rho(1, 1) == mpq(1, 2)
    assert c.rho(1, 2) == 1
    assert c.rho(2, 1) == 0
    rev = ChamberOrder.reversed_(3)
    assert rev.rho(1, 2) == 0
    assert rev.rho(3, 1) == 1
    assert rev.ordered_pairs() == [(3, 2), (3, 1), (2, 1)]
    with pytest.raises(ValueError):
        ChamberOrder((1, 3))


def test_phi2_acts_by_degree():
    p2 = phi_n(2, 1, P, 1)
    assert p2.apply(FockVector.vacuum(1)).is_zero()
    for n in range(1, 6):
        for la in partitions_of(n):
            v = basis1(*la)
            assert p2.apply(v) == v.scale(mpq(n))


def test_phi2_per_factor_rank2():
    p2_first = phi_n(2, 1, P2, 2)
    v = FockVector.basis_vector(2, ((2, 1), (3,)))
    assert p2_first.apply(v) == v.scale(mpq(3))
    p2_second = phi_n(2, 2, P2, 2)
    assert p2_second.apply(v) == v.scale(mpq(3))


def test_phi3_examples():
    p3 = phi_n(3, 1, P, 1)
    assert p3.apply(basis1(1)).is_zero()
    assert p3.apply(basis1(2)) == basis1(1, 1).scale(P.e)
    assert p3.apply(basis1(1, 1)) == basis1(2)


def test_phi_n_rejects_other_orders():
    with pytest.raises(ValueError):
        phi_n(4, 1, P, 1)


def test_phi2_minus_acts_by_minus_degree():
    field = [(1, 1), (2, -1)]
    p2m = phi_n(2, field, P2, 2)
    v_minus = pm_vector((), (2, 1), P2)
    assert p2m.apply(v_minus) == v_minus.scale(mpq(6))
    v_plus = pm_vector((3, 1), (), P2)
    assert p2m.apply(v_plus).is_zero()
    v_mixed = pm_vector((2,), (1, 1), P2)
    assert p2m.apply(v_mixed) == v_mixed.scale(mpq(4))


def test_omega_eigenvalues():
    om = omega([((1, 1), mpq(1))], P, 1)
    assert om.apply(basis1(1)) == basis1(1)
    assert om.apply(basis1(2)) == basis1(2).scale(mpq(4))
    assert om.apply(basis1(1, 1)) == basis1(1, 1).scale(mpq(2))
    assert om.apply(basis1(2, 1)) == basis1(2, 1).scale(mpq(5))


def test_omega_cross_factor():
    om12 = omega([((1, 2), mpq(1))], P2, 2)
    assert om12.apply(FockVector.vacuum(2)).is_zero()
    om21 = omega([((2, 1), mpq(1))], P2, 2)
    v = FockVector.basis_vector(2, ((1,), ()))
    assert om21.apply(v) == FockVector.basis_vector(2, ((), (1,)))


def test_omega_hat_degree_one_matrix():
    m = operator_matrix(omega_hat(P2, 2), 1)
    assert m == [[mpq(1), mpq(1)], [mpq(1), mpq(1)]]


def test_lehn_low_degrees():
    op = lehn_operator(A_TEST, P)
    assert op.apply(FockVector.vacuum(1)).is_zero()
    assert op.apply(basis1(1)) == basis1(1).scale(A_TEST)
    h, e = P.hbar, P.e
    m = operator_matrix(op, 2)
    assert m == [[2 * A_TEST + h, mpq(-1)], [-e, 2 * A_TEST]]
    chi = char_poly(m)
    expected = poly_mul((-(2 * A_TEST - P.t1), mpq(1)),
                        (-(2 * A_TEST - P.t2), mpq(1)))
    assert chi == expected


def test_lehn_jack_eigenvectors():
    for n in range(1, 5):
        op = lehn_operator(A_TEST, P)
        for la in partitions_of(n):
            j = jack_polynomial(la, P.t1, P.t2)
            v = fock_dictionary(j, "from_symfunc", P.t1)
            ev = lehn_eigenvalue(la, A_TEST, P.t1, P.t2)
            assert op.apply(v) == v.scale(ev), la


def test_q_classical_rank1_is_lehn():
    lehn = lehn_operator(P.a[0], P)
    qc = q_classical(P)
    assert op_equal(lehn, qc, range(5))


def test_q_classical_rank2_degree1():
    h = P2.hbar
    std = operator_matrix(q_classical(P2), 1)
    assert std == [[P2.a[0], mpq(0)], [h, P2.a[1]]]
    rev = operator_matrix(q_classical(P2, ChamberOrder.reversed_(2)), 1)
    assert rev == [[P2.a[0], h], [mpq(0), P2.a[1]]]


def test_q_classical_chamber_difference():
    std = q_classical(P2)
    rev = q_classical(P2, ChamberOrder.reversed_(2))
    h = P2.hbar
    flip = omega([((2, 1), mpq(1)), ((1, 2), mpq(-1))], P2, 2).scale(h)
    for d in range(4):
        lhs = mat_sub(operator_matrix(std, d), operator_matrix(rev, d))
        assert mat_eq(lhs, operator_matrix(flip, d))


def test_cubic_part_equals_minus_phi3_sum():
    printed = cubic_part(P2)
    charge = phi_n(3, 1, P2, 2).scale(mpq(-1)) + phi_n(3, 2, P2, 2).scale(mpq(-1))
    assert op_equal(printed, charge, range(5))
    printed1 = cubic_part(P)
    charge1 = phi_n(3, 1, P, 1).scale(mpq(-1))
    assert op_equal(printed1, charge1, range(5))


def test_q_quantum_at_q_zero_is_classical():
    for params in (P, P2):
        qq = q_quantum(params, q=mpq(0))
        qc = q_classical(params)
        assert op_equal(qq, qc, range(5))


def test_quantum_tail_annihilates_divided_powers():
    tail = purely_quantum_part(P) + rank_one_correction(P)
    for n in range(7):
        v = basis1(*([1] * n))
        assert tail.apply(v).is_zero(), n


def test_q_quantum_rank2_degree1_matrix():
    q = P2.q
    g = (P2.t1 + P2.t2) * q / (1 - q)
    h = P2.hbar
    m = operator_matrix(q_quantum(P2), 1)
    assert m == [[P2.a[0] - g, -g], [h - g, P2.a[1] - g]]
    trace = m[0][0] + m[1][1]
    assert trace == P2.a[0] + P2.a[1] - 2 * (P2.t1 + P2.t2) * q / (1 - q)


def test_q_quantum_trace_matches_spectrum_matrix():
    # the degree-1 trace equals -(t1+t2) * trace(A_1) after rescaling the
    # framing parameters by t1+t2 (the spectrum matrices are dimensionless)
    tsum = P2.t1 + P2.t2
    scaled = Params(
        t1=P2.t1, t2=P2.t2,
        a=tuple(x / tsum for x in P2.a), q=P2.q, seed=P2.seed,
        check_separation=False,
    )
    a1 = spectrum_matrix(1, scaled)
    trace_a1 = a1[0][0] + a1[1][1]
    m = operator_matrix(q_quantum(P2), 1)
    assert m[0][0] + m[1][1] == -tsum * trace_a1


def test_q_quantum_rejects_roots_of_unity():
    with pytest.raises(ValueError):
        q_quantum(P2, q=mpq(1))
    with pytest.raises(ValueError):
        q_quantum(P2, q=mpq(-1))


def test_qhat_vacuum_value():
    op = q_hat_cl(P)
    a = P.a[0]
    h, e = P.hbar, P.e
    tau = lambda x: -x / (P.t1 * P.t2)
    expected = tau(a ** 3) / 6 - tau((h * h + 2 * e) * a) / 24
    assert op.apply(FockVector.vacuum(1)) == FockVector.vacuum(1).scale(expected)


def test_qhat_rank1_is_shifted_lehn_plus_scalar():
    a = P.a[0]
    h, e = P.hbar, P.e
    tau = lambda x: -x / (P.t1 * P.t2)
    scalar = tau(a ** 3) / 6 - tau((h * h + 2 * e) * a) / 24
    reference = (
        lehn_operator(a, P)
        + phi_n(2, 1, P, 1).scale(h / 2)
        + identity_operator(1).scale(scalar)
    )
    assert op_equal(q_hat_cl(P), reference, range(5))


def test_cross_derivative_charge_degree1():
    op = integral_charge([((( 1, mpq(1)),), 0), (((2, mpq(1)),), 1)],
                         ins_one(), P2, 2)
    m = operator_matrix(op, 1)
    assert m == [[mpq(0), mpq(-1)], [mpq(1), mpq(0)]]


def test_spectrum_matrix_examples():
    p1 = sample_params(5, 1)
    m = spectrum_matrix(1, p1)
    q = p1.q
    assert m == [[-p1.a[0] + q / (1 - q)]]
    zero_q = spectrum_matrix(1, P2, q=mpq(0))
    assert zero_q == [[-P2.a[0], mpq(0)], [mpq(1), -P2.a[1]]]
    with pytest.raises(ValueError):
        spectrum_matrix(2, P2, q=mpq(-1))
    a2 = spectrum_matrix(2, P2)
    qf = 4 * P2.q ** 2 / (1 - P2.q ** 2)
    assert a2[0][0] == -2 * (P2.a[0] - mpq(1, 2)) + qf
    assert a2[1][0] == 4 + qf
    assert a2[0][1] == qf
    assert a2[1][1] == -2 * (P2.a[1] - mpq(1, 2)) + qf


def test_q_zero_derivation_small():
    op = q_zero_derivation(P2, max_degree=4)
    assert op.apply(FockVector.vacuum(2)).is_zero()
    mats = {n: spectrum_matrix(n, P2) for n in (1, 2, 3)}
    for n in (1, 2, 3):
        for i in (0, 1):
            mp = (((n,), ()) if i == 0 else ((), (n,)))
            image = op.apply(FockVector.basis_vector(2, mp))
            for j in (0, 1):
                key = [(), ()]
                key[j] = (n,)
                assert image.coeff(tuple(key)) == mats[n][j][i]
    # two parts of size 1 in distinct components
    both = FockVector.basis_vector(2, ((1,), (1,)))
    image = op.apply(both)
    a1 = mats[1]
    assert image.coeff(((1,), (1,))) == a1[0][0] + a1[1][1]
    assert image.coeff(((), (1, 1))) == a1[1][0]
    assert image.coeff(((1, 1), ())) == a1[0][1]
    # multiplicity weighting: two parts of size 1 in one component
    two = FockVector.basis_vector(2, ((1, 1), ()))
    image = op.apply(two)
    assert image.coeff(((1, 1), ())) == 2 * a1[0][0]
    assert image.coeff(((1,), (1,))) == 2 * a1[1][0]


def test_quadratic_part_diagonal_coefficients():
    # alpha_{-n}(1) alpha_n(pt) acts by -n on p_n, so a single part of size n
    # in factor i scales by n * (a_i + (t1+t2)(1-n)/2)
    tsum = P2.t1 + P2.t2
    quad = quadratic_part(P2)
    for n in (1, 2, 3):
        for i in (0, 1):
            mp = (((n,), ()) if i == 0 else ((), (n,)))
            v = FockVector.basis_vector(2, mp)
            image = quad.apply(v)
            diag = n * (P2.a[i] + tsum * mpq(1 - n, 2))
            assert image.coeff(mp) == diag
            cross = image - v.scale(diag)
            for key in cross.terms:
                assert key != mp
