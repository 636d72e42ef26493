"""Normally ordered boson charges and the named multiplication operators:
divisor operators on one Fock factor, classical and quantum multiplication
for rank r, the zero-mode-dressed divisor, and the spectrum derivations.

A "field" is a signed combination sum_i c_i alpha^{(i)} of factor bosons,
given either as a bare factor index i or as a list of (i, c) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from gmpy2 import mpq

from .fock import (
    FockVector,
    GradedOperator,
    Insertion,
    apply_alpha,
    apply_beta,
    ins_one,
    ins_pt,
    zero_mode,
)
from .partitions import add_part, remove_part
from .scalar import DEGREE_CAP, Params

_ONE = ins_one()


@dataclass(frozen=True)
class ChamberOrder:
    """A total order on the framing indices 1..r; order[0] is dominant.

    rho(i, j) is 1/2 on the diagonal, 1 if i precedes j, else 0.
    """

    order: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(i) for i in self.order))
        if sorted(self.order) != list(range(1, len(self.order) + 1)):
            raise ValueError("chamber order must be a permutation of 1..r")

    @property
    def rank(self):
        return len(self.order)

    @staticmethod
    def standard(r):
        return ChamberOrder(tuple(range(1, r + 1)))

    @staticmethod
    def reversed_(r):
        return ChamberOrder(tuple(range(r, 0, -1)))

    def position(self, i):
        return self.order.index(i)

    def rho(self, i, j):
        if i == j:
            return mpq(1, 2)
        return mpq(1) if self.position(i) < self.position(j) else mpq(0)

    def ordered_pairs(self):
        """All (i, j) with i strictly before j in this chamber."""
        out = []
        for pos_i, i in enumerate(self.order):
            for j in self.order[pos_i + 1:]:
                out.append((i, j))
        return out


def _field_spec(factors):
    if isinstance(factors, int):
        return ((factors, mpq(1)),)
    out = []
    for i, c in factors:
        out.append((int(i), mpq(c) if isinstance(c, int) else c))
    return tuple(out)


def _apply_field(field, k, v, params):
    acc = None
    for i, c in field:
        w = apply_alpha(i, k, _ONE, v, params)
        if c != 1:
            w = w.scale(c)
        acc = w if acc is None else acc + w
    return acc


_TUPLE_CACHE = {}


def _mode_tuples(n, include_zero):
    """All integer tuples (k_1..k_n) with sum 0 and |k_i| <= DEGREE_CAP,
    entries nonzero unless include_zero."""
    key = (n, include_zero)
    hit = _TUPLE_CACHE.get(key)
    if hit is not None:
        return hit
    cap = DEGREE_CAP
    values = [k for k in range(-cap, cap + 1) if include_zero or k != 0]
    out = []

    def rec(prefix, total):
        if len(prefix) == n - 1:
            last = -total
            if -cap <= last <= cap and (include_zero or last != 0):
                out.append(tuple(prefix) + (last,))
            return
        for k in values:
            rec(prefix + [k], total + k)

    rec([], 0)
    _TUPLE_CACHE[key] = out
    return out


def integral_charge(slots, gamma: Insertion, params: Params, rank: int,
                    include_zero_modes: bool = False) -> GradedOperator:
    """Degree-zero Fourier mode of a normally ordered product of fields.

    slots: sequence of (field, deriv) pairs; deriv d means the slot carries
    (z d/dz)^d of the field, so its mode k picks up the factor (-k)^d.

    The charge expands as ins(gamma) * e^{n-1} times the sum over integer
    mode tuples summing to zero of the normally ordered mode product
    (creation modes leftmost); mode 0 appears only when zero modes are
    enabled and then acts by the framing scalar of the field.
    """
    prepared_slots = [(_field_spec(f), int(d)) for f, d in slots]
    n = len(prepared_slots)
    if n == 0:
        raise ValueError("charge needs at least one field slot")
    prefactor = gamma.value * params.e ** (n - 1)
    zero_scalars = {}

    def zscalar(field):
        hit = zero_scalars.get(field)
        if hit is None:
            hit = mpq(0)
            for i, c in field:
                hit = hit + c * zero_mode(i, _ONE, params)
            zero_scalars[field] = hit
        return hit

    prepared = []
    for ks in _mode_tuples(n, include_zero_modes):
        coeff = prefactor
        skip = False
        pos, neg, zeros = [], [], []
        for (field, d), k in zip(prepared_slots, ks):
            if d:
                if k == 0:
                    skip = True
                    break
                coeff = coeff * mpq(-k) ** d
            if k > 0:
                pos.append((field, k))
            elif k < 0:
                neg.append((field, k))
            else:
                zeros.append(field)
        if skip:
            continue
        for field in zeros:
            coeff = coeff * zscalar(field)
        if not coeff:
            continue
        pos_total = sum(k for _, k in pos)
        prepared.append((coeff, pos_total, tuple(pos), tuple(neg)))

    def action(mp):
        v0 = FockVector.basis_vector(rank, mp)
        d = sum(sum(comp) for comp in mp)
        acc = FockVector(rank)
        for coeff, pos_total, pos, neg in prepared:
            if pos_total > d:
                continue
            w = v0
            dead = False
            for field, k in pos:
                w = _apply_field(field, k, w, params)
                if w.is_zero():
                    dead = True
                    break
            if dead:
                continue
            for field, k in neg:
                w = _apply_field(field, k, w, params)
            acc = acc + w.scale(coeff)
        return acc

    return GradedOperator(rank, rank, 0, action)


def phi_n(n: int, factors, params: Params, rank: int = 1) -> GradedOperator:
    """(1/n!) times the charge of :field^n:(1), zero modes excluded."""
    if n not in (2, 3):
        raise ValueError("phi_n is defined for n in {2, 3}")
    field = _field_spec(factors)
    op = integral_charge([(field, 0)] * n, _ONE, params, rank)
    return op.scale(mpq(1, factorial(n)))


def omega(weight_pairs, params: Params, rank: int) -> GradedOperator:
    """sum of c_{ij} * Omega^{(ij)} over ((i, j), c_{ij}) pairs, with
    Omega^{(ij)} = -sum_{n>0} n alpha^{(i)}_{-n}(1) alpha^{(j)}_n(pt)."""
    pairs = tuple(((int(i), int(j)), c) for (i, j), c in weight_pairs)
    pt = ins_pt(params)

    def action(mp):
        v = FockVector.basis_vector(rank, mp)
        acc = FockVector(rank)
        for (i, j), c in pairs:
            if not c:
                continue
            for k in set(mp[j - 1]):
                w = apply_alpha(j, k, pt, v, params)
                w = apply_alpha(i, -k, _ONE, w, params)
                acc = acc + w.scale(-c * k)
        return acc

    return GradedOperator(rank, rank, 0, action)


def omega_hat(params: Params, rank: int) -> GradedOperator:
    """-sum_{n>0} n beta_{-n}(1) beta_n(pt) = sum over all (i, j) of Omega^{(ij)}."""
    pairs = [((i, j), mpq(1))
             for i in range(1, rank + 1) for j in range(1, rank + 1)]
    return omega(pairs, params, rank)


def lehn_operator(a, params: Params) -> GradedOperator:
    """Divisor multiplication on one Fock factor:
    -Phi_3 + (a - hbar/2) Phi_2 + (hbar/2) Omega."""
    h = params.hbar
    return (
        phi_n(3, 1, params, 1).scale(mpq(-1))
        + phi_n(2, 1, params, 1).scale(a - h / 2)
        + omega([((1, 1), mpq(1))], params, 1).scale(h / 2)
    )


def q_classical(params: Params, chamber: ChamberOrder = None) -> GradedOperator:
    """Rank-r classical divisor operator:
    sum_i (-Phi_3^{(i)} + (a_i - hbar/2) Phi_2^{(i)})
    + hbar sum_{i,j} rho_C(i,j) Omega^{(j,i)}."""
    r = params.r
    if chamber is None:
        chamber = ChamberOrder.standard(r)
    if chamber.rank != r:
        raise ValueError("chamber rank does not match params")
    h = params.hbar
    acc = None
    for i in range(1, r + 1):
        term = (
            phi_n(3, i, params, r).scale(mpq(-1))
            + phi_n(2, i, params, r).scale(params.a[i - 1] - h / 2)
        )
        acc = term if acc is None else acc + term
    pairs = [((j, i), chamber.rho(i, j))
             for i in range(1, r + 1) for j in range(1, r + 1)]
    return acc + omega(pairs, params, r).scale(h)


# ---------------------------------------------------------------------------
# Quantum multiplication, assembled from its printed pieces.


def cubic_part(params: Params) -> GradedOperator:
    """-(1/2) sum_i sum_{n,m>0} (
         t1 t2 alpha^{(i)}_{-n}(1) alpha^{(i)}_{-m}(1) alpha^{(i)}_{n+m}(pt)
         + alpha^{(i)}_{-n-m}(1) alpha^{(i)}_{n}(pt) alpha^{(i)}_{m}(pt) )."""
    r = params.r
    pt = ins_pt(params)
    tt = params.t1 * params.t2
    half = mpq(1, 2)

    def action(mp):
        v = FockVector.basis_vector(r, mp)
        acc = FockVector(r)
        for i in range(1, r + 1):
            comp = mp[i - 1]
            deg = sum(comp)
            for s in set(comp):
                if s < 2:
                    continue
                w = apply_alpha(i, s, pt, v, params)
                for n_ in range(1, s):
                    u = apply_alpha(i, -(s - n_), _ONE, w, params)
                    u = apply_alpha(i, -n_, _ONE, u, params)
                    acc = acc + u.scale(-half * tt)
            for m_ in set(comp):
                w1 = apply_alpha(i, m_, pt, v, params)
                for n_ in range(1, deg - m_ + 1):
                    w2 = apply_alpha(i, n_, pt, w1, params)
                    if w2.is_zero():
                        continue
                    u = apply_alpha(i, -(n_ + m_), _ONE, w2, params)
                    acc = acc + u.scale(-half)
        return acc

    return GradedOperator(r, r, 0, action)


def quadratic_part(params: Params, chamber: ChamberOrder = None) -> GradedOperator:
    """Diagonal -(a_i + (t1+t2)(1-n)/2) alpha^{(i)}_{-n}(1) alpha^{(i)}_n(pt)
    summed over i and n > 0, plus the cross terms
    (t1+t2) n alpha^{(j)}_{-n}(1) alpha^{(i)}_n(pt) for i before j."""
    r = params.r
    if chamber is None:
        chamber = ChamberOrder.standard(r)
    pt = ins_pt(params)
    tsum = params.t1 + params.t2
    cross = chamber.ordered_pairs()

    def action(mp):
        v = FockVector.basis_vector(r, mp)
        acc = FockVector(r)
        for i in range(1, r + 1):
            for k in set(mp[i - 1]):
                w = apply_alpha(i, k, pt, v, params)
                w = apply_alpha(i, -k, _ONE, w, params)
                acc = acc + w.scale(-(params.a[i - 1] + tsum * mpq(1 - k, 2)))
        for i, j in cross:
            for k in set(mp[i - 1]):
                w = apply_alpha(i, k, pt, v, params)
                w = apply_alpha(j, -k, _ONE, w, params)
                acc = acc + w.scale(tsum * k)
        return acc

    return GradedOperator(r, r, 0, action)


def _check_q(q):
    for n in range(1, DEGREE_CAP + 1):
        if q ** n == 1:
            raise ValueError("q is a root of unity of order <= the degree cap")


def purely_quantum_part(params: Params, q=None) -> GradedOperator:
    """(t1+t2) sum_{n>0} (n q^n / (1-q^n)) beta_{-n}(1) beta_n(pt)."""
    q = params.q if q is None else q
    _check_q(q)
    r = params.r
    pt = ins_pt(params)
    tsum = params.t1 + params.t2

    def action(mp):
        v = FockVector.basis_vector(r, mp)
        d = sum(sum(comp) for comp in mp)
        acc = FockVector(r)
        for k in range(1, d + 1):
            coeff = tsum * k * q ** k / (1 - q ** k)
            if not coeff:
                continue
            w = apply_beta(k, pt, v, params)
            if w.is_zero():
                continue
            w = apply_beta(-k, _ONE, w, params)
            acc = acc + w.scale(coeff)
        return acc

    return GradedOperator(r, r, 0, action)


def rank_one_correction(params: Params, q=None) -> GradedOperator:
    """-(t1+t2) (q/(1-q)) sum_{n>0} alpha_{-n}(1) alpha_n(pt), rank 1 only."""
    if params.r != 1:
        raise ValueError("the correction term exists only at rank 1")
    q = params.q if q is None else q
    _check_q(q)
    pt = ins_pt(params)
    coeff = -(params.t1 + params.t2) * q / (1 - q)

    def action(mp):
        v = FockVector.basis_vector(1, mp)
        acc = FockVector(1)
        for k in set(mp[0]):
            w = apply_alpha(1, k, pt, v, params)
            w = apply_alpha(1, -k, _ONE, w, params)
            acc = acc + w.scale(coeff)
        return acc

    return GradedOperator(1, 1, 0, action)


def q_quantum(params: Params, q=None, chamber: ChamberOrder = None) -> GradedOperator:
    """Full modified quantum multiplication: cubic + quadratic + purely
    quantum parts, plus the rank-1 correction when r = 1."""
    q = params.q if q is None else q
    _check_q(q)
    op = cubic_part(params) + quadratic_part(params, chamber) \
        + purely_quantum_part(params, q)
    if params.r == 1:
        op = op + rank_one_correction(params, q)
    return op


def q_hat_cl(params: Params, chamber: ChamberOrder = None) -> GradedOperator:
    """Zero-mode-dressed divisor operator:
    sum_i [ -(1/6) charge(:(alpha^{(i)})^3:)(1)  (zero modes included)
            + (1/24) charge(:alpha^{(i)}:)((hbar^2 + 2e) 1) ]
    + (hbar/2) sum_{i before j} charge(:alpha^{(i)} d(alpha^{(j)}):)(1)
    + (hbar/2) OmegaHat."""
    r = params.r
    if chamber is None:
        chamber = ChamberOrder.standard(r)
    if chamber.rank != r:
        raise ValueError("chamber rank does not match params")
    h = params.hbar
    linear_ins = Insertion(h * h + 2 * params.e)
    acc = None
    for i in range(1, r + 1):
        field = _field_spec(i)
        cubic = integral_charge(
            [(field, 0)] * 3, _ONE, params, r, include_zero_modes=True
        ).scale(mpq(-1, 6))
        linear = integral_charge(
            [(field, 0)], linear_ins, params, r, include_zero_modes=True
        ).scale(mpq(1, 24))
        term = cubic + linear
        acc = term if acc is None else acc + term
    for i, j in chamber.ordered_pairs():
        cross = integral_charge(
            [(_field_spec(i), 0), (_field_spec(j), 1)], _ONE, params, r
        )
        acc = acc + cross.scale(h / 2)
    return acc + omega_hat(params, r).scale(h / 2)


# ---------------------------------------------------------------------------
# Spectrum matrices and their derivation extension.


def spectrum_matrix(n: int, params: Params, q=None):
    """A_n = -n sum_i (a_i + (1-n)/2) E_ii + n^2 sum_{i<j} E_ji
    + (n^2 q^n / (1-q^n)) sum_{i,j} E_ji, rows/columns 1..r."""
    if n <= 0:
        raise ValueError("spectrum matrices are indexed by positive degree")
    q = params.q if q is None else q
    if q ** n == 1:
        raise ValueError("q^n = 1 makes the quantum term singular")
    r = params.r
    qfac = n * n * q ** n / (1 - q ** n)
    mat = [[mpq(0)] * r for _ in range(r)]
    for i in range(r):
        mat[i][i] = -n * (params.a[i] + mpq(1 - n, 2)) + qfac
        for j in range(i + 1, r):
            mat[j][i] = mpq(n * n) + qfac
        for j in range(i):
            mat[j][i] = qfac
    return mat


def q_zero_derivation(params: Params, q=None, max_degree: int = None) -> GradedOperator:
    """Derivation extension of the spectrum matrices on the symmetric algebra
    of the part spaces, in the multipartition basis: one part of size n moves
    from component i to component j with coefficient (A_n)_{ji}, weighted by
    the multiplicity of that part in the source component."""
    if max_degree is None:
        max_degree = DEGREE_CAP
    if max_degree > DEGREE_CAP:
        raise ValueError("max_degree exceeds the degree cap")
    r = params.r
    mats = {n: spectrum_matrix(n, params, q) for n in range(1, max_degree + 1)}

    def action(mp):
        acc = FockVector(r)
        diag = mpq(0)
        for i in range(r):
            for n in set(mp[i]):
                if n > max_degree:
                    raise ValueError("part size exceeds max_degree")
                m = mp[i].count(n)
                a_n = mats[n]
                diag = diag + m * a_n[i][i]
                source = remove_part(mp[i], n)
                for j in range(r):
                    if j == i or not a_n[j][i]:
                        continue
                    key = mp[:i] + (source,) + mp[i + 1:]
                    key = key[:j] + (add_part(mp[j], n),) + key[j + 1:]
                    acc = acc + FockVector.basis_vector(r, key).scale(m * a_n[j][i])
        if diag:
            acc = acc + FockVector.basis_vector(r, mp).scale(diag)
        return acc

    return GradedOperator(r, r, 0, action)
