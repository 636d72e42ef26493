"""Graded Fock modules F(a_1) x ... x F(a_r) with Heisenberg mode action,
zero modes, the +/- two-factor splitting, and graded matrix extraction.

Internal dictionary: on each tensor factor, alpha_{-k}(1) acts as
multiplication by p_k and alpha_k(gamma) as k*tau(gamma)*d/dp_k for k > 0.
Basis keys are multipartitions (tuples of partitions), one per factor.
"""

from __future__ import annotations

from gmpy2 import mpq

from .partitions import (
    add_part,
    multipartition_basis,
    multiplicity,
    partitions_of,
    remove_part,
)
from .scalar import Params, Scalar


class Insertion:
    """A class c.1 + d.pt stored as the single scalar c + d*t1*t2, since
    pt = t1*t2*1 after localization."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = mpq(value)

    def __mul__(self, other):
        if isinstance(other, Insertion):
            return Insertion(self.value * other.value)
        return Insertion(self.value * mpq(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Insertion) and self.value == other.value

    def __repr__(self):
        return "Insertion(%s)" % self.value

    def tau(self, params: Params):
        return -self.value / (params.t1 * params.t2)


def ins_one() -> Insertion:
    return Insertion(1)


def ins_pt(params: Params) -> Insertion:
    return Insertion(params.t1 * params.t2)


class FockVector:
    """Sparse exact vector on the multipartition basis; coefficients are
    Scalars or RatFuncs. Immutable by convention."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None):
        self.rank = rank
        self.terms = {}
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    self.terms[key] = coeff

    @staticmethod
    def vacuum(rank):
        key = tuple(() for _ in range(rank))
        return FockVector(rank, {key: mpq(1)})

    @staticmethod
    def basis_vector(rank, mp):
        return FockVector(rank, {tuple(mp): mpq(1)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = out.get(key)
            val = coeff if acc is None else acc + coeff
            if val:
                out[key] = val
            elif acc is not None:
                del out[key]
        v = FockVector(self.rank)
        v.terms = out
        return v

    def __neg__(self):
        v = FockVector(self.rank)
        v.terms = {k: -c for k, c in self.terms.items()}
        return v

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return FockVector(self.rank)
        v = FockVector(self.rank)
        v.terms = {k: coeff * c for k, coeff in self.terms.items()}
        return v

    def coeff(self, mp):
        return self.terms.get(tuple(mp), mpq(0))

    def degree_components(self):
        """Map degree -> FockVector of that homogeneous part."""
        parts = {}
        for key, coeff in self.terms.items():
            d = sum(sum(c) for c in key)
            parts.setdefault(d, {})[key] = coeff
        return {d: FockVector(self.rank, t) for d, t in parts.items()}

    def __eq__(self, other):
        return (
            isinstance(other, FockVector)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "FockVector(0)"
        bits = []
        for key in sorted(self.terms):
            bits.append("%s: %s" % (key, self.terms[key]))
        return "FockVector{%s}" % ", ".join(bits)


def apply_alpha(i: int, n: int, gamma: Insertion, v: FockVector,
                params: Params) -> FockVector:
    """alpha_n^{(i)}(gamma) on v; i is 1-based, n nonzero, |n| <= degree cap."""
    if n == 0:
        raise ValueError("zero modes live in zero_mode(), not apply_alpha()")
    out = {}
    idx = i - 1
    if idx < 0 or idx >= v.rank:
        raise ValueError("factor index out of range")
    if n < 0:
        k = -n
        factor = gamma.value
        if not factor:
            return FockVector(v.rank)
        for key, coeff in v.terms.items():
            comp = add_part(key[idx], k)
            new_key = key[:idx] + (comp,) + key[idx + 1:]
            val = coeff * factor
            acc = out.get(new_key)
            val = val if acc is None else acc + val
            if val:
                out[new_key] = val
            elif acc is not None:
                del out[new_key]
    else:
        k = n
        base = k * gamma.tau(params)
        if not base:
            return FockVector(v.rank)
        for key, coeff in v.terms.items():
            m = multiplicity(key[idx], k)
            if not m:
                continue
            comp = remove_part(key[idx], k)
            new_key = key[:idx] + (comp,) + key[idx + 1:]
            val = coeff * (base * m)
            acc = out.get(new_key)
            val = val if acc is None else acc + val
            if val:
                out[new_key] = val
            elif acc is not None:
                del out[new_key]
    res = FockVector(v.rank)
    res.terms = out
    return res


def apply_beta(n: int, gamma: Insertion, v: FockVector,
               params: Params) -> FockVector:
    """beta_n(gamma) = sum_i alpha_n^{(i)}(gamma)."""
    acc = FockVector(v.rank)
    for i in range(1, v.rank + 1):
        acc = acc + apply_alpha(i, n, gamma, v, params)
    return acc


def apply_alpha_pm(sign: int, n: int, gamma: Insertion, v: FockVector,
                   params: Params) -> FockVector:
    """alpha^{+-}_n(gamma) = alpha_n(gamma) x 1 +- 1 x alpha_n(gamma), rank 2."""
    if v.rank != 2:
        raise ValueError("plus/minus modes require rank 2")
    first = apply_alpha(1, n, gamma, v, params)
    second = apply_alpha(2, n, gamma, v, params)
    return first + second.scale(mpq(sign))


def zero_mode(i: int, gamma: Insertion, params: Params) -> Scalar:
    """Scalar by which alpha_0^{(i)}(gamma) acts on F(a_i): -tau(gamma a_i)."""
    return gamma.value * params.a[i - 1] / (params.t1 * params.t2)


def zero_mode_pm(sign: int, gamma: Insertion, params: Params) -> Scalar:
    """alpha^{+-}_0(gamma) scalar on F(a_1) x F(a_2)."""
    if len(params.a) != 2:
        raise ValueError("plus/minus modes require rank 2")
    z1 = zero_mode(1, gamma, params)
    z2 = zero_mode(2, gamma, params)
    return z1 + sign * z2


class GradedOperator:
    """A degree-windowed linear map given by its action on basis keys.

    The action callable maps a multipartition to a FockVector of degree
    (input degree + degree_shift). Basis applications are memoized.
    """

    __slots__ = ("rank_in", "rank_out", "degree_shift", "_action", "_cache")

    def __init__(self, rank_in, rank_out, degree_shift, action):
        self.rank_in = rank_in
        self.rank_out = rank_out
        self.degree_shift = degree_shift
        self._action = action
        self._cache = {}

    def on_basis(self, mp) -> FockVector:
        mp = tuple(mp)
        hit = self._cache.get(mp)
        if hit is None:
            hit = self._action(mp)
            self._cache[mp] = hit
        return hit

    def apply(self, v: FockVector) -> FockVector:
        if v.rank != self.rank_in:
            raise ValueError("rank mismatch")
        acc = FockVector(self.rank_out)
        for key, coeff in v.terms.items():
            acc = acc + self.on_basis(key).scale(coeff)
        return acc

    def __add__(self, other):
        if (self.rank_in, self.rank_out, self.degree_shift) != (
            other.rank_in, other.rank_out, other.degree_shift
        ):
            raise ValueError("incompatible graded operators")
        return GradedOperator(
            self.rank_in, self.rank_out, self.degree_shift,
            lambda mp: self.on_basis(mp) + other.on_basis(mp),
        )

    def __sub__(self, other):
        return self + other.scale(mpq(-1))

    def scale(self, c):
        return GradedOperator(
            self.rank_in, self.rank_out, self.degree_shift,
            lambda mp: self.on_basis(mp).scale(c),
        )

    def then(self, other):
        """other o self (self applied first)."""
        if self.rank_out != other.rank_in:
            raise ValueError("rank mismatch in composition")
        return GradedOperator(
            self.rank_in, other.rank_out,
            self.degree_shift + other.degree_shift,
            lambda mp: other.apply(self.on_basis(mp)),
        )


def identity_operator(rank):
    return GradedOperator(rank, rank, 0, lambda mp: FockVector.basis_vector(rank, mp))


def zero_operator(rank, shift=0):
    return GradedOperator(rank, rank, shift, lambda mp: FockVector(rank))


def commutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    """[a, b] = a o b - b o a."""
    return b.then(a) - a.then(b)


def alpha_operator(i, n, gamma, params, rank):
    return GradedOperator(
        rank, rank, -n,
        lambda mp: apply_alpha(i, n, gamma, FockVector.basis_vector(rank, mp), params),
    )


def operator_matrix(op: GradedOperator, degree_in: int):
    """Exact matrix of op on the degree block, canonical multipartition order;
    rows index the output basis, columns the input basis."""
    degree_out = degree_in + op.degree_shift
    if degree_out < 0:
        raise ValueError("output degree negative")
    basis_in = multipartition_basis(degree_in, op.rank_in)
    basis_out = multipartition_basis(degree_out, op.rank_out)
    index_out = {mp: k for k, mp in enumerate(basis_out)}
    mat = [[mpq(0)] * len(basis_in) for _ in range(len(basis_out))]
    for col, mp in enumerate(basis_in):
        image = op.on_basis(mp)
        for key, coeff in image.terms.items():
            row = index_out.get(key)
            if row is None:
                raise ValueError(
                    "operator image leaves the declared degree block: %r" % (key,)
                )
            mat[row][col] = coeff
    return mat


# ---------------------------------------------------------------------------
# The two-factor +/- splitting F x F = F^+ x F^-.


def pm_vector(sigma, rho, params: Params) -> FockVector:
    """prod alpha^+_{-sigma_i}(1) prod alpha^-_{-rho_j}(1) applied to vacuum."""
    v = FockVector.vacuum(2)
    one = ins_one()
    for part in rho:
        v = apply_alpha_pm(-1, -part, one, v, params)
    for part in sigma:
        v = apply_alpha_pm(+1, -part, one, v, params)
    return v


def pm_change_of_basis(degree: int, direction: str, params: Params):
    """Change of basis between the pair-of-partitions basis of the degree block
    of F x F and the monomial basis in alpha^{+-} modes on the vacuum.

    'from_pm': columns are the +/- monomial vectors in pair coordinates.
    'to_pm': the inverse matrix.
    """
    from .linalg import mat_inverse

    basis = multipartition_basis(degree, 2)
    index = {mp: k for k, mp in enumerate(basis)}
    cols = []
    for sigma, rho in basis:
        vec = pm_vector(sigma, rho, params)
        col = [mpq(0)] * len(basis)
        for key, coeff in vec.terms.items():
            col[index[key]] = coeff
        cols.append(col)
    m = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
    if direction == "from_pm":
        return m
    if direction == "to_pm":
        return mat_inverse(m)
    raise ValueError("direction must be 'to_pm' or 'from_pm'")
