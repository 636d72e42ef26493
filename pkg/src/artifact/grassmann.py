"""Diagonal-twist XXX spin chains on (Q^2)^(tensor n): the rational gl(2)
R-matrix, transfer matrices and their expansion coefficients at infinity,
stable-basis data for the cotangent bundle of P^1, and the stable-basis
flop rule for cotangent bundles of projective spaces.

Chain conventions: factor 0 is the auxiliary space; chain sites are numbered
1..n.  A basis vector of (Q^2)^(tensor n) is a bit string, site 1 first, and
its integer index reads the string as a binary number (site 1 = most
significant bit).  The weight-k sector is spanned by strings with k ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import mat_identity, mat_inverse, mat_mul
from .scalar import Params, RatFunc, RF_ONE, RF_ZERO, S, Scalar, as_ratfunc


# ---------------------------------------------------------------------------
# Domain types


@dataclass(frozen=True)
class SpinState:
    """A basis vector of the length-n spin chain: a {0,1}-string.

    Equivalently the subset of sites carrying a 1; the weight-k sector of
    the chain corresponds to subsets of size k.
    """

    n: int
    bits: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("chain length must be >= 0")
        bits = tuple(self.bits)
        if len(bits) != self.n or any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be a {0,1}-string of length n")
        object.__setattr__(self, "bits", bits)

    @property
    def weight(self) -> int:
        return sum(self.bits)

    def index(self) -> int:
        """Position in the binary-order chain basis (site 1 = high bit)."""
        out = 0
        for b in self.bits:
            out = (out << 1) | b
        return out

    @staticmethod
    def from_index(n: int, idx: int) -> "SpinState":
        if not 0 <= idx < (1 << n):
            raise ValueError("index out of range for chain length %d" % n)
        return SpinState(n, tuple((idx >> (n - 1 - i)) & 1 for i in range(n)))

    def subset(self) -> frozenset:
        """The set of 1-based sites carrying a 1."""
        return frozenset(i + 1 for i, b in enumerate(self.bits) if b)


@dataclass(frozen=True)
class TwistMatrix:
    """An invertible diagonal twist g = diag(g0, g1) on the auxiliary Q^2."""

    g0: Scalar
    g1: Scalar

    def __post_init__(self):
        g0, g1 = S(self.g0), S(self.g1)
        if g0 * g1 == 0:
            raise ValueError("twist must be invertible: g0*g1 != 0")
        object.__setattr__(self, "g0", g0)
        object.__setattr__(self, "g1", g1)

    @property
    def trace(self) -> Scalar:
        return self.g0 + self.g1

    def weight(self, bit: int) -> Scalar:
        return self.g0 if bit == 0 else self.g1


def spin_basis(n: int):
    """All chain states in index order."""
    return tuple(SpinState.from_index(n, i) for i in range(1 << n))


def weight_sector_indices(n: int, k: int):
    """Indices of the weight-k sector, increasing."""
    return tuple(s.index() for s in spin_basis(n) if s.weight == k)


def weight_block(mat, n: int, k: int):
    """Restriction of a chain operator to the weight-k sector."""
    idx = weight_sector_indices(n, k)
    return tuple(tuple(mat[i][j] for j in idx) for i in idx)


def is_weight_preserving(mat, n: int) -> bool:
    """True iff the operator vanishes between different weight sectors."""
    states = spin_basis(n)
    for i, si in enumerate(states):
        for j, sj in enumerate(states):
            if si.weight != sj.weight and mat[i][j]:
                return False
    return True


# ---------------------------------------------------------------------------
# The rational R-matrix on Q^2 x Q^2

# Basis order of the tensor square: e0xe0, e0xe1, e1xe0, e1xe1.
_SWAP4 = (
    (1, 0, 0, 0),
    (0, 0, 1, 0),
    (0, 1, 0, 0),
    (0, 0, 0, 1),
)


def swap4():
    """The flip of tensor factors on Q^2 x Q^2, over exact rationals."""
    return tuple(tuple(S(x) for x in row) for row in _SWAP4)


def yang_r(u, params: Params):
    """The rational R-matrix (u - hbar*s)/(u - hbar) on Q^2 x Q^2.

    Normalized to act as the identity on symmetric tensors.  `u` may be a
    RatFunc (symbolic spectral parameter) or an exact scalar; numeric
    evaluation at u = hbar raises ZeroDivisionError (simple pole).
    """
    hbar = params.hbar
    if isinstance(u, RatFunc):
        den = u - hbar
        if den.is_zero():
            raise ZeroDivisionError("yang_r pole at u = hbar")
        zero = RF_ZERO
    else:
        u = S(u)
        den = u - hbar
        if den == 0:
            raise ZeroDivisionError("yang_r pole at u = hbar")
        zero = S(0)
    rows = []
    for i in range(4):
        row = []
        for j in range(4):
            num = zero
            if i == j:
                num = num + u
            if _SWAP4[i][j]:
                num = num - hbar
            row.append(num / den)
        rows.append(tuple(row))
    return tuple(rows)


def classical_r_limit(params: Params):
    """The leading coefficient of u*(yang_r(u) - 1)/hbar at u = infinity."""
    u = RatFunc.var()
    r = yang_r(u, params)
    ident = mat_identity(4, one=RF_ONE, zero=RF_ZERO)
    inv_h = 1 / params.hbar
    out = []
    for i in range(4):
        row = []
        for j in range(4):
            f = (r[i][j] - ident[i][j]) * u * inv_h
            row.append(f.series_at_infinity(0)[0])
        out.append(tuple(row))
    return tuple(out)


def classical_r_matrix():
    """e00 x e11 + e11 x e00 - e01 x e10 - e10 x e01 as a 4x4 matrix."""
    z, o = S(0), S(1)
    return (
        (z, z, z, z),
        (z, o, -o, z),
        (z, -o, o, z),
        (z, z, z, z),
    )


# ---------------------------------------------------------------------------
# Transfer matrices with a diagonal twist


def pair_embed(mat4, pos_a: int, pos_b: int, nfac: int, zero):
    """Embed a 4x4 operator on tensor factors (pos_a, pos_b) of nfac factors.

    Factor 0 carries the most significant bit of the row/column index.
    """
    dim = 1 << nfac
    sa = nfac - 1 - pos_a
    sb = nfac - 1 - pos_b
    mask = ~((1 << sa) | (1 << sb))
    out = [[zero] * dim for _ in range(dim)]
    for col in range(dim):
        ca = (col >> sa) & 1
        cb = (col >> sb) & 1
        base = col & mask
        for ra in (0, 1):
            for rb in (0, 1):
                val = mat4[2 * ra + rb][2 * ca + cb]
                if val:
                    out[base | (ra << sa) | (rb << sb)][col] = val
    return out


def transfer_matrix(g: TwistMatrix, u, a, params: Params):
    """Twisted transfer matrix on the length-n chain, n = len(a).

    Computes the partial trace over the auxiliary factor of
    (g x 1) R_{0,n}(u - a_n) ... R_{0,1}(u - a_1), as an exact 2^n x 2^n
    matrix.  `u` may be symbolic (RatFunc) or numeric; numeric evaluation
    requires u - a_i != hbar for every site.
    """
    a = tuple(S(x) for x in a)
    n = len(a)
    if n == 0:
        return ((g.trace,),)
    symbolic = isinstance(u, RatFunc)
    zero = RF_ZERO if symbolic else S(0)
    nfac = n + 1
    prod = None
    for i in range(n, 0, -1):
        factor = pair_embed(yang_r(u - a[i - 1], params), 0, i, nfac, zero)
        prod = factor if prod is None else mat_mul(prod, factor)
    half = 1 << n
    out = []
    for s in range(half):
        row = []
        for t in range(half):
            row.append(g.g0 * prod[s][t] + g.g1 * prod[half + s][half + t])
        out.append(tuple(row))
    return tuple(out)


def baxter_coefficient(g: TwistMatrix, k: int, a, params: Params):
    """Coefficient of u^(-k-1) in transfer_matrix/hbar, expanded at infinity.

    The coefficients for a fixed twist commute among themselves; the k = 0
    coefficient is diagonal in the chain basis.
    """
    if not isinstance(k, int) or not 0 <= k <= 3:
        raise ValueError("order k must be an integer with 0 <= k <= 3")
    t = transfer_matrix(g, RatFunc.var(), a, params)
    inv_h = 1 / params.hbar
    out = []
    for row in t:
        new = []
        for entry in row:
            coeffs = as_ratfunc(entry).series_at_infinity(k + 1)
            new.append(coeffs[k + 1] * inv_h)
        out.append(tuple(new))
    return tuple(out)


# ---------------------------------------------------------------------------
# Stable basis of the cotangent bundle of P^1


def stab_tp1(chamber, params: Params):
    """Restriction matrix of the stable basis of the cotangent bundle of P^1.

    Columns are the two stable classes, rows their restrictions to the two
    fixed points; the variable u is the difference of the framing weights.
    Chamber +1 gives [[-u-hbar, 0], [-hbar, u]], chamber -1 the opposite
    triangle [[-u, -hbar], [0, u-hbar]].
    """
    if chamber in ("+", +1):
        sign = +1
    elif chamber in ("-", -1):
        sign = -1
    else:
        raise ValueError("chamber must be +1 or -1")
    u = RatFunc.var()
    h = RatFunc.const(params.hbar)
    z = RF_ZERO
    if sign > 0:
        return ((-u - h, z), (-h, u))
    return ((-u, -h), (z, u - h))


def yang_r_from_stab(params: Params):
    """Stab(-)^(-1) * Stab(+): the middle 2x2 block of yang_r, symbolically."""
    plus = stab_tp1(+1, params)
    minus = stab_tp1(-1, params)
    return tuple(
        tuple(row)
        for row in mat_mul(mat_inverse(minus, one=RF_ONE, zero=RF_ZERO), plus)
    )


def classical_divisor_tp1(params: Params):
    """Cup product by the weight-(a_1, a_2) divisor class in the stable basis.

    Assembled by localization: cup product acts diagonally on fixed-point
    classes with the restriction weights (a_1, a_2) as eigenvalues, and the
    stable restriction matrix at u = a_1 - a_2 conjugates that diagonal
    action into the stable basis.  Requires rank-2 params.
    """
    if params.r != 2:
        raise ValueError("classical_divisor_tp1 needs rank-2 params")
    a1, a2 = params.a
    u0 = a1 - a2
    stab = [[entry.eval(u0) for entry in row] for row in stab_tp1(+1, params)]
    diag = ((a1, S(0)), (S(0), a2))
    return tuple(
        tuple(row) for row in mat_mul(mat_mul(mat_inverse(stab), diag), stab)
    )


def ef_block_tp1():
    """The product of gl(2) raising and lowering generators on the weight-1
    sector of the length-2 chain: the all-ones 2x2 matrix."""
    o = S(1)
    return ((o, o), (o, o))


def baxter_tp1_block(q, params: Params):
    """Weight-1 block of baxter_coefficient(diag(q,1), 1, params.a)."""
    if params.r != 2:
        raise ValueError("baxter_tp1_block needs rank-2 params")
    g = TwistMatrix(S(q), S(1))
    full = baxter_coefficient(g, 1, params.a, params)
    return weight_block(full, 2, 1)


def baxter_tp1_block_in_q(params: Params):
    """Weight-1 Baxter block with the twist variable q left symbolic.

    The transfer trace is linear in the twist entries, so the block is an
    affine function of q; it is reconstructed exactly from evaluations at
    q = 1 and q = 2 (the twist must stay invertible, so q = 0 is not
    sampled) and verified at q = 3.  Entries are RatFunc in q.
    """
    blocks = {pt: baxter_tp1_block(S(pt), params) for pt in (1, 2, 3)}
    qv = RatFunc.var()
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            slope = blocks[2][i][j] - blocks[1][i][j]
            const = blocks[1][i][j] - slope
            if const + 3 * slope != blocks[3][i][j]:
                raise RuntimeError("transfer trace is not affine in the twist")
            row.append(RatFunc.const(const) + qv * slope)
        out.append(tuple(row))
    return tuple(out)


def quantum_match_tp1(params: Params):
    """Exact comparison data on the weight-1 sector, symbolic in q.

    Returns (lhs, rhs, residual):
      lhs      = B(q)/(1 - q) - B(0), the purely quantum part of the degree-2
                 Baxter element normalized by the trace resummation factor
                 1 - q, where B(q) is the weight-1 block of
                 baxter_coefficient(diag(q,1), 1, a) and B(0) is its
                 classical (q = 0) limit;
      rhs      = hbar * q/(1-q) * ef_block_tp1();
      residual = lhs - rhs.
    The off-diagonal parts of lhs and rhs agree exactly; the residual is a
    scalar multiple of the identity.
    """
    b_in_q = baxter_tp1_block_in_q(params)
    qv = RatFunc.var()
    one_minus_q = RF_ONE - qv
    b_zero = tuple(
        tuple(RatFunc.const(entry.eval(S(0))) for entry in row)
        for row in b_in_q
    )
    lhs = tuple(
        tuple(b_in_q[i][j] / one_minus_q - b_zero[i][j] for j in range(2))
        for i in range(2)
    )
    factor = qv * params.hbar / one_minus_q
    ef = ef_block_tp1()
    rhs = tuple(
        tuple(factor * ef[i][j] for j in range(2)) for i in range(2)
    )
    residual = tuple(
        tuple(lhs[i][j] - rhs[i][j] for j in range(2)) for i in range(2)
    )
    return lhs, rhs, residual


def modified_sign(n: int) -> Scalar:
    """(-1)^n: the sign relating the raw and modified counting variables."""
    return S(-1) if n % 2 else S(1)


def apply_modified_sign(q, n: int, enabled: bool = True):
    """q -> (-1)^n q when enabled, else q unchanged."""
    return modified_sign(n) * S(q) if enabled else S(q)


# ---------------------------------------------------------------------------
# Stable-basis flop rule for cotangent bundles of projective spaces
#
# Source basis: classes s_1, ..., s_n of the subspaces U_i spanned by the
# last n-i+1 coordinate vectors (dim U_i = n-i+1); the zero subspace carries
# the zero class.  Target basis: classes t_1, ..., t_n of the subspaces of
# the dual space spanned by the first j dual coordinates (dim T_j = j), so
# that the annihilator of U_i is T_{i-1} and the annihilator of the zero
# subspace is T_n (the full dual space).


def flop_matrix(n: int):
    """Matrix (columns = source classes) of the map
    s_{U} -> t_{U-annihilator} - (-1)^(dim U) * t_{full dual space}."""
    if n < 1:
        raise ValueError("n >= 1")
    z = S(0)
    cols = []
    for i in range(1, n + 1):
        dim_u = n - i + 1
        col = [z] * n
        if i >= 2:
            col[i - 2] = S(1)  # t_{i-1}
        col[n - 1] -= modified_sign(dim_u)  # - (-1)^(dim U) t_n
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def stab_class_vector(i: int, n: int):
    """Stable class of the i-th fixed point in the source basis: s_i + s_{i+1}
    (the second term absent for i = n, where U_{n+1} is the zero subspace)."""
    if not 1 <= i <= n:
        raise ValueError("fixed point index out of range")
    v = [S(0)] * n
    v[i - 1] += 1
    if i + 1 <= n:
        v[i] += 1
    return tuple(v)


def flopped_stab_class_vector(i: int, n: int):
    """Stable class of the matching fixed point on the flopped side, in the
    target basis: t_{i-1} + t_i (the first term absent for i = 1)."""
    if not 1 <= i <= n:
        raise ValueError("fixed point index out of range")
    v = [S(0)] * n
    v[i - 1] += 1
    if i - 1 >= 1:
        v[i - 2] += 1
    return tuple(v)
