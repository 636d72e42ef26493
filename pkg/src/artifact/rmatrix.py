"""The geometric R-matrix on two Fock factors, degree by degree.

The minus-boson reflection operator is computed as the unique map sending the
Verma basis of one background charge to the Verma basis of the opposite one,
then lifted to the pair-of-partitions basis as identity-on-plus tensor
reflection-on-minus. Linear algebra over rational functions runs through two
independent paths (fraction-free Bareiss and evaluation/interpolation).
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .fock import FockVector, GradedOperator, Insertion, ins_one
from .linalg import mat_inverse, mat_mul
from .partitions import (
    multipartition_basis,
    multipartition_index,
    partitions_of,
)
from .scalar import (
    RF_ONE,
    RF_ZERO,
    Params,
    RatFunc,
    as_ratfunc,
    poly_add,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    poly_scale,
    poly_sub,
    poly_trim,
)
from .vertexops import integral_charge, phi_n
from .virasoro import BosonSpec, fock_boson_rep, virasoro_mode

POLY_ONE = (mpq(1),)

MINUS_FIELD = ((1, mpq(1)), (2, mpq(-1)))


@dataclass(frozen=True)
class RMatrixBlock:
    """One graded block: side 'minus_boson' (basis: partitions of degree,
    reverse-lexicographic) or 'full_tensor' (basis: canonical pairs of
    partitions); matrix entries are reduced rational functions of u."""

    degree: int
    matrix: tuple
    side: str

    def size(self) -> int:
        return len(self.matrix)

    def rows(self):
        return [list(row) for row in self.matrix]

    def eval(self, value):
        return [[c.eval(value) for c in row] for row in self.matrix]


def _freeze(mat):
    return tuple(tuple(as_ratfunc(c) for c in row) for row in mat)


# ---------------------------------------------------------------------------
# Linear solving over RatFunc: two independent paths.


def _poly_lcm(a, b):
    g = poly_gcd(a, b)
    q, _ = poly_divmod(a, g)
    return poly_mul(q, b)


def _row_cleared(row):
    """Scale a RatFunc row by the lcm of denominators; return polynomial
    coefficient tuples."""
    den = POLY_ONE
    for c in row:
        den = _poly_lcm(den, c.den)
    out = []
    for c in row:
        scale, rem = poly_divmod(den, c.den)
        if rem:
            raise RuntimeError("lcm of denominators failed")
        out.append(poly_trim(poly_mul(c.num, scale)))
    return out


def solve_bareiss(a, b):
    """Solve a X = b over rational functions by fraction-free elimination on
    the denominator-cleared augmented matrix; a square, b a matrix."""
    n = len(a)
    width = len(b[0]) if b else 0
    m = [
        _row_cleared([as_ratfunc(c) for c in list(arow) + list(brow)])
        for arow, brow in zip(a, b)
    ]
    prev = POLY_ONE
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    break
            else:
                raise ValueError("singular system in fraction-free elimination")
        for i in range(k + 1, n):
            for j in range(k + 1, n + width):
                num = poly_sub(
                    poly_mul(m[k][k], m[i][j]), poly_mul(m[i][k], m[k][j])
                )
                if not num:
                    m[i][j] = ()
                    continue
                q, rem = poly_divmod(num, prev)
                if rem:
                    raise RuntimeError("fraction-free division left a remainder")
                m[i][j] = q
            m[i][k] = ()
        prev = m[k][k]
    if not m[n - 1][n - 1]:
        raise ValueError("singular system in fraction-free elimination")
    x = [[RF_ZERO] * width for _ in range(n)]
    for c in range(width):
        for i in range(n - 1, -1, -1):
            acc = RatFunc(m[i][n + c]) if m[i][n + c] else RF_ZERO
            for j in range(i + 1, n):
                if m[i][j] and x[j][c]:
                    acc = acc - RatFunc(m[i][j]) * x[j][c]
            x[i][c] = acc / RatFunc(m[i][i])
    return x


def _interpolating_poly(xs, ys):
    """Lagrange interpolation returning a coefficient tuple."""
    modulus = POLY_ONE
    for x in xs:
        modulus = poly_mul(modulus, (-x, mpq(1)))
    out = ()
    for x, y in zip(xs, ys):
        if not y:
            continue
        basis, rem = poly_divmod(modulus, (-x, mpq(1)))
        if rem:
            raise RuntimeError("modulus division failed")
        out = poly_add(out, poly_scale(basis, y / poly_eval(basis, x)))
    return poly_trim(out), modulus


def _rational_reconstruct(xs, ys, num_bound):
    """Cauchy interpolation: the rational function of numerator degree
    <= num_bound matching (xs, ys), via the extended Euclidean algorithm."""
    f, modulus = _interpolating_poly(xs, ys)
    if not f:
        return RF_ZERO
    r0, r1 = modulus, f
    t0, t1 = (), POLY_ONE
    while len(r1) - 1 > num_bound:
        q, rem = poly_divmod(r0, r1)
        r0, r1 = r1, poly_trim(rem)
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
        if not r1:
            raise ValueError("rational reconstruction failed (zero remainder)")
    if not t1:
        raise ValueError("rational reconstruction failed (zero denominator)")
    return RatFunc(r1, t1)


def solve_interp(a, b, degree_bound):
    """Solve a X = b over rational functions by sampling u at rational points,
    solving exactly, and reconstructing entries by Cauchy interpolation;
    verified at held-out sample points."""
    n = len(a)
    width = len(b[0]) if b else 0
    npoints = 2 * degree_bound + 1
    xs = []
    solved = []
    point = 0
    while len(xs) < npoints + 2:
        point += 1
        x = mpq(point)
        try:
            av = [[c.eval(x) for c in row] for row in a]
            bv = [[c.eval(x) for c in row] for row in b]
            xv = mat_mul(mat_inverse(av), bv)
        except (ZeroDivisionError, ValueError):
            continue
        xs.append(x)
        solved.append(xv)
        if point > 40 * (npoints + 2):
            raise ValueError("could not collect enough regular sample points")
    fit_xs, hold_xs = xs[:npoints], xs[npoints:]
    fit_vals = solved[:npoints]
    hold_vals = solved[npoints:]
    out = [[RF_ZERO] * width for _ in range(n)]
    for i in range(n):
        for j in range(width):
            entry = _rational_reconstruct(
                fit_xs, [v[i][j] for v in fit_vals], degree_bound
            )
            for x, vals in zip(hold_xs, hold_vals):
                if entry.eval(x) != vals[i][j]:
                    raise ValueError(
                        "interpolated solution failed held-out verification"
                    )
            out[i][j] = entry
    return out


def solve_linear(a, b, method="bareiss", degree_bound=None):
    if method == "bareiss":
        return solve_bareiss(a, b)
    if method == "interp":
        if degree_bound is None:
            raise ValueError("interp path needs a degree bound")
        return solve_interp(a, b, degree_bound)
    raise ValueError("method must be 'bareiss' or 'interp'")


# ---------------------------------------------------------------------------
# Reflection blocks from Verma bases.


_ONE = ins_one()


def verma_matrix(n: int, spec: BosonSpec):
    """Columns: L_{-mu_1} L_{-mu_2} ... applied to the vacuum (rightmost
    factor first), mu over partitions of n in reverse-lexicographic order;
    rows: monomial basis in the same order."""
    rep = fock_boson_rep(spec)
    ops = {k: virasoro_mode(-k, _ONE, spec, rep) for k in range(1, n + 1)}
    parts = partitions_of(n)
    index = {(la,): i for i, la in enumerate(parts)}
    cols = []
    for mu in parts:
        v = FockVector.vacuum(1)
        for part in reversed(mu):
            v = ops[part].apply(v)
        col = [RF_ZERO] * len(parts)
        for key, coeff in v.terms.items():
            col[index[key]] = as_ratfunc(coeff)
        cols.append(col)
    return [[cols[j][i] for j in range(len(parts))] for i in range(len(parts))]


def reflection_block(n: int, spec: BosonSpec, target: BosonSpec = None,
                     method: str = "auto") -> RMatrixBlock:
    """The unique matrix sending each Verma column of spec to the matching
    Verma column of target (default: kappa -> -kappa), in the monomial basis."""
    if target is None:
        target = BosonSpec(spec.tau1, spec.eta, -spec.kappa)
    if n == 0:
        return RMatrixBlock(0, ((RF_ONE,),), "minus_boson")
    if method == "auto":
        method = "bareiss" if n <= 3 else "interp"
    b_src = verma_matrix(n, spec)
    b_tgt = verma_matrix(n, target)
    # R b_src = b_tgt  <=>  b_src^T R^T = b_tgt^T.
    size = len(b_src)
    bound = n * size + n + 2
    rt = solve_linear(
        [list(col) for col in zip(*b_src)],
        [list(col) for col in zip(*b_tgt)],
        method=method,
        degree_bound=bound,
    )
    return RMatrixBlock(n, _freeze([list(col) for col in zip(*rt)]), "minus_boson")


def geometric_spec(params: Params, kappa_sign: int = 1) -> BosonSpec:
    """Minus-boson spec with symbolic eta = u/2 and kappa = +-hbar/2."""
    tau1 = mpq(-2) / (params.t1 * params.t2)
    eta = RatFunc.var() * RatFunc.const(mpq(1, 2))
    return BosonSpec(tau1, eta, mpq(kappa_sign) * params.hbar / 2)


# ---------------------------------------------------------------------------
# Lift to the full tensor square.


_full_cache = {}


def full_r_block(n: int, params: Params, method: str = "auto") -> RMatrixBlock:
    """Identity on the plus boson tensor reflection on the minus boson,
    conjugated into the pair-of-partitions basis; entries RatFunc in
    u = a_1 - a_2."""
    key = (n, params.t1, params.t2, method)
    hit = _full_cache.get(key)
    if hit is not None:
        return hit
    if params.r != 2:
        raise ValueError("the tensor-square R-matrix needs rank-2 Params")
    spec = geometric_spec(params)
    basis = multipartition_basis(n, 2)
    size = len(basis)
    reflections = {
        m: reflection_block(m, spec, method=method) for m in range(n + 1)
    }
    # Block diagonal in the (sigma, rho) monomial basis: delta_{sigma sigma'}
    # times the reflection block on rho.
    pm_mat = [[RF_ZERO] * size for _ in range(size)]
    for col, (sigma, rho) in enumerate(basis):
        m = sum(rho)
        block = reflections[m]
        rho_parts = partitions_of(m)
        col_in_block = rho_parts.index(rho)
        for row_in_block, rho_out in enumerate(rho_parts):
            c = block.matrix[row_in_block][col_in_block]
            if c:
                row = multipartition_index(2, (sigma, rho_out))
                pm_mat[row][col] = c
    change = pm_change_of_basis_rf(n, params)
    inv_change = mat_inverse(change)
    full = mat_mul(mat_mul(change, pm_mat), inv_change)
    out = RMatrixBlock(n, _freeze(full), "full_tensor")
    _full_cache[key] = out
    return out


def pm_change_of_basis_rf(n: int, params: Params):
    """pm_change_of_basis('from_pm') lifted to RatFunc entries."""
    from .fock import pm_change_of_basis

    raw = pm_change_of_basis(n, "from_pm", params)
    return [[as_ratfunc(c) for c in row] for row in raw]


def swap_matrix(n: int):
    """The (12) factor swap on the degree-n pair basis, over RatFunc."""
    basis = multipartition_basis(n, 2)
    size = len(basis)
    mat = [[RF_ZERO] * size for _ in range(size)]
    for col, (la, mu) in enumerate(basis):
        mat[multipartition_index(2, (mu, la))][col] = RF_ONE
    return mat


def r_check_block(n: int, params: Params) -> RMatrixBlock:
    """The swap-composed matrix (12) R, exposed separately and never silently
    substituted for R."""
    block = full_r_block(n, params)
    return RMatrixBlock(
        n, _freeze(mat_mul(swap_matrix(n), block.rows())), "full_tensor"
    )


def negate_u(f: RatFunc) -> RatFunc:
    """f(-u) as a reduced rational function."""
    num = tuple(c if i % 2 == 0 else -c for i, c in enumerate(f.num))
    den = tuple(c if i % 2 == 0 else -c for i, c in enumerate(f.den))
    return RatFunc(num, den if den else POLY_ONE)


def negate_u_matrix(mat):
    return [[negate_u(as_ratfunc(c)) for c in row] for row in mat]


# ---------------------------------------------------------------------------
# Gauss factorization in the first-factor-degree grading.


def gauss_factorize(block: RMatrixBlock):
    """(U, S) with U R = S, U block-lower-triangular with identity diagonal
    blocks and S block-upper-triangular, blocks graded by first-factor degree
    (ascending). Returned in the same basis order as the block itself."""
    if block.side != "full_tensor":
        raise ValueError("gauss factorization applies to full tensor blocks")
    n = block.degree
    basis = multipartition_basis(n, 2)
    size = len(basis)
    weight = [sum(mp[0]) for mp in basis]
    groups = {}
    for idx, w in enumerate(weight):
        groups.setdefault(w, []).append(idx)
    levels = sorted(groups)
    r = block.rows()
    u = [[RF_ONE if i == j else RF_ZERO for j in range(size)] for i in range(size)]
    for lvl in levels:
        cols = groups[lvl]
        diag = [[r[i][j] for j in cols] for i in cols]
        try:
            diag_inv = mat_inverse(diag)
        except ValueError:
            raise ValueError(
                "identically singular diagonal block at first-factor degree %d"
                % lvl
            )
        for other in levels:
            if other <= lvl:
                continue
            rows = groups[other]
            mult = mat_mul(
                [[r[i][j] for j in cols] for i in rows], diag_inv
            )
            for bi, i in enumerate(rows):
                for j in range(size):
                    acc_r = r[i][j]
                    acc_u = u[i][j]
                    for bk, k in enumerate(cols):
                        m = mult[bi][bk]
                        if m:
                            acc_r = acc_r - m * r[k][j]
                            acc_u = acc_u - m * u[k][j]
                    r[i][j] = acc_r
                    u[i][j] = acc_u
    return _freeze(u), _freeze(r)


# ---------------------------------------------------------------------------
# Asymptotic expansion operators.


def log_r_term(k: int, params: Params) -> GradedOperator:
    """The u^{-k} coefficient of log R as a normally ordered minus-field
    charge, k <= 3; each term annihilates the vacuum."""
    hbar = params.hbar
    e = params.e
    if k == 1:
        return phi_n(2, MINUS_FIELD, params, rank=2).scale(hbar)
    if k == 2:
        return integral_charge(
            ((MINUS_FIELD, 0),) * 3, Insertion(hbar), params, 2
        ).scale(mpq(1, 6))
    if k == 3:
        quartic = integral_charge(
            ((MINUS_FIELD, 0),) * 4, Insertion(hbar), params, 2
        ).scale(mpq(1, 12))
        quadratic = integral_charge(
            ((MINUS_FIELD, 0),) * 2, Insertion(hbar * e), params, 2
        ).scale(mpq(-1, 12))
        derivative = integral_charge(
            ((MINUS_FIELD, 1),) * 2,
            Insertion(2 * hbar ** 3 + hbar * e),
            params,
            2,
        ).scale(mpq(-1, 12))
        return quartic + quadratic + derivative
    raise ValueError("log R terms are provided for k in {1, 2, 3}")


def vacuum_row_block(n: int, params: Params):
    """The vac (x) F -> vac (x) F corner of the degree-n block, rows and
    columns ordered by the second-factor partition."""
    block = full_r_block(n, params)
    basis = multipartition_basis(n, 2)
    keep = [i for i, mp in enumerate(basis) if not mp[0]]
    return [[block.matrix[i][j] for j in keep] for i in keep]


# ---------------------------------------------------------------------------
# Determinants and their linear factors.


def det_ratfunc(mat) -> RatFunc:
    """Determinant of a RatFunc matrix by fraction-free elimination."""
    from .linalg import det_bareiss

    n = len(mat)
    if n == 0:
        return RF_ONE
    return as_ratfunc(det_bareiss([[as_ratfunc(c) for c in row] for row in mat]))


def factor_on_lattice(poly, t1, t2, box: int = 14):
    """Write a u-polynomial as lead * prod (u - c) with every root c of the
    form i*t1 + j*t2, |i|, |j| <= box; raises if any root lies elsewhere.
    Returns (lead, sorted root values with multiplicity)."""
    work = poly_trim(poly)
    if not work:
        raise ValueError("zero polynomial has no factorization")
    lead = work[-1]
    roots = []
    candidates = sorted(
        {i * t1 + j * t2 for i in range(-box, box + 1) for j in range(-box, box + 1)}
    )
    for c in candidates:
        while len(work) > 1 and poly_eval(work, c) == 0:
            work, rem = poly_divmod(work, (-c, mpq(1)))
            if rem:
                raise RuntimeError("linear factor division failed")
            roots.append(c)
    if len(work) > 1:
        raise ValueError("determinant has a root off the t-lattice")
    return lead, sorted(roots)


def det_factor_profile(block: RMatrixBlock, params: Params):
    """(numerator roots, denominator roots, leading scalar) of det(block),
    all roots on the t-lattice."""
    det = det_ratfunc(block.rows())
    lead_n, num_roots = factor_on_lattice(det.num, params.t1, params.t2)
    lead_d, den_roots = factor_on_lattice(det.den, params.t1, params.t2)
    return num_roots, den_roots, lead_n / lead_d


# ---------------------------------------------------------------------------
# Acting with R on chosen factors of a higher tensor power.


def r_factor_matrix(i: int, j: int, degree: int, rank: int, params: Params,
                    value):
    """Matrix of R acting on factors (i, j) of the degree block of F^{rank},
    evaluated at u = value; 0-indexed factors, i < j."""
    if not (0 <= i < j < rank):
        raise ValueError("factor indices must satisfy 0 <= i < j < rank")
    basis = multipartition_basis(degree, rank)
    index = {mp: k for k, mp in enumerate(basis)}
    size = len(basis)
    mat = [[mpq(0)] * size for _ in range(size)]
    for col, mp in enumerate(basis):
        li, lj = mp[i], mp[j]
        m = sum(li) + sum(lj)
        block = full_r_block(m, params)
        bcol = multipartition_index(2, (li, lj))
        for brow, (mi, mj) in enumerate(multipartition_basis(m, 2)):
            c = block.matrix[brow][bcol]
            if c:
                out = list(mp)
                out[i] = mi
                out[j] = mj
                mat[index[tuple(out)]][col] += c.eval(value)
    return mat
