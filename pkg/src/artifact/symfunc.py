"""Symmetric functions in the p-, m-, s-bases; Jack polynomials by
Gram-Schmidt against the parameterized power-sum inner product; the
Fock-space dictionary.

Coefficients may be Scalars or RatFuncs; the Jack machinery takes (t1, t2)
explicitly so degenerate specializations like t2 = -t1 stay constructible.
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

from .fock import FockVector
from .partitions import (
    add_part,
    boxes,
    conjugate,
    dominates,
    hook_data,
    multiplicity,
    partitions_of,
    size,
    zee,
)


class SymFunc:
    """Sparse symmetric function: basis tag 'p', 'm', or 's' plus a
    Partition -> coefficient map. Degree-inhomogeneous combinations allowed."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis, coeffs=None):
        if basis not in ("p", "m", "s"):
            raise ValueError("basis must be one of 'p', 'm', 's'")
        self.basis = basis
        self.coeffs = {}
        if coeffs:
            for key, val in coeffs.items():
                if val:
                    self.coeffs[tuple(key)] = val

    def coeff(self, la):
        return self.coeffs.get(tuple(la), mpq(0))

    def is_zero(self):
        return not self.coeffs

    def degrees(self):
        return sorted({size(la) for la in self.coeffs})

    def homogeneous_part(self, n):
        return SymFunc(self.basis,
                       {la: c for la, c in self.coeffs.items() if size(la) == n})

    def __add__(self, other):
        if self.basis != other.basis:
            raise ValueError("mixed bases; convert first")
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            acc = out.get(key)
            tot = val if acc is None else acc + val
            if tot:
                out[key] = tot
            elif acc is not None:
                del out[key]
        return SymFunc(self.basis, out)

    def __neg__(self):
        return SymFunc(self.basis, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return SymFunc(self.basis)
        return SymFunc(self.basis, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, SymFunc) and self.basis == other.basis
                and self.coeffs == other.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "SymFunc(%s, 0)" % self.basis
        bits = ["%s%s: %s" % (self.basis, list(k), v)
                for k, v in sorted(self.coeffs.items())]
        return "SymFunc{%s}" % ", ".join(bits)


# ---------------------------------------------------------------------------
# p <-> m transitions.


@lru_cache(maxsize=None)
def _p_times_m_moves(la, r):
    """Expansion moves for p_r * m_la: list of (mu, integer coefficient)."""
    la = tuple(la)
    out = {}
    mu = add_part(la, r)
    out[mu] = out.get(mu, 0) + multiplicity(mu, r)
    for v in sorted(set(la)):
        base = list(la)
        base.remove(v)
        mu2 = add_part(tuple(base), v + r)
        out[mu2] = out.get(mu2, 0) + multiplicity(mu2, v + r)
    return tuple(out.items())


@lru_cache(maxsize=None)
def p_in_m(mu):
    """m-basis coefficients of p_mu as a tuple of (partition, int)."""
    coeffs = {(): mpq(1)}
    for part in mu:
        nxt = {}
        for la, c in coeffs.items():
            for target, mult in _p_times_m_moves(la, part):
                nxt[target] = nxt.get(target, mpq(0)) + c * mult
        coeffs = nxt
    return tuple(sorted(coeffs.items()))


@lru_cache(maxsize=None)
def _m_to_p_matrix(n):
    """Columns: m_la (canonical order) expressed in the p basis."""
    from .linalg import mat_inverse

    basis = partitions_of(n)
    index = {la: i for i, la in enumerate(basis)}
    # rows/cols: p_mu in m basis
    p2m = [[mpq(0)] * len(basis) for _ in range(len(basis))]
    for j, mu in enumerate(basis):
        for la, c in p_in_m(mu):
            p2m[index[la]][j] = c
    return mat_inverse(p2m)


def convert(f: SymFunc, target: str) -> SymFunc:
    """Exact basis conversion."""
    if f.basis == target:
        return f
    if f.basis == "p" and target == "m":
        out = {}
        for mu, c in f.coeffs.items():
            for la, k in p_in_m(mu):
                out[la] = out.get(la, mpq(0)) + c * k
        return SymFunc("m", out)
    if f.basis == "m" and target == "p":
        out = {}
        for n in f.degrees():
            basis = partitions_of(n)
            mat = _m_to_p_matrix(n)
            vec = [f.coeff(la) for la in basis]
            for i, mu in enumerate(basis):
                acc = None
                for j in range(len(basis)):
                    if vec[j]:
                        term = mat[i][j] * vec[j]
                        acc = term if acc is None else acc + term
                if acc:
                    out[mu] = acc
        return SymFunc("p", out)
    if f.basis == "s" and target == "m":
        out = {}
        for la, c in f.coeffs.items():
            for mu in partitions_of(size(la)):
                k = kostka(la, mu)
                if k:
                    out[mu] = out.get(mu, mpq(0)) + c * k
        return SymFunc("m", out)
    if f.basis == "m" and target == "s":
        out = {}
        for n in f.degrees():
            basis = partitions_of(n)
            from .linalg import mat_inverse
            k = [[mpq(kostka(la, mu)) for la in basis] for mu in basis]
            kinv = mat_inverse(k)
            vec = [f.coeff(mu) for mu in basis]
            for i, la in enumerate(basis):
                acc = None
                for j in range(len(basis)):
                    if vec[j]:
                        term = kinv[i][j] * vec[j]
                        acc = term if acc is None else acc + term
                if acc:
                    out[la] = acc
        return SymFunc("s", out)
    # remaining pairs go through m
    return convert(convert(f, "m"), target)


# ---------------------------------------------------------------------------
# Kostka numbers by semistandard tableau enumeration.


@lru_cache(maxsize=None)
def kostka(la, mu) -> int:
    """Number of SSYT of shape la and content mu, by horizontal-strip chains."""
    la, mu = tuple(la), tuple(mu)
    if size(la) != size(mu):
        return 0

    def horizontal_strips(outer, grow):
        """All theta with outer <= theta <= la, |theta| - |outer| = grow, and
        theta/outer a horizontal strip (theta_i <= outer_{i-1})."""
        rows = len(la)
        results = []

        def rec(i, left, acc):
            if i == rows:
                if left == 0:
                    results.append(tuple(p for p in acc if p))
                return
            lo = outer[i] if i < len(outer) else 0
            if i == 0:
                hi = la[0]
            else:
                above = outer[i - 1] if i - 1 < len(outer) else 0
                hi = min(la[i], above)
            for val in range(lo, hi + 1):
                if val - lo > left:
                    break
                acc.append(val)
                rec(i + 1, left - (val - lo), acc)
                acc.pop()

        rec(0, grow, [])
        return results

    def count(theta, v):
        if v == len(mu):
            return 1 if theta == la else 0
        total = 0
        for nxt in horizontal_strips(theta, mu[v]):
            total += count(nxt, v + 1)
        return total

    return count((), 0)


def schur_polynomial(la) -> SymFunc:
    """Schur function s_la in the m basis via Kostka numbers."""
    la = tuple(la)
    out = {}
    for mu in partitions_of(size(la)):
        k = kostka(la, mu)
        if k:
            out[mu] = mpq(k)
    return SymFunc("m", out)


# ---------------------------------------------------------------------------
# The parameterized inner product and Jack polynomials.


def jack_inner_product(f: SymFunc, g: SymFunc, alpha):
    """<p_la, p_mu> = delta z_la alpha^{l(la)}, extended bilinearly."""
    fp = convert(f, "p")
    gp = convert(g, "p")
    fdeg, gdeg = fp.degrees(), gp.degrees()
    if len(fdeg) > 1 or len(gdeg) > 1:
        raise ValueError("inner product needs homogeneous arguments")
    if fdeg and gdeg and fdeg != gdeg:
        raise ValueError("inner product needs equal degrees")
    acc = None
    for la, c in fp.coeffs.items():
        d = gp.coeffs.get(la)
        if d:
            term = c * d * zee(la) * (alpha ** len(la))
            acc = term if acc is None else acc + term
    if acc is None:
        return mpq(0)
    return acc


def jack_leading_coefficient(la, t1, t2):
    """prod over boxes of (t2 (leg+1) - t1 arm)."""
    acc = None
    for b in boxes(la):
        arm, leg, _ = hook_data(la, b)
        term = t2 * (leg + 1) - t1 * arm
        acc = term if acc is None else acc * term
    return acc if acc is not None else mpq(1)


_jack_monic = {}


def _jack_monic_all(n, t1, t2):
    """Monic (m_la-leading) Jack polynomials for all |la| = n, keyed by
    (n, t1, t2); Gram-Schmidt over the reverse-lex list processed bottom-up."""
    cache_key = (n, t1, t2)
    hit = _jack_monic.get(cache_key)
    if hit is not None:
        return hit
    alpha = (-t1) / t2
    basis = list(partitions_of(n))
    done = {}
    for la in reversed(basis):  # (1^n) first: dominance-smallest end
        current = SymFunc("m", {la: mpq(1)})
        for mu in reversed(basis):
            if mu == la:
                break
            jmu = done[mu]
            num = jack_inner_product(current, jmu, alpha)
            if num:
                den = jack_inner_product(jmu, jmu, alpha)
                current = current - jmu.scale(num / den)
        done[la] = current
    _jack_monic[cache_key] = done
    return done


def jack_polynomial(la, t1, t2) -> SymFunc:
    """Jack polynomial for the pairing alpha = -t1/t2, normalized so the
    m_la coefficient is prod(t2(leg+1) - t1 arm)."""
    la = tuple(la)
    monic = _jack_monic_all(size(la), t1, t2)[la]
    return monic.scale(jack_leading_coefficient(la, t1, t2))


# ---------------------------------------------------------------------------
# Fock dictionary (rank 1): t1 * alpha_{-k}(1) corresponds to p_k.


def fock_dictionary(arg, direction, t1):
    """to_symfunc: FockVector (rank 1) -> SymFunc in p basis, with the p_mu
    coefficient equal to the internal coefficient divided by t1^{l(mu)}.
    from_symfunc: inverse."""
    if direction == "to_symfunc":
        v = arg
        if v.rank != 1:
            raise ValueError("dictionary defined for rank 1")
        out = {}
        for key, c in v.terms.items():
            mu = key[0]
            out[mu] = c / (t1 ** len(mu))
        return SymFunc("p", out)
    if direction == "from_symfunc":
        f = convert(arg, "p")
        terms = {}
        for mu, c in f.coeffs.items():
            terms[(mu,)] = c * (t1 ** len(mu))
        return FockVector(1, terms)
    raise ValueError("direction must be 'to_symfunc' or 'from_symfunc'")


def lehn_eigenvalue(la, a, t1, t2):
    """Sum over boxes of (a - (j-1) t1 - (i-1) t2): the tautological weight
    attached to the fixed point la."""
    acc = a * 0
    for (i, j) in boxes(la):
        acc = acc + a - (j - 1) * t1 - (i - 1) * t2
    return acc
