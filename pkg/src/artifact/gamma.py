"""Exact Stirling-type asymptotics for the double-gamma prefactor.

Everything here is Laurent-coefficient arithmetic over exact rationals:
Chern-character coefficients of the regularizing kernel
e^{az} / ((1-e^{-t1 z})(1-e^{-t2 z})), and the expansion of the logarithm of
the double-gamma ratio that rescales the R-matrix.  No transcendental
function is ever evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .scalar import Params, S, Scalar, scalar_str


# ---------------------------------------------------------------------------
# Truncated Taylor series over exact rationals (coefficient tuples, z^0 first)


def _series_mul(a, b, length):
    out = [S(0)] * length
    for i, x in enumerate(a[:length]):
        if x == 0:
            continue
        for j, y in enumerate(b[: length - i]):
            if y != 0:
                out[i + j] += x * y
    return tuple(out)


def _series_div(num, den, length):
    """num/den to `length` coefficients; den[0] must be nonzero."""
    if not den or den[0] == 0:
        raise ZeroDivisionError("series division by a series with zero constant term")
    inv0 = 1 / den[0]
    out = []
    for k in range(length):
        acc = num[k] if k < len(num) else S(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc * inv0)
    return tuple(out)


def _exp_series(c, length):
    """e^{cz} to `length` coefficients."""
    out = [S(1)]
    for k in range(1, length):
        out.append(out[-1] * c / k)
    return tuple(out)


def _one_minus_exp_neg(t, length):
    """1 - e^{-tz} to `length` coefficients (valuation 1)."""
    e = _exp_series(-t, length)
    return tuple(S(0) - x if k else S(1) - x for k, x in enumerate(e))


# ---------------------------------------------------------------------------
# Bernoulli numbers, B_1 = +1/2 convention (generating function w/(1-e^{-w}))


def bernoulli_plus(n_max: int):
    """B_0..B_{n_max} from the recursive definition, B_1 = +1/2 convention."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    b = [S(1)]
    for m in range(1, n_max + 1):
        # sum_{k=0}^{m} C(m+1, k) (-1)^k B_k = 0  (signs undo the B_1 = +1/2
        # convention and reduce to the classical recursion).
        acc = S(0)
        for k in range(m):
            acc += comb(m + 1, k) * ((-1) ** k) * b[k]
        sign = (-1) ** m
        b.append(-acc / (sign * comb(m + 1, m)))
    return tuple(b)


def bernoulli_from_series(n_max: int):
    """B_0..B_{n_max} read off from the series w/(1-e^{-w})."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    length = n_max + 1
    # (1 - e^{-w})/w has constant term 1.
    den = tuple(_one_minus_exp_neg(S(1), length + 1)[1:])
    series = _series_div((S(1),), den, length)
    return tuple(series[k] * factorial(k) for k in range(length))


def _b_factor(t, length):
    """b(tz) = tz/(1-e^{-tz}) to `length` coefficients."""
    bern = bernoulli_from_series(length - 1)
    power = S(1)
    out = []
    for k in range(length):
        out.append(bern[k] * power / factorial(k))
        power = power * t
    return tuple(out)


# ---------------------------------------------------------------------------
# Laurent series container


@dataclass(frozen=True)
class LaurentSeries:
    """Exact coefficients c_k for low <= k <= order, with low >= -2.

    Coefficients below `low` (but >= -2) are zero; queries beyond `order`
    are refused because the series is truncated there.
    """

    low: int
    order: int
    values: tuple

    def __post_init__(self):
        if self.low < -2:
            raise ValueError("Laurent coefficients start at -2 or above")
        if self.order < self.low:
            raise ValueError("order must be >= low")
        values = tuple(S(v) for v in self.values)
        if len(values) != self.order - self.low + 1:
            raise ValueError("need exactly order - low + 1 coefficients")
        object.__setattr__(self, "values", values)

    def coefficient(self, k: int) -> Scalar:
        if k > self.order:
            raise ValueError("coefficient %d beyond truncation order %d" % (k, self.order))
        if k < self.low:
            return S(0)
        return self.values[k - self.low]

    def items(self):
        return tuple((self.low + i, v) for i, v in enumerate(self.values))

    def to_json(self):
        return {
            "low": self.low,
            "order": self.order,
            "coefficients": {str(k): scalar_str(v) for k, v in self.items()},
        }


# ---------------------------------------------------------------------------
# Chern-character coefficients of the regularizing kernel


_METHODS = ("division", "bernoulli")


def ch_coefficients(a, k_max: int, params: Params, method: str = "division") -> LaurentSeries:
    """Laurent coefficients ch_k, -2 <= k <= k_max, of
    e^{az} / ((1-e^{-t1 z})(1-e^{-t2 z})).

    method="division" divides Taylor series directly; method="bernoulli"
    multiplies Bernoulli-number expansions of z/(1-e^{-z}).  Both are exact
    and agree; k_max <= 6.
    """
    if not isinstance(k_max, int) or not -2 <= k_max <= 6:
        raise ValueError("k_max must be an integer with -2 <= k_max <= 6")
    if method not in _METHODS:
        raise ValueError("method must be one of %s" % (_METHODS,))
    a = S(a)
    t1, t2 = params.t1, params.t2
    length = k_max + 3
    num = _exp_series(a, length)
    if method == "division":
        # (1-e^{-t1 z})(1-e^{-t2 z}) = t1 t2 z^2 * (unit series)
        d1 = _one_minus_exp_neg(t1, length + 2)[1:]
        d2 = _one_minus_exp_neg(t2, length + 2)[1:]
        den = _series_mul(d1, d2, length)
        quot = _series_div(num, den, length)
    else:
        unit = _series_mul(_b_factor(t1, length), _b_factor(t2, length), length)
        quot = _series_mul(num, unit, length)
        quot = tuple(c / (t1 * t2) for c in quot)
    return LaurentSeries(-2, k_max, quot)


# ---------------------------------------------------------------------------
# The double-gamma ratio expansion


def gamma_ratio_expansion(a, order: int, params: Params, method: str = "division") -> LaurentSeries:
    """Coefficients of (1/hbar) * log of the double-gamma ratio at shift a,
    in the basis {ln^(-1) u, ln u, u^-1, u^-2, ...}.

    The raw kernel is
        e^{az} (1 - e^{-(t1+t2) z}) / (hbar (1-e^{-t1 z})(1-e^{-t2 z})),
    a Laurent series f_{-1} z^{-1} + f_0 + f_1 z + ...; the returned
    coefficient at index k is (-1)^(k+1) * (k-1)! * f_k for k >= 1 and
    (-1)^(k+1) * f_k for k in {-1, 0}.  Index -1 multiplies ln^(-1) u,
    index 0 multiplies ln u, index j >= 1 multiplies u^(-j).  order <= 4.
    """
    if not isinstance(order, int) or not -1 <= order <= 4:
        raise ValueError("order must be an integer with -1 <= order <= 4")
    if method not in _METHODS:
        raise ValueError("method must be one of %s" % (_METHODS,))
    a = S(a)
    t1, t2 = params.t1, params.t2
    ebar = t1 + t2
    length = order + 2  # f_{-1} .. f_order
    num = _series_mul(
        _exp_series(a, length + 1),
        _one_minus_exp_neg(ebar, length + 1),
        length + 1,
    )[1:]  # divide the valuation-1 numerator by z
    if method == "division":
        d1 = _one_minus_exp_neg(t1, length + 2)[1:]
        d2 = _one_minus_exp_neg(t2, length + 2)[1:]
        den = _series_mul(d1, d2, length)
        f = _series_div(num, den, length)
        f = tuple(c / params.hbar for c in f)
    else:
        unit = _series_mul(_b_factor(t1, length), _b_factor(t2, length), length)
        f = _series_mul(num, unit, length)
        f = tuple(c / (t1 * t2 * params.hbar) for c in f)
    out = []
    for i, fk in enumerate(f):
        k = i - 1
        sign = S(1) if (k + 1) % 2 == 0 else S(-1)
        fac = factorial(k - 1) if k >= 1 else 1
        out.append(sign * fac * fk)
    return LaurentSeries(-1, order, out)


def rhat_prefactor_series(a, order: int, params: Params) -> LaurentSeries:
    """Expansion of the scalar prefactor relating the R-matrix to its
    double-gamma-regularized form; the matrix itself is never materialized."""
    return gamma_ratio_expansion(a, order, params)
