"""Exact arithmetic foundation: big rationals, univariate rational functions
in the spectral variable u, and seeded generic parameter sampling."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from gmpy2 import mpq, mpz

# Single knob controlling genericity requirements and degree truncations.
DEGREE_CAP = 8

Scalar = type(mpq())


def S(x, y=None):
    """Build a Scalar from ints, strings like '3/7', or another Scalar."""
    if y is not None:
        return mpq(x, y)
    return mpq(x)


ZERO = S(0)
ONE = S(1)


def scalar_str(x) -> str:
    """Serialize as 'num/den' ('num' when the denominator is 1)."""
    q = mpq(x)
    if q.denominator == 1:
        return str(q.numerator)
    return "%s/%s" % (q.numerator, q.denominator)


# ---------------------------------------------------------------------------
# Dense univariate polynomials over Scalar, low degree first.
# Zero polynomial is the empty tuple; otherwise the last coefficient is nonzero.


def poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_const(x):
    x = mpq(x)
    return (x,) if x != 0 else ()


POLY_ZERO = ()
POLY_ONE = (ONE,)
POLY_U = (ZERO, ONE)


def poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return poly_trim(out)


def poly_neg(a):
    return tuple(-x for x in a)

def poly_sub(a, b):
    return poly_add(a, poly_neg(b))


def poly_scale(a, x):
    x = mpq(x)
    if x == 0:
        return POLY_ZERO
    return tuple(c * x for c in a)


def poly_mul(a, b):
    if not a or not b:
        return POLY_ZERO
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_eval(a, x):
    acc = ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [ZERO] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        if c != 0:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return poly_trim(q), poly_trim(a)


def poly_monic(a):
    if not a:
        return a
    return poly_scale(a, 1 / a[-1])


def _poly_to_mpz(a):
    """Clear denominators; return (integer coefficient list, nothing reusable)."""
    den = mpz(1)
    for c in a:
        den = den * c.denominator // gcd_mpz(den, c.denominator)
    return [mpz(c * den) for c in a]


def gcd_mpz(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _content(z):
    g = mpz(0)
    for c in z:
        g = gcd_mpz(g, c)
        if g == 1:
            break
    return g if g else mpz(1)


def _primitive(z):
    g = _content(z)
    return [c // g for c in z]


def _pseudo_rem(f, g):
    """Pseudo-remainder of integer coefficient lists (low first); result is an
    integer associate of rem(f, g), which is all gcd needs."""
    f = list(f)
    lc = g[-1]
    dg = len(g)
    while f and len(f) >= dg:
        c = f[-1]
        f = [lc * x for x in f]
        off = len(f) - dg
        for j in range(dg):
            f[off + j] -= c * g[j]
        while f and f[-1] == 0:
            f.pop()
    return f


def poly_gcd(a, b):
    """Monic gcd via the primitive polynomial remainder sequence over integers
    (clears denominators once; avoids rational coefficient blowup)."""
    if not a:
        return poly_monic(b)
    if not b:
        return poly_monic(a)
    f = _primitive(_poly_to_mpz(a))
    g = _primitive(_poly_to_mpz(b))
    if len(f) < len(g):
        f, g = g, f
    while True:
        rem = _pseudo_rem(f, g)
        if not rem:
            return poly_monic(tuple(mpq(c) for c in g))
        if len(rem) == 1:
            return POLY_ONE
        f, g = g, _primitive(rem)


def poly_str(a, var="u"):
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        if i == 0:
            parts.append(scalar_str(c))
        elif i == 1:
            parts.append("%s*%s" % (scalar_str(c), var))
        else:
            parts.append("%s*%s^%d" % (scalar_str(c), var, i))
    return " + ".join(parts)


class RatFunc:
    """Reduced univariate rational function in u: num/den with monic den,
    gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=POLY_ONE, reduce=True):
        num = poly_trim(num)
        den = poly_trim(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce and num:
            g = poly_gcd(num, den)
            if len(g) > 1:
                num, _ = poly_divmod(num, g)
                den, _ = poly_divmod(den, g)
        if not num:
            den = POLY_ONE
        else:
            lc = den[-1]
            if lc != 1:
                num = poly_scale(num, 1 / lc)
                den = poly_scale(den, 1 / lc)
        self.num = num
        self.den = den

    @staticmethod
    def const(x):
        return RatFunc(poly_const(x), POLY_ONE, reduce=False)

    @staticmethod
    def var():
        return RatFunc(POLY_U, POLY_ONE, reduce=False)

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return len(self.num) <= 1 and self.den == POLY_ONE

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant: %s" % self)
        return self.num[0] if self.num else ZERO

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Scalar)):
                other = RatFunc.const(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = as_ratfunc(other)
        num = poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den))
        return RatFunc(num, poly_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(poly_neg(self.num), self.den, reduce=False)

    def __sub__(self, other):
        return self + (-as_ratfunc(other))

    def __rsub__(self, other):
        return as_ratfunc(other) + (-self)

    def __mul__(self, other):
        other = as_ratfunc(other)
        return RatFunc(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverting zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * as_ratfunc(other).inverse()

    def __rtruediv__(self, other):
        return as_ratfunc(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            if isinstance(k, int):
                return self.inverse() ** (-k)
            raise TypeError("integer exponents only")
        out = RF_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def eval(self, x):
        d = poly_eval(self.den, x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole: u = %s" % x)
        return poly_eval(self.num, x) / d

    def series_at_infinity(self, order):
        """Coefficients [c_0, ..., c_order] with f = sum c_j u^{-j} + O(u^{-order-1}).

        Requires deg num <= deg den (no polynomial part beyond a constant)."""
        if not self.num:
            return [ZERO] * (order + 1)
        if len(self.num) > len(self.den):
            raise ValueError("series at infinity of an improper rational function")
        # Reverse coordinates: f(1/v) = vnum(v)/vden(v) with vden(0) != 0.
        shift = len(self.den) - len(self.num)
        vnum = [ZERO] * shift + list(reversed(self.num))
        vden = list(reversed(self.den))
        inv0 = 1 / vden[0]
        out = []
        rem = vnum + [ZERO] * (order + 1)
        for k in range(order + 1):
            c = rem[k] * inv0
            out.append(c)
            if c != 0:
                for j, y in enumerate(vden):
                    rem[k + j] -= c * y
        return out

    def __repr__(self):
        if self.den == POLY_ONE:
            return "(%s)" % poly_str(self.num)
        return "(%s)/(%s)" % (poly_str(self.num), poly_str(self.den))

    def to_json(self):
        return {
            "num": [scalar_str(c) for c in self.num],
            "den": [scalar_str(c) for c in self.den],
        }


def as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    return RatFunc.const(x)


RF_ZERO = RatFunc.const(0)
RF_ONE = RatFunc.const(1)


# ---------------------------------------------------------------------------
# Equivariant parameter pack.


@dataclass(frozen=True)
class Params:
    """Equivariant weights t1, t2, framing weights a_1..a_r, Kahler parameter q.

    check_separation=False admits the resonant framing weights that the
    screening construction requires (a_1 - a_2 on the t-lattice); every other
    consumer should leave it on.
    """

    t1: Scalar
    t2: Scalar
    a: tuple
    q: Scalar
    seed: int = 0
    check_separation: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "t1", mpq(self.t1))
        object.__setattr__(self, "t2", mpq(self.t2))
        object.__setattr__(self, "a", tuple(mpq(x) for x in self.a))
        object.__setattr__(self, "q", mpq(self.q))
        if self.t1 * self.t2 == 0:
            raise ValueError("t1*t2 must be nonzero")
        if self.t1 + self.t2 == 0:
            raise ValueError("t1+t2 must be nonzero")
        for n in range(1, DEGREE_CAP + 1):
            if self.q ** n == 1:
                raise ValueError("q is a root of unity of order <= %d" % DEGREE_CAP)
        if self.check_separation and not self.a_separated():
            raise ValueError(
                "framing weights collide with the t-lattice: "
                "a_i - a_j = m*t1 + n*t2 with |m|,|n| <= %d" % DEGREE_CAP
            )

    def a_separated(self) -> bool:
        r = len(self.a)
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                d = self.a[i] - self.a[j]
                for m in range(-DEGREE_CAP, DEGREE_CAP + 1):
                    for n in range(-DEGREE_CAP, DEGREE_CAP + 1):
                        if d == m * self.t1 + n * self.t2:
                            return False
        return True

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def hbar(self) -> Scalar:
        return -self.t1 - self.t2

    @property
    def e(self) -> Scalar:
        return -self.t1 * self.t2

    def tau1(self) -> Scalar:
        return -1 / (self.t1 * self.t2)

    def to_json(self):
        return {
            "t1": scalar_str(self.t1),
            "t2": scalar_str(self.t2),
            "a": [scalar_str(x) for x in self.a],
            "q": scalar_str(self.q),
            "seed": self.seed,
        }


def _t_generic(t1, t2) -> bool:
    """m*t1 + n*t2 != 0 for 0 < max(|m|,|n|) <= DEGREE_CAP.

    Stronger than the Params invariants; keeps sampled weights off every
    resonance the suites' denominators can produce."""
    for m in range(-DEGREE_CAP, DEGREE_CAP + 1):
        for n in range(-DEGREE_CAP, DEGREE_CAP + 1):
            if (m, n) != (0, 0) and m * t1 + n * t2 == 0:
                return False
    return True


def sample_params(seed: int, r: int) -> Params:
    """Deterministic generic parameters: numerators in [-97, 97], denominators
    in [1, 13], resampling any component violating an invariant."""
    if r < 1:
        raise ValueError("rank must be positive")
    rng = random.Random(seed)

    def draw():
        return mpq(rng.randint(-97, 97), rng.randint(1, 13))

    for _ in range(10000):
        t1 = draw()
        t2 = draw()
        if t1 == 0 or t2 == 0 or t1 + t2 == 0 or not _t_generic(t1, t2):
            continue
        break
    else:
        raise RuntimeError("sample_params: no generic t1, t2 after 10000 attempts")

    a = []
    attempts = 0
    while len(a) < r:
        attempts += 1
        if attempts > 10000:
            raise RuntimeError("sample_params: no separated framing weights "
                               "after 10000 attempts")
        x = draw()
        ok = True
        for y in a:
            d = x - y
            for m in range(-DEGREE_CAP, DEGREE_CAP + 1):
                for n in range(-DEGREE_CAP, DEGREE_CAP + 1):
                    if d == m * t1 + n * t2:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            a.append(x)

    for _ in range(10000):
        q = draw()
        if q != 1 and q != -1 and q != 0:
            break
    else:
        raise RuntimeError("sample_params: no generic q after 10000 attempts")

    return Params(t1=t1, t2=t2, a=tuple(a), q=q, seed=seed)
