"""Feigin-Fuchs Virasoro modes over a parameterized single boson, concrete
boson representations (polynomial Fock module, geometric minus boson on two
factors), and screening-operator modes.

Conventions: the boson has [a_k, a_l] = k * tau1 * delta_{k+l,0}, the zero
mode acts by -eta * tau1, and

  L_n(gamma, kappa) = (g / (2 tau1)) sum_{i+j=n} :a_i a_j:
                      - n g kappa a_n - (1/2) g kappa^2 tau1 delta_{n,0}

for gamma = g * 1, so that L_0 on the vacuum acts by (1/2) g tau1
(eta^2 - kappa^2) and the bracket central term is
g1 g2 (1 - 12 kappa^2 tau1) (n^3 - n) / 12.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .fock import FockVector, GradedOperator, Insertion, apply_alpha_pm, ins_one
from .partitions import add_part, multiplicity, partitions_of, remove_part, zee
from .scalar import DEGREE_CAP, Params

_ONE = ins_one()


@dataclass(frozen=True)
class BosonSpec:
    """tau1: pairing value on the unit (nonzero); eta: lowest-weight
    parameter; kappa: background charge. eta may be a rational function."""

    tau1: object
    eta: object
    kappa: object

    def __post_init__(self):
        if not self.tau1:
            raise ValueError("tau1 must be nonzero")


class BosonRep:
    """A module for one boson: apply_mode(k, v) realizes a_k for k != 0 and
    zero_scalar is the value of a_0."""

    __slots__ = ("rank", "apply_mode", "zero_scalar")

    def __init__(self, rank, apply_mode, zero_scalar):
        self.rank = rank
        self.apply_mode = apply_mode
        self.zero_scalar = zero_scalar


def fock_boson_rep(spec: BosonSpec) -> BosonRep:
    """Polynomial module: a_{-k} multiplies by p_k, a_k acts as
    k * tau1 * d/dp_k, a_0 by -eta * tau1."""
    tau1 = spec.tau1

    def apply_mode(k, v):
        out = {}
        if k < 0:
            for key, coeff in v.terms.items():
                out[(add_part(key[0], -k),)] = coeff
        else:
            for key, coeff in v.terms.items():
                m = multiplicity(key[0], k)
                if m:
                    out[(remove_part(key[0], k),)] = coeff * (k * tau1 * m)
        return FockVector(1, out)

    return BosonRep(1, apply_mode, -spec.eta * spec.tau1)


def minus_boson_rep(params: Params, eta) -> BosonRep:
    """The geometric minus boson on two Fock factors: a_k = alpha^-_k(1),
    with tau1 = -2/(t1 t2) and a_0 = 2 eta / (t1 t2)."""

    def apply_mode(k, v):
        return apply_alpha_pm(-1, k, _ONE, v, params)

    return BosonRep(2, apply_mode, 2 * eta / (params.t1 * params.t2))


def geometric_minus_spec(params: Params, eta, kappa_sign: int = 1) -> BosonSpec:
    """BosonSpec of the minus boson: tau1 = -2/(t1 t2), kappa = +-hbar/2."""
    tau1 = mpq(-2) / (params.t1 * params.t2)
    return BosonSpec(tau1, eta, mpq(kappa_sign) * params.hbar / 2)


def virasoro_mode(n: int, gamma: Insertion, spec: BosonSpec,
                  rep: BosonRep = None) -> GradedOperator:
    """L_n(gamma, kappa) acting through rep (default: the polynomial Fock
    module of the boson); lowers degree by n."""
    if abs(n) > DEGREE_CAP:
        raise ValueError("mode index exceeds the degree cap")
    if rep is None:
        rep = fock_boson_rep(spec)
    g = gamma.value
    tau1 = spec.tau1
    kappa = spec.kappa
    quad = g / (2 * tau1)
    z0 = rep.zero_scalar
    rank = rep.rank

    def action(mp):
        v = FockVector.basis_vector(rank, mp)
        d = sum(sum(comp) for comp in mp)
        acc = FockVector(rank)
        if quad:
            for i in range(n - d, d + 1):
                j = n - i
                if (i > 0 and i > d) or (j > 0 and j > d):
                    continue
                w = v
                zeros = 0
                dead = False
                for k in sorted((i, j), reverse=True):
                    if k == 0:
                        zeros += 1
                        continue
                    w = rep.apply_mode(k, w)
                    if w.is_zero():
                        dead = True
                        break
                if dead:
                    continue
                coeff = quad if not zeros else quad * z0 ** zeros
                acc = acc + w.scale(coeff)
        if n != 0 and kappa and g:
            if not (n > 0 and n > d):
                acc = acc + rep.apply_mode(n, v).scale(-n * g * kappa)
        if n == 0 and g:
            acc = acc + v.scale(-g * kappa * kappa * tau1 / 2)
        return acc

    return GradedOperator(rank, rank, -n, action)


def virasoro_bracket_rhs(n: int, m: int, gamma1: Insertion, gamma2: Insertion,
                         spec: BosonSpec, rep: BosonRep = None) -> GradedOperator:
    """(n - m) L_{n+m}(gamma1 gamma2, kappa) plus the central term
    g1 g2 (1 - 12 kappa^2 tau1) (n^3 - n)/12 on n + m = 0."""
    if rep is None:
        rep = fock_boson_rep(spec)
    op = virasoro_mode(n + m, gamma1 * gamma2, spec, rep).scale(mpq(n - m))
    if n + m == 0:
        central = (
            gamma1.value * gamma2.value
            * (1 - 12 * spec.kappa ** 2 * spec.tau1)
            * mpq(n ** 3 - n, 12)
        )
        if central:
            rank = rep.rank
            ident = GradedOperator(
                rank, rank, 0,
                lambda mp: FockVector.basis_vector(rank, mp).scale(central),
            )
            op = op + ident
    return op


def sample_boson_spec(seed: int) -> BosonSpec:
    """Deterministic generic BosonSpec for property tests."""
    rng = random.Random(10_000 + seed)

    def draw(nonzero=False):
        while True:
            x = mpq(rng.randint(-19, 19), rng.randint(1, 7))
            if x or not nonzero:
                return x

    tau1 = draw(nonzero=True)
    return BosonSpec(tau1, draw(), draw())


# ---------------------------------------------------------------------------
# Screening operators.


def screening_mode(mu, n: int, params: Params) -> GradedOperator:
    """The z^0 Fourier mode of z^{-t2/t1} V_{1/t1}(z) (and the t1 <-> t2
    mirror for mu = 1/t2): a degree-(+n) operator on the two-factor Fock
    space acting only through minus-boson modes,

      tau(1) * [z^n] exp(c sum_{k>0} alpha^-_{-k}(1) z^k / k)
                     exp(-c sum_{k>0} alpha^-_{k}(1) z^{-k} / k),

    with c = mu * e. Requires the integrality constraint a1 - a2 = n/mu - e*mu
    written multiplicatively: a1 - a2 = n t1 - t2 for mu = 1/t1."""
    if params.r != 2:
        raise ValueError("screening modes act on two Fock factors")
    t1, t2 = params.t1, params.t2
    if mu == 1 / t1:
        c = -t2
        expected = n * t1 - t2
    elif mu == 1 / t2:
        c = -t1
        expected = n * t2 - t1
    else:
        raise ValueError("admissible screening slopes are 1/t1 and 1/t2")
    if params.a[0] - params.a[1] != expected:
        raise ValueError(
            "integrality constraint violated: a1 - a2 must equal %s" % expected
        )
    tau_one = mpq(-1) / (t1 * t2)

    def action(mp):
        v = FockVector.basis_vector(2, mp)
        d = sum(sum(comp) for comp in mp)
        acc = FockVector(2)
        for asize in range(max(0, -n), d + 1):
            bsize = asize + n
            if bsize < 0 or bsize > DEGREE_CAP:
                continue
            for nu in partitions_of(asize):
                w = v
                dead = False
                for part in nu:
                    w = apply_alpha_pm(-1, part, _ONE, w, params)
                    if w.is_zero():
                        dead = True
                        break
                if dead:
                    continue
                base = tau_one * (-c) ** len(nu) / zee(nu)
                for mu_ in partitions_of(bsize):
                    u = w
                    for part in mu_:
                        u = apply_alpha_pm(-1, -part, _ONE, u, params)
                    acc = acc + u.scale(base * c ** len(mu_) / zee(mu_))
        return acc

    return GradedOperator(2, 2, n, action)


def screening_etas(mu, n: int, params: Params):
    """(eta_source, eta_target) for the Virasoro intertwining of
    screening_mode(mu, n): half the framing difference before and after."""
    t1, t2 = params.t1, params.t2
    if mu == 1 / t1:
        return (n * t1 - t2) / 2, (n * t1 + t2) / 2
    if mu == 1 / t2:
        return (n * t2 - t1) / 2, (n * t2 + t1) / 2
    raise ValueError("admissible screening slopes are 1/t1 and 1/t2")
