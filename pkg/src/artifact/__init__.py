"""Exact-arithmetic operator algebra on graded Fock spaces, with a
verification CLI for the structural identities the library implements."""

from .scalar import DEGREE_CAP, Params, RatFunc, S, Scalar, sample_params

__all__ = [
    "DEGREE_CAP",
    "Params",
    "RatFunc",
    "S",
    "Scalar",
    "sample_params",
]
