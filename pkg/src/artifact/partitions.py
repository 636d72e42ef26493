"""Partition and multipartition combinatorics: enumeration in reverse
lexicographic order, dominance, arm/leg/content data."""

from __future__ import annotations

from functools import lru_cache

# A Partition is a tuple of weakly decreasing positive ints; () is empty.
# A MultiPartition is a tuple of r Partitions.


def is_partition(parts) -> bool:
    parts = tuple(parts)
    return all(isinstance(p, int) and p >= 1 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def check_partition(parts):
    parts = tuple(parts)
    if not is_partition(parts):
        raise ValueError("not a partition: %r" % (parts,))
    return parts


def size(la) -> int:
    return sum(la)


@lru_cache(maxsize=None)
def partitions_of(n: int):
    """All partitions of n, reverse-lexicographically ordered (largest first).

    partitions_of(4) = [(4,), (3,1), (2,2), (2,1,1), (1,1,1,1)].
    """
    if n < 0:
        raise ValueError("negative size")
    out = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n if n else 1, [])
    return tuple(out)


@lru_cache(maxsize=None)
def partition_index(la) -> int:
    """Position of la in the canonical order of its size class."""
    return partitions_of(size(la)).index(tuple(la))


def conjugate(la):
    la = tuple(la)
    if not la:
        return ()
    out = []
    for j in range(1, la[0] + 1):
        out.append(sum(1 for p in la if p >= j))
    return tuple(out)


def dominates(la, mu) -> bool:
    """la >= mu in dominance order (same size required)."""
    if sum(la) != sum(mu):
        raise ValueError("dominance compares equal sizes only")
    acc_l = acc_m = 0
    for i in range(max(len(la), len(mu))):
        acc_l += la[i] if i < len(la) else 0
        acc_m += mu[i] if i < len(mu) else 0
        if acc_l < acc_m:
            return False
    return True


def hook_data(la, box):
    """(arm, leg, content) of a 1-indexed box (i, j) in the diagram of la."""
    la = tuple(la)
    i, j = box
    if not (1 <= i <= len(la)) or not (1 <= j <= la[i - 1]):
        raise ValueError("box %r outside diagram of %r" % (box, la))
    arm = la[i - 1] - j
    conj = conjugate(la)
    leg = conj[j - 1] - i
    return arm, leg, j - i


def boxes(la):
    """All 1-indexed boxes of the diagram, row by row."""
    return [(i + 1, j + 1) for i, p in enumerate(la) for j in range(p)]


def hook_length(la, box) -> int:
    arm, leg, _ = hook_data(la, box)
    return arm + leg + 1


def zee(la):
    """z_la = prod_i (i^{m_i} m_i!) for la = (1^{m_1} 2^{m_2} ...)."""
    z = 1
    mult = {}
    for p in la:
        mult[p] = mult.get(p, 0) + 1
    for p, m in mult.items():
        z *= p ** m
        for k in range(1, m + 1):
            z *= k
    return z


def multiplicity(la, k) -> int:
    return sum(1 for p in la if p == k)


def remove_part(la, k):
    """la with one part equal to k removed; raises if absent."""
    la = list(la)
    la.remove(k)
    return tuple(la)


def add_part(la, k):
    out = sorted(list(la) + [k], reverse=True)
    return tuple(out)


def multipartitions_of(degree: int, rank: int):
    """All rank-tuples of partitions of total size `degree`, ordered first by
    the composition of sizes (first component largest first), then reverse-lex
    within each component, last component varying fastest."""
    if rank == 0:
        return ((),) if degree == 0 else ()
    out = []

    def rec(remaining, slot, acc):
        if slot == rank - 1:
            for la in partitions_of(remaining):
                out.append(tuple(acc + [la]))
            return
        for d in range(remaining, -1, -1):
            for la in partitions_of(d):
                acc.append(la)
                rec(remaining - d, slot + 1, acc)
                acc.pop()

    rec(degree, 0, [])
    return tuple(out)


@lru_cache(maxsize=None)
def multipartition_basis(degree: int, rank: int):
    return multipartitions_of(degree, rank)


@lru_cache(maxsize=None)
def multipartition_index(rank: int, mp) -> int:
    deg = sum(sum(c) for c in mp)
    return multipartition_basis(deg, rank).index(mp)


def standard_tableaux_count(la) -> int:
    """Hook length formula; integrality is a partitions sanity invariant."""
    n = size(la)
    num = 1
    for k in range(2, n + 1):
        num *= k
    den = 1
    for b in boxes(la):
        den *= hook_length(la, b)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("hook length formula produced a non-integer")
    return q
