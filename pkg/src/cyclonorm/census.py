"""Counting experiments: member growth, density products, residue-class tables."""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .arith import mod_order, popcount, primes_up_to
from .msets import MSetSpec, sieve_members
from .represent import power_sum_flags, representable_flags

__all__ = [
    "ClassRow",
    "DensityRow",
    "count_members",
    "pair_count",
    "partial_density_product",
    "residue_class_census",
]


@dataclass(frozen=True)
class DensityRow:
    x: int
    count: int
    normalized: float | None  # count * (log x)^(1 - 1/d) / x; None when x < 2


def count_members(spec: MSetSpec, checkpoints, *, threads: int | None = None) -> list[DensityRow]:
    """Exact member counts |{n <= x}| at each checkpoint, from one sieve pass."""
    xs = [int(x) for x in checkpoints]
    if not xs:
        return []
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("checkpoints must be strictly ascending")
    if xs[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    sieve = sieve_members(spec, 1, xs[-1], threads=threads)
    cum = np.cumsum(sieve.bits, dtype=np.int64)
    expo = 1.0 - 1.0 / spec.density_degree
    rows = []
    for x in xs:
        c = int(cum[x - 1])
        norm = c * math.log(x) ** expo / x if x >= 2 else None
        rows.append(DensityRow(x, c, norm))
    return rows


def partial_density_product(k: int, prime_limit: int) -> float:
    """Product over odd primes p <= prime_limit of (1 - 1/p) / (1 - 1/p^d), d = ord(p, 2^k).

    Accumulated as a compensated sum of logarithms.
    """
    if k < 3:
        raise ValueError("density product is defined here for k >= 3")
    mod = 2**k
    terms = []
    for p in primes_up_to(prime_limit).tolist():
        if p == 2:
            continue
        d = mod_order(p, mod)
        terms.append(math.log1p(-1.0 / p))
        terms.append(-math.log1p(-float(p) ** -d))
    return math.exp(math.fsum(terms))


@dataclass(frozen=True)
class ClassRow:
    residue: int
    popcount: int
    power_sums: int  # sums of <= t powers of 2 in [0, x) within this class
    total: int  # integers in [1, x) within this class
    representable: int  # of those, member of Nk plus <= t powers of 2

    @property
    def nonrep_fraction(self) -> float:
        return (self.total - self.representable) / self.total if self.total else 0.0


def residue_class_census(k: int, t: int, x: int, *, threads: int | None = None) -> list[ClassRow]:
    """Per-class counts modulo 2^k below x for Nk members plus at most t powers of 2."""
    if k < 3:
        raise ValueError("class census needs k >= 3")
    if t < 0:
        raise ValueError("t must be >= 0")
    if x < 2:
        raise ValueError("x must be >= 2")
    mod = 2**k
    hi = x - 1
    sums = power_sum_flags(2, t, hi)
    sieve = sieve_members(MSetSpec.nk(k), 1, hi, threads=threads)
    member_bits = np.concatenate(([False], sieve.bits))
    rep = representable_flags(member_bits, np.flatnonzero(sums), 1, hi)
    res_all = np.arange(0, x) % mod
    res_pos = res_all[1:]
    ps = np.bincount(res_all[sums], minlength=mod)
    tot = np.bincount(res_pos, minlength=mod)
    rp = np.bincount(res_pos[rep], minlength=mod)
    return [
        ClassRow(a, popcount(a), int(ps[a]), int(tot[a]), int(rp[a]))
        for a in range(mod)
    ]


def pair_count(k: int, x: int) -> int:
    """Pairs (m, s), m < x in Nk, s < x a sum of <= k powers of 2 whose residue mod 2^k has k-1 ones.

    Raw count only; no asymptotic claim is attached.
    """
    hi = x - 1
    members = sieve_members(MSetSpec.nk(k), 1, hi).count()
    sums = np.flatnonzero(power_sum_flags(2, k, hi))
    ones = np.array([popcount(a) for a in range(2**k)])
    return members * int(np.count_nonzero(ones[sums % 2**k] == k - 1))
