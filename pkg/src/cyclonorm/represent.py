"""Representing integers as a set member plus at most t powers of a base."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import os

import numpy as np

from .arith import check_range
from .msets import MSetSpec, is_member, sieve_members

__all__ = [
    "MAX_POWERS",
    "ReprQuery",
    "ReprWitness",
    "SearchReport",
    "enumerate_power_sums",
    "find_nonrepresentable",
    "is_representable",
    "power_sum_flags",
    "representable_flags",
]

MAX_POWERS = 16


def _exponent_multisets(base: int, j: int, limit: int, lo_exp: int = 0, acc: int = 0):
    """Non-decreasing exponent tuples of length j, lexicographic, with power sum <= limit."""
    if j == 0:
        yield ()
        return
    e = lo_exp
    while True:
        pw = base**e
        # Every remaining exponent is >= e, so j copies of base^e is the minimum.
        if acc + j * pw > limit:
            return
        for rest in _exponent_multisets(base, j - 1, limit, e, acc + pw):
            yield (e,) + rest
        e += 1


def enumerate_power_sums(base: int, t: int, limit: int) -> dict[int, tuple[int, ...]]:
    """Every value <= limit that is a sum of at most t powers of base.

    Maps each value to its first certificate: fewest powers, then the
    lexicographically smallest non-decreasing exponent tuple.  The empty
    sum gives 0.

    >>> sorted(enumerate_power_sums(3, 1, 10))
    [0, 1, 3, 9]
    """
    if base < 2:
        raise ValueError("base must be >= 2")
    if t < 0 or limit < 0:
        raise ValueError("t and limit must be nonnegative")
    found: dict[int, tuple[int, ...]] = {}
    for j in range(t + 1):
        for exps in _exponent_multisets(base, j, limit):
            s = sum(base**e for e in exps)
            if s not in found:
                found[s] = exps
    return dict(sorted(found.items()))


def power_sum_flags(base: int, t: int, limit: int) -> np.ndarray:
    """Boolean array over [0, limit]: True where the index is a sum of <= t powers."""
    flags = np.zeros(limit + 1, dtype=bool)
    flags[0] = True
    powers = []
    pw = 1
    while pw <= limit:
        powers.append(pw)
        pw *= base
    for _ in range(t):
        nxt = flags.copy()
        for pw in powers:
            nxt[pw:] |= flags[: limit + 1 - pw]
        if np.array_equal(nxt, flags):
            break
        flags = nxt
    return flags


@dataclass(frozen=True)
class ReprWitness:
    member: int
    exponents: tuple[int, ...]

    def total(self, base: int) -> int:
        return self.member + sum(base**e for e in self.exponents)

    def to_dict(self) -> dict:
        return {"member": self.member, "exponents": list(self.exponents)}


@dataclass(frozen=True)
class ReprQuery:
    """Is n = m + (sum of at most max_powers powers of base) with m in spec?"""

    n: int
    spec: MSetSpec
    max_powers: int
    base: int | None = None

    def __post_init__(self):
        check_range(self.n, "n", lo=1)
        if self.base is None:
            object.__setattr__(self, "base", self.spec.base)
        if self.base < 2:
            raise ValueError("base must be >= 2")
        if not 0 <= self.max_powers <= MAX_POWERS:
            raise ValueError(f"max_powers must lie in [0, {MAX_POWERS}]")


def is_representable(q: ReprQuery) -> ReprWitness | None:
    """First witness in (fewest powers, lexicographic exponents) order, or None."""
    n, base = q.n, q.base
    verdict: dict[int, bool] = {}
    for j in range(q.max_powers + 1):
        for exps in _exponent_multisets(base, j, n - 1):
            m = n - sum(base**e for e in exps)
            if m not in verdict:
                verdict[m] = is_member(q.spec, m)
            if verdict[m]:
                return ReprWitness(m, exps)
    return None


def representable_flags(member_bits: np.ndarray, sums: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Flags over [lo, hi]: n - s is a member for some power sum s.

    ``member_bits[v]`` is membership of v for 0 <= v <= hi (index 0 unused).
    """
    out = np.zeros(hi - lo + 1, dtype=bool)
    for s in sums.tolist():
        start = max(lo, s + 1)
        if start > hi:
            break
        out[start - lo :] |= member_bits[start - s : hi - s + 1]
    return out


@dataclass
class SearchReport:
    spec: MSetSpec
    base: int
    max_powers: int
    lo: int
    hi: int
    non_representable: list[int]

    @property
    def n_nonrepresentable(self) -> int:
        return len(self.non_representable)

    @property
    def n_representable(self) -> int:
        return self.hi - self.lo + 1 - len(self.non_representable)

    def to_dict(self) -> dict:
        return {
            "set": str(self.spec),
            "base": self.base,
            "max_powers": self.max_powers,
            "lo": self.lo,
            "hi": self.hi,
            "non_representable": self.non_representable,
            "counts": {
                "representable": self.n_representable,
                "non_representable": self.n_nonrepresentable,
            },
        }


def find_nonrepresentable(
    spec: MSetSpec,
    base: int | None,
    t: int,
    lo: int,
    hi: int,
    *,
    threads: int | None = None,
    chunk: int = 1 << 16,
) -> SearchReport:
    """Exhaustively classify [lo, hi]; sieve members once, then mark member + power sums."""
    base = spec.base if base is None else base
    if base < 2:
        raise ValueError("base must be >= 2")
    if not 0 <= t <= MAX_POWERS:
        raise ValueError(f"max_powers must lie in [0, {MAX_POWERS}]")
    lo = check_range(lo, "lo", lo=1)
    hi = check_range(hi, "hi", lo=1)
    if hi < lo:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    sieve = sieve_members(spec, 1, hi, threads=threads)
    member_bits = np.concatenate(([False], sieve.bits))
    sums = np.flatnonzero(power_sum_flags(base, t, hi - 1))
    bounds = [(s, min(s + chunk - 1, hi)) for s in range(lo, hi + 1, chunk)]

    def work(b):
        a, z = b
        return np.flatnonzero(~representable_flags(member_bits, sums, a, z)) + a

    workers = threads or os.cpu_count() or 1
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]
    nonrep = np.concatenate(parts).tolist() if parts else []
    return SearchReport(spec, base, t, lo, hi, nonrep)
