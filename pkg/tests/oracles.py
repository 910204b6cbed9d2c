"""Slow, obviously-correct reference implementations used only by tests."""

from __future__ import annotations

import cmath
from itertools import product
from math import gcd, isqrt


def trial_is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def trial_factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def lucas_lehmer(p: int) -> bool:
    """2^p - 1 prime, for odd prime p."""
    m = (1 << p) - 1
    s = 4
    for _ in range(p - 2):
        s = (s * s - 2) % m
    return s == 0


def totient(m: int) -> int:
    return sum(1 for g in range(1, m + 1) if gcd(g, m) == 1)


def brute_order(g: int, m: int) -> int:
    e, x = 1, g % m
    while x != 1:
        x = x * g % m
        e += 1
    return e


def brute_member(kind: str, param: int, n: int) -> bool:
    """Literal reading of the prime-power congruence characterization."""
    base, mod = (2, 2**param) if kind == "Nk" else (param, param)
    return all(q == base or pow(q, a, mod) == 1 for q, a in trial_factor(n).items())


def two_squares_scan(n: int) -> bool:
    a = 0
    while a * a <= n:
        b = isqrt(n - a * a)
        if a * a + b * b == n:
            return True
        a += 1
    return False


def norm_via_conjugates(x: int, y: int, z: int, w: int) -> int:
    """Product of the four embeddings of x + y*z8 + z*z8^2 + w*z8^3."""
    acc = 1 + 0j
    for j in (1, 3, 5, 7):
        r = cmath.exp(2j * cmath.pi * j / 8)
        acc *= x + y * r + z * r**2 + w * r**3
    return round(acc.real)


def power_sums_by_tuples(base: int, t: int, limit: int) -> set[int]:
    """Sums of at most t powers via every ordered exponent tuple."""
    exps = []
    e = 0
    while base**e <= limit:
        exps.append(e)
        e += 1
    out = {0}
    for j in range(1, t + 1):
        for tup in product(exps, repeat=j):
            s = sum(base**x for x in tup)
            if s <= limit:
                out.add(s)
    return out


def convolution_search(member_flags: list[int], base: int, t: int, hi: int) -> list[int]:
    """Shifted-index convolution: member flags against power indicators.

    ``member_flags[i]`` is 1 when i+1 is a member.  Power indicator index i
    stands for the value i, with index 0 the empty power.  Counts of
    member + t power slots land at their total; n is non-representable
    when its count is zero.
    """
    powers = [0] * (hi + 1)
    powers[0] = 1
    pw = 1
    while pw <= hi:
        powers[pw] = 1
        pw *= base
    counts = [0] * (hi + 1)

    def rec(slot, total, weight):
        if total > hi:
            return
        if slot == t:
            counts[total] += weight
            return
        for v in range(hi + 1):
            if powers[v]:
                rec(slot + 1, total + v, weight)

    for m in range(1, hi + 1):
        if member_flags[m - 1]:
            rec(0, m, 1)
    return [n for n in range(1, hi + 1) if counts[n] == 0]
