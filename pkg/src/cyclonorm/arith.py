"""Exact integer primitives: primality, factorization, multiplicative order."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

__all__ = [
    "MAX_INT",
    "Factorization",
    "RangeError",
    "check_range",
    "factorize",
    "is_prime",
    "mod_order",
    "popcount",
    "primes_up_to",
]

MAX_INT = 2**64 - 1

# Deterministic for every n < 3.3e24, which covers the full 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 1 << 12


class RangeError(ValueError):
    """An integer argument lies outside the supported 64-bit range."""


def check_range(n: int, name: str = "n", lo: int = 0) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"{name} must be an integer, got {type(n).__name__}")
    n = int(n)
    if n < lo or n > MAX_INT:
        raise RangeError(f"{name}={n} outside supported range [{lo}, 2^64-1]")
    return n


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (plain Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


_SMALL_PRIMES: tuple[int, ...] = tuple(int(p) for p in primes_up_to(_TRIAL_LIMIT))


def _miller_rabin(n: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    n = check_range(n)
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:12]:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    return _miller_rabin(n)


def _brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    # Polynomial constants are tried in a fixed order, so output is reproducible.
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer as sorted (prime, exponent) pairs."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors!r}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors multiply to {prod}, not {self.n}")

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def as_list(self) -> list[list[int]]:
        return [[p, e] for p, e in self.factors]


def _factor_dict(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n == 1:
        return out
    if n < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(n):
        out[n] = out.get(n, 0) + 1
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent(m)
        stack += [d, m // d]
    return out


def factorize(n: int) -> Factorization:
    """Factor 1 <= n < 2^64: trial division, then Brent's rho on the cofactor.

    >>> factorize(12).factors
    ((2, 2), (3, 1))
    """
    n = check_range(n, lo=1)
    return Factorization(n, tuple(sorted(_factor_dict(n).items())))


def _totient(m: int) -> int:
    t = m
    for p in _factor_dict(m):
        t -= t // p
    return t


def mod_order(g: int, m: int) -> int:
    """Smallest e >= 1 with g^e = 1 (mod m)."""
    m = check_range(m, "m", lo=2)
    g = check_range(g, "g")
    if gcd(g, m) != 1:
        raise ValueError(f"gcd({g}, {m}) != 1; order undefined")
    g %= m
    order = _totient(m)
    for r in _factor_dict(order):
        while order % r == 0 and pow(g, order // r, m) == 1:
            order //= r
    return order


def popcount(a: int) -> int:
    if a < 0:
        raise ValueError("popcount needs a >= 0")
    return bin(a).count("1")
