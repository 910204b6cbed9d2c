"""Ideal-norm sets of the cyclotomic rings Z[zeta_{2^k}] and Z[zeta_p].

A positive integer is the norm of an ideal exactly when every prime power
q^a exactly dividing it, with q different from the ramified prime, satisfies
q^a = 1 modulo 2^k (resp. p).  Membership is decided three ways here:
pointwise from a factorization, by a segmented sieve over a range, and by
generating all members below a bound.  For k = 3 the quartic norm form of
Z[zeta_8] gives a fourth, independent route.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import isqrt
import os
import re

import numpy as np

from .arith import (
    Factorization,
    RangeError,
    check_range,
    factorize,
    is_prime,
    mod_order,
    primes_up_to,
)

__all__ = [
    "MSetSpec",
    "MembershipSieve",
    "DEFAULT_SIEVE_BUDGET",
    "SIEVE_MAX_HI",
    "enumerate_norm_form_values",
    "generate_members",
    "is_member",
    "is_sum_of_two_squares",
    "member_from_factors",
    "norm_form_value",
    "sieve_members",
    "stable_norm_form_values",
    "strip_base",
]

DEFAULT_SIEVE_BUDGET = 10**8  # flags per sieve (one byte each)
SIEVE_MAX_HI = 10**12
SEGMENT_SIZE = 1 << 18

_SELECTOR = re.compile(r"^\s*(nk|mp)\s*:\s*(\d+)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class MSetSpec:
    """Which multiplicative set: ``MSetSpec("Nk", 3)`` or ``MSetSpec("Mp", 7)``."""

    variant: str
    param: int

    def __post_init__(self):
        if self.variant == "Nk":
            if self.param < 2:
                raise ValueError(f"Nk needs k >= 2, got k={self.param}")
            if self.param > 62:
                raise RangeError(f"k={self.param} too large for 64-bit moduli")
        elif self.variant == "Mp":
            if self.param == 2 or not is_prime(self.param):
                raise ValueError(f"Mp needs an odd prime p, got p={self.param}")
        else:
            raise ValueError(f"unknown variant {self.variant!r}; expected 'Nk' or 'Mp'")

    @classmethod
    def nk(cls, k: int) -> "MSetSpec":
        return cls("Nk", k)

    @classmethod
    def mp(cls, p: int) -> "MSetSpec":
        return cls("Mp", p)

    @classmethod
    def parse(cls, text: str) -> "MSetSpec":
        m = _SELECTOR.match(text)
        if not m:
            raise ValueError(f"bad set selector {text!r}; expected nk:<k> or mp:<p>")
        kind, val = m.group(1).lower(), int(m.group(2))
        return cls.nk(val) if kind == "nk" else cls.mp(val)

    @property
    def base(self) -> int:
        """The totally ramified prime, whose exponent is unrestricted."""
        return 2 if self.variant == "Nk" else self.param

    @property
    def modulus(self) -> int:
        return 2**self.param if self.variant == "Nk" else self.param

    @property
    def density_degree(self) -> int:
        """d in the growth rate x / (log x)^(1 - 1/d)."""
        return 2 ** (self.param - 1) if self.variant == "Nk" else self.param - 1

    def __str__(self) -> str:
        return f"{self.variant.lower()}:{self.param}"


def member_from_factors(spec: MSetSpec, factors) -> bool:
    base, mod = spec.base, spec.modulus
    for q, a in factors:
        if q != base and pow(q, a, mod) != 1:
            return False
    return True


def is_member(spec: MSetSpec, n: int) -> bool:
    """True iff n is the norm of an ideal in the ring described by ``spec``.

    The ramified prime may appear to any power; every other prime power q^a
    exactly dividing n must be 1 modulo ``spec.modulus``.  1 is a member.
    """
    return member_from_factors(spec, factorize(n))


def strip_base(spec: MSetSpec, n: int) -> int:
    """n with every factor of the ramified prime removed."""
    n = check_range(n, lo=1)
    b = spec.base
    while n % b == 0:
        n //= b
    return n


def is_sum_of_two_squares(n: int) -> bool:
    for q, a in factorize(n):
        if q % 4 == 3 and a % 2:
            return False
    return True


@dataclass(frozen=True)
class MembershipSieve:
    """Membership flags for every integer in [lo, hi]."""

    spec: MSetSpec
    lo: int
    hi: int
    bits: np.ndarray = field(repr=False)

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi and bool(self.bits[n - self.lo])

    def flag(self, n: int) -> bool:
        if not self.lo <= n <= self.hi:
            raise IndexError(f"{n} outside sieved range [{self.lo}, {self.hi}]")
        return bool(self.bits[n - self.lo])

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.bits).astype(np.int64) + self.lo

    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def __len__(self) -> int:
        return self.hi - self.lo + 1


def _prime_orders(spec: MSetSpec, primes: np.ndarray) -> list[tuple[int, int]]:
    """(q, ord(q, modulus)) for each sieving prime; ord 0 marks the ramified prime."""
    base, mod = spec.base, spec.modulus
    out = []
    for q in primes.tolist():
        out.append((q, 0 if q == base else mod_order(q, mod)))
    return out


def _sieve_segment(spec: MSetSpec, plist, start: int, stop: int) -> np.ndarray:
    """Flags for [start, stop) by stripping every sieving prime from each entry."""
    rem = np.arange(start, stop, dtype=np.int64)
    ok = np.ones(stop - start, dtype=bool)
    for q, order in plist:
        if q * q >= stop:
            break
        first = -start % q
        if first >= stop - start:
            continue
        sl = slice(first, None, q)
        sub = rem[sl] // q
        cnt = np.ones(sub.shape, dtype=np.int64)
        while True:
            hit = sub % q == 0
            if not hit.any():
                break
            sub = np.where(hit, sub // q, sub)
            cnt += hit
        rem[sl] = sub
        if order > 1:
            ok[sl] &= cnt % order == 0
    # Leftover cofactors are primes to the first power.
    big = rem > 1
    ok &= ~big | (rem == spec.base) | (rem % spec.modulus == 1)
    return ok


def sieve_members(
    spec: MSetSpec,
    lo: int,
    hi: int,
    *,
    budget: int = DEFAULT_SIEVE_BUDGET,
    threads: int | None = None,
    segment_size: int = SEGMENT_SIZE,
) -> MembershipSieve:
    """Membership flags for [lo, hi] via a segmented prime-stripping sieve."""
    lo = check_range(lo, "lo", lo=1)
    hi = check_range(hi, "hi", lo=1)
    if hi < lo:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    if hi > SIEVE_MAX_HI:
        raise RangeError(f"hi={hi} exceeds sieve ceiling {SIEVE_MAX_HI}")
    if hi - lo + 1 > budget:
        raise RangeError(f"range width {hi - lo + 1} exceeds sieve budget {budget}")
    plist = _prime_orders(spec, primes_up_to(isqrt(hi)))
    bounds = [(s, min(s + segment_size, hi + 1)) for s in range(lo, hi + 1, segment_size)]
    workers = threads or os.cpu_count() or 1
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda b: _sieve_segment(spec, plist, *b), bounds))
    else:
        parts = [_sieve_segment(spec, plist, s, e) for s, e in bounds]
    bits = np.concatenate(parts)
    bits.setflags(write=False)
    return MembershipSieve(spec, lo, hi, bits)


def _generators(spec: MSetSpec, limit: int) -> list[int]:
    """Smallest allowed power of each prime, sorted ascending."""
    base, mod = spec.base, spec.modulus
    gens = [base] if base <= limit else []
    for q in primes_up_to(limit).tolist():
        if q == base or mod % q == 0:
            continue
        if q % mod == 1:
            gens.append(q)
        elif q * q <= limit:
            g = q ** mod_order(q, mod)
            if g <= limit:
                gens.append(g)
    gens.sort()
    return gens


def generate_members(spec: MSetSpec, limit: int) -> list[int]:
    """All members <= limit, built as products of allowed prime powers."""
    limit = check_range(limit, "limit", lo=1)
    gens = _generators(spec, limit)
    out = [1]
    # Each generator belongs to a distinct prime, so every product arises once.
    stack = [(1, 0)]
    while stack:
        cur, idx = stack.pop()
        for j in range(idx, len(gens)):
            g = gens[j]
            v = cur * g
            if v > limit:
                break
            while v <= limit:
                out.append(v)
                stack.append((v, j + 1))
                v *= g
    out.sort()
    return out


def norm_form_value(x: int, y: int, z: int, w: int) -> int:
    """Norm of x + y*z8 + z*z8^2 + w*z8^3 for z8 = exp(2*pi*i/8)."""
    val = (
        x**4
        + (4 * w * y + 2 * z * z) * x * x
        + (-4 * z * y * y + 4 * w * w * z) * x
        + (y**4 + 2 * w * w * y * y - 4 * w * z * z * y + z**4 + w**4)
    )
    if val > 2**63 - 1:
        raise RangeError(f"norm form value at {(x, y, z, w)} exceeds 64-bit range")
    return val


# Sum of absolute coefficients of the quartic; |N| <= 24 * box^4.
_NORM_COEFF_BOUND = 24


def enumerate_norm_form_values(limit: int, box: int) -> list[int]:
    """Distinct nonzero quartic norm values <= limit over the box |coords| <= box."""
    if box < 1:
        raise ValueError("box must be >= 1")
    if _NORM_COEFF_BOUND * box**4 > 2**63 - 1:
        raise RangeError(f"box={box} would overflow 64-bit arithmetic")
    r = np.arange(-box, box + 1, dtype=np.int64)
    y = r[:, None, None]
    z = r[None, :, None]
    w = r[None, None, :]
    const = y**4 + 2 * w * w * y * y - 4 * w * z * z * y + z**4 + w**4
    quad = 4 * w * y + 2 * z * z
    lin = -4 * z * y * y + 4 * w * w * z
    found = set()
    for x in range(-box, box + 1):
        vals = x**4 + quad * (x * x) + lin * x + const
        vals = vals[(vals > 0) & (vals <= limit)]
        found.update(np.unique(vals).tolist())
    return sorted(found)


def stable_norm_form_values(limit: int, max_box: int = 4096) -> tuple[list[int], int]:
    """Grow the box from ceil(limit^(1/4)) + 2, doubling until the value set repeats.

    Returns the stable value list and the box at which it was confirmed.
    """
    box = isqrt(isqrt(limit))
    if box**4 < limit:
        box += 1
    box += 2
    prev = enumerate_norm_form_values(limit, box)
    while box < max_box:
        box *= 2
        cur = enumerate_norm_form_values(limit, box)
        if cur == prev:
            return cur, box
        prev = cur
    raise RuntimeError(f"norm form values up to {limit} did not stabilize by box {max_box}")


def factorization_evidence(spec: MSetSpec, n: int) -> list[dict]:
    """Per-prime verdicts explaining a membership decision."""
    fac: Factorization = factorize(n)
    rows = []
    for q, a in fac:
        if q == spec.base:
            rows.append({"prime": q, "exponent": a, "residue": None, "ok": True})
        else:
            res = pow(q, a, spec.modulus)
            rows.append({"prime": q, "exponent": a, "residue": res, "ok": res == 1})
    return rows
