"""Exact integer primitives: gcd, modular inverse, primality, divisors, totient.

Python integers never wrap, so "overflow" here means leaving the range the
toolkit promises to handle: checked products must stay below ``WIDE_LIMIT``
(128 bits) and anything that gets factored or primality-tested must stay
below ``WORD_LIMIT`` (64 bits). Out-of-range inputs raise
:class:`ArithmeticOverflow` instead of silently taking forever.
"""

from __future__ import annotations

from math import gcd as _gcd
from math import isqrt

WORD_LIMIT = 1 << 64
WIDE_LIMIT = 1 << 128

# Deterministic for n < 3.3e24 (Sorenson & Webster), well past WORD_LIMIT.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class ArithmeticOverflow(ArithmeticError):
    """A value left the supported integer range."""


class NotCoprime(ValueError):
    """Raised when an inverse is requested for a non-unit."""

    def __init__(self, a: int, m: int):
        super().__init__(f"{a} and {m} must be co-prime (gcd = {_gcd(a, m)})")
        self.a = a
        self.m = m


def checked_mul(x: int, y: int) -> int:
    """Product of two naturals, rejected if it reaches ``WIDE_LIMIT``."""
    p = x * y
    if abs(p) >= WIDE_LIMIT:
        raise ArithmeticOverflow(f"{x} * {y} exceeds the 128-bit working range")
    return p


def _require_word(n: int) -> None:
    if n >= WORD_LIMIT:
        raise ArithmeticOverflow(f"{n} exceeds the 64-bit range for factoring/primality")


def gcd(x: int, y: int) -> int:
    if x == 0 and y == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return _gcd(x, y)


def mod_inverse(a: int, m: int) -> int:
    """Return v in [1, m] with a*v = 1 (mod m).

    The range is [1, m] rather than [0, m-1] so that m = 1 yields 1; a
    progression with common difference 1 maps to itself.
    """
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if m == 1:
        return 1
    if _gcd(a, m) != 1:
        raise NotCoprime(a, m)
    return pow(a, -1, m)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    _require_word(n)
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
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


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division up to sqrt(n)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    _require_word(n)
    factors: dict[int, int] = {}
    p = 2
    while checked_mul(p, p) <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def count_divisors(n: int) -> int:
    """Number of positive divisors of n (tau)."""
    result = 1
    for e in factorize(n).values():
        result *= e + 1
    return result


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def divisors_below(n: int, bound: int) -> list[int]:
    """All divisors t of n with t < bound, ascending."""
    return [t for t in divisors(n) if t < bound]


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result
