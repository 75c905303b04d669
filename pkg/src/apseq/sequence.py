"""Build the chain of arithmetic progressions generated from a co-prime seed.

Each progression A(a, d) has a unique successor A(a', d') with d' <= d whose
terms satisfy (a + i*d)(a' + i*d') = 1 (mod a + (i+1)*d) for every i >= 0.
The successor is d' = a^-1 mod d and a' = d' + (a*d' - 1) / d.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log2

from .arith import NotCoprime, checked_mul, gcd, mod_inverse


class NotIntegral(ValueError):
    """(a*delta + 1) is not divisible by d."""


@dataclass(frozen=True)
class Progression:
    a: int
    d: int

    def __post_init__(self):
        if self.a < 1 or self.d < 1:
            raise ValueError(f"A({self.a},{self.d}): leading term and difference must be >= 1")
        if gcd(self.a, self.d) != 1:
            raise NotCoprime(self.a, self.d)

    def term(self, i: int) -> int:
        return self.a + checked_mul(i, self.d)

    def terms(self, n: int) -> list[int]:
        return [self.term(i) for i in range(n)]

    def __str__(self) -> str:
        return f"A({self.a},{self.d})"


@dataclass(frozen=True)
class ApSequence:
    seed: tuple[int, int]
    progressions: tuple[Progression, ...]
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.progressions)

    def __getitem__(self, i):
        return self.progressions[i]

    def __iter__(self):
        return iter(self.progressions)

    @property
    def leading_terms(self) -> list[int]:
        return [p.a for p in self.progressions]

    @property
    def differences(self) -> list[int]:
        return [p.d for p in self.progressions]


@dataclass(frozen=True)
class PropertyCheck:
    passed: bool
    counterexample: tuple[int, int] | None = None  # (pair index, term index)


def next_progression(p: Progression) -> Progression:
    d_next = mod_inverse(p.a, p.d)
    num = checked_mul(p.a, d_next) - 1
    # d_next is the inverse of a mod d, so the division is exact
    assert num % p.d == 0
    return Progression(d_next + num // p.d, d_next)


def default_max_len(d0: int) -> int:
    return 10 * ceil(log2(d0)) + d0 + 2 if d0 > 1 else 2


def build_sequence(a0: int, d0: int, max_len: int | None = None) -> ApSequence:
    """Iterate the successor map from A(a0, d0) until d = 1.

    The d = 1 progression is its own successor and is stored once. If
    ``max_len`` entries are reached first, the result is marked truncated.
    """
    if max_len is None:
        max_len = default_max_len(d0)
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    p = Progression(a0, d0)
    out = [p]
    while p.d > 1 and len(out) < max_len:
        p = next_progression(p)
        out.append(p)
    return ApSequence((a0, d0), tuple(out), truncated=p.d > 1)


def property_p_holds(p: Progression, q: Progression, i: int) -> bool:
    """Literal check of the multiplicative link between term i of p and q."""
    return checked_mul(p.term(i), q.term(i)) % p.term(i + 1) == 1 % p.term(i + 1)


def verify_property_p(s: ApSequence, k: int) -> PropertyCheck:
    if k < 1:
        raise ValueError("k must be >= 1")
    for j in range(len(s.progressions) - 1):
        p, q = s.progressions[j], s.progressions[j + 1]
        for i in range(k):
            if not property_p_holds(p, q, i):
                return PropertyCheck(False, (j, i))
    return PropertyCheck(True)


def z_value(p: Progression, delta: int) -> int:
    num = checked_mul(p.a, delta) + 1
    if num % p.d:
        raise NotIntegral(f"{p.d} does not divide {p.a}*{delta} + 1")
    return num // p.d
