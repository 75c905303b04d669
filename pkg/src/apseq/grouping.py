"""Groupings of a progression sequence and the symmetricity test.

A grouping is a maximal run of consecutive progressions whose common
differences drop by a constant second difference ``delta``. Consecutive
groupings share one progression. Inside a grouping the leading terms follow

    a_i = a_alpha + delta*(beta - i)*(i - alpha) + (i - alpha)*(d_beta - z_alpha)

with z_alpha = (a_alpha*delta + 1) / d_alpha. The first grouping is mirror
symmetric exactly when delta divides d0^2 - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import checked_mul
from .sequence import ApSequence, Progression, next_progression, z_value

# Test hook: when set, the first mirror comparison in check_symmetricity is
# inverted so the falsification reporting path can be exercised end to end.
INJECT_FAULT = False


class Degenerate(ValueError):
    """Sequence too short to have a second common difference."""


class IndexOutOfGrouping(IndexError):
    pass


@dataclass(frozen=True)
class Grouping:
    alpha: int
    beta: int
    delta: int
    members: tuple[Progression, ...]

    def __post_init__(self):
        if self.beta < self.alpha + 1:
            raise ValueError("a grouping spans at least two progressions")
        if len(self.members) != self.beta - self.alpha + 1:
            raise ValueError("members do not match the [alpha, beta] span")
        for p, q in zip(self.members, self.members[1:]):
            if p.d - q.d != self.delta:
                raise ValueError(f"{p} -> {q} breaks second difference {self.delta}")

    @property
    def size(self) -> int:
        return len(self.members)

    def at(self, i: int) -> Progression:
        """Member by absolute sequence index."""
        if not self.alpha <= i <= self.beta:
            raise IndexOutOfGrouping(f"index {i} outside [{self.alpha}, {self.beta}]")
        return self.members[i - self.alpha]

    @property
    def leading_terms(self) -> list[int]:
        return [p.a for p in self.members]


@dataclass(frozen=True)
class SymmetryReport:
    grouping: Grouping
    symmetric: bool
    witness: int | None
    delta_divides: bool | None  # only defined for a first grouping
    z0: int
    d_beta: int


def detect_groupings(s: ApSequence) -> list[Grouping]:
    progs = s.progressions
    if len(progs) < 2:
        raise Degenerate(f"sequence from seed {s.seed} has fewer than two progressions")
    gaps = [p.d - q.d for p, q in zip(progs, progs[1:])]
    groups = []
    start = 0
    for r in range(1, len(gaps) + 1):
        if r == len(gaps) or gaps[r] != gaps[start]:
            groups.append(Grouping(start, r, gaps[start], progs[start : r + 1]))
            start = r
    return groups


def first_grouping(a0: int, d0: int) -> Grouping:
    """First grouping of the sequence from (a0, d0), built lazily.

    Construction stops as soon as the second difference changes, so the rest
    of the sequence is never computed.
    """
    if d0 < 2:
        raise Degenerate(f"seed ({a0},{d0}) has fewer than two progressions")
    members = [Progression(a0, d0)]
    members.append(next_progression(members[0]))
    delta = members[0].d - members[1].d
    while members[-1].d > 1:
        nxt = next_progression(members[-1])
        if members[-1].d - nxt.d != delta:
            break
        members.append(nxt)
    return Grouping(0, len(members) - 1, delta, tuple(members))


def position_index(p: Progression) -> int:
    return p.a // p.d


def closed_form_leading_term(g: Grouping, i: int) -> int:
    if not g.alpha <= i <= g.beta:
        raise IndexOutOfGrouping(f"index {i} outside [{g.alpha}, {g.beta}]")
    first = g.members[0]
    z_alpha = z_value(first, g.delta)
    d_beta = g.members[-1].d
    k = i - g.alpha
    return (
        first.a
        + checked_mul(checked_mul(g.delta, g.beta - i), k)
        + checked_mul(k, d_beta - z_alpha)
    )


def check_symmetricity(g: Grouping, d0_squared_minus_1: int | None = None) -> SymmetryReport:
    """Compare leading terms against their mirror images directly.

    Pass ``d0_squared_minus_1`` only for the first grouping of a sequence;
    the divisibility side of the criterion is then filled in.
    """
    terms = g.leading_terms
    n = len(terms)
    witness = None
    for j in range(n):
        equal = terms[j] == terms[n - 1 - j]
        if INJECT_FAULT and j == 0:
            equal = not equal
        if not equal:
            witness = g.alpha + j
            break
    divides = None if d0_squared_minus_1 is None else d0_squared_minus_1 % g.delta == 0
    return SymmetryReport(
        grouping=g,
        symmetric=witness is None,
        witness=witness,
        delta_divides=divides,
        z0=z_value(g.members[0], g.delta),
        d_beta=g.members[-1].d,
    )


def theorem_check(a0: int, d0: int) -> bool:
    """True iff direct symmetry and delta | d0^2 - 1 agree for the first grouping."""
    if d0 < 2 or not 1 <= a0 < d0:
        raise ValueError(f"need 2 <= d0 and 1 <= a0 < d0, got a0={a0}, d0={d0}")
    report = check_symmetricity(first_grouping(a0, d0), checked_mul(d0, d0) - 1)
    return report.symmetric == report.delta_divides

