"""Exhaustive invariant suite over a range of d0.

Each d0 is checked independently by :func:`verify_d0`, so a range can be
split across workers and merged back in d0 order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import checked_mul, gcd
from .census import TWIN_D_MIN, CensusRow, Falsification, census_row
from .grouping import check_symmetricity, closed_form_leading_term, detect_groupings
from .sequence import Progression, build_sequence, next_progression, property_p_holds, verify_property_p, z_value

PROPERTY_P_TERMS = 25
UNIQUENESS_D_MAX = 40
UNIQUENESS_TERMS = 6


def successor_candidates(p: Progression, n_terms: int = UNIQUENESS_TERMS) -> list[Progression]:
    """Brute-force every A(a', d') with d' <= d and a' <= a*d linked to ``p``.

    Independent of the successor formula: it only evaluates the congruence on
    the first ``n_terms`` term pairs.
    """
    a, d = p.a, p.d
    moduli = [a + (i + 1) * d for i in range(n_terms)]
    found = []
    for d2 in range(1, d + 1):
        for a2 in range(1, a * d + 1):
            if all((a + i * d) * (a2 + i * d2) % moduli[i] == 1 for i in range(n_terms)):
                found.append(Progression(a2, d2))
    return found


def _structure(a0: int, d0: int) -> list[Falsification]:
    out = []

    def fail(detail: str) -> None:
        out.append(Falsification("structure", d0, detail, a0))

    s = build_sequence(a0, d0)
    diffs = s.differences
    if s.truncated or diffs[-1] != 1:
        fail(f"sequence does not reach d = 1 within {len(s)} steps")
    if any(x <= y for x, y in zip(diffs, diffs[1:])):
        fail(f"differences not strictly decreasing: {diffs}")
    check = verify_property_p(s, PROPERTY_P_TERMS)
    if not check.passed:
        fail(f"multiplicative link fails at (pair, term) = {check.counterexample}")
    for i, p in enumerate(s):
        if p.a // p.d != i:
            fail(f"position index of {p} is {p.a // p.d}, expected {i}")
            break
    if len(s) < 2:
        return out
    groups = detect_groupings(s)
    for g in groups:
        z_alpha = z_value(g.members[0], g.delta)
        for i in range(g.alpha, g.beta + 1):
            got = closed_form_leading_term(g, i)
            if got != s[i].a:
                fail(f"closed form gives a_{i} = {got}, constructed {s[i].a}")
            if z_value(s[i], g.delta) != z_alpha + (i - g.alpha) * g.delta:
                fail(f"z-values not arithmetic with step {g.delta} at index {i}")
    report = check_symmetricity(groups[0], checked_mul(d0, d0) - 1)
    if report.symmetric != report.delta_divides:
        out.append(
            Falsification(
                "theorem",
                d0,
                f"symmetric={report.symmetric} but delta={report.grouping.delta} divides d0^2-1: {report.delta_divides}",
                a0,
            )
        )
    if report.symmetric != (report.z0 == report.d_beta):
        fail(f"symmetric={report.symmetric} but z0={report.z0}, d_beta={report.d_beta}")
    return out


def _uniqueness(a: int, d: int) -> list[Falsification]:
    p = Progression(a, d)
    found = successor_candidates(p)
    expected = next_progression(p)
    if found != [expected]:
        return [Falsification("uniqueness", d, f"candidates {found}, successor {expected}", a)]
    return []


@dataclass
class D0Result:
    d0: int
    pairs: int
    row: CensusRow
    falsifications: list[Falsification] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def verify_d0(d0: int, uniqueness: bool = True) -> D0Result:
    """Run every check whose domain includes d0."""
    events: list[Falsification] = []
    pairs = 0
    for a0 in range(1, d0):
        if gcd(a0, d0) != 1:
            continue
        pairs += 1
        events += _structure(a0, d0)
        if uniqueness and d0 <= UNIQUENESS_D_MAX:
            events += _uniqueness(a0, d0)
    row = census_row(d0, "both")
    events += row.falsifications(twin_d_min=TWIN_D_MIN)
    notes = []
    if d0 < TWIN_D_MIN:
        notes.append(
            f"d0={d0}: |S|={row.s_size}, twin flanks prime={row.twin}, "
            f"equivalence {'holds' if row.twin_claim_ok else 'fails'} (below twin d_min {TWIN_D_MIN})"
        )
    return D0Result(d0, pairs, row, events, notes)


@dataclass
class VerifySummary:
    d_min: int
    d_max: int
    pairs: int
    falsifications: list[Falsification]
    notes: list[str]

    def count(self, *kinds: str) -> int:
        return sum(f.kind in kinds for f in self.falsifications)

    @property
    def ok(self) -> bool:
        return not self.falsifications

    def lines(self) -> list[str]:
        return [
            f"range: d0 in [{self.d_min}, {self.d_max}], {self.pairs} co-prime seeds",
            f"theorem: {self.count('theorem')} falsifications",
            f"census: {self.count('count', 'twin', 'mode_mismatch')} mismatches",
            f"structure: {self.count('structure', 'uniqueness')} violations",
        ]

    def as_dict(self) -> dict:
        return {
            "d_min": self.d_min,
            "d_max": self.d_max,
            "pairs": self.pairs,
            "theorem_falsifications": self.count("theorem"),
            "census_mismatches": self.count("count", "twin", "mode_mismatch"),
            "structure_violations": self.count("structure", "uniqueness"),
            "notes": self.notes,
            "ok": self.ok,
        }


def summarize(results: list[D0Result], d_min: int, d_max: int) -> VerifySummary:
    return VerifySummary(
        d_min,
        d_max,
        sum(r.pairs for r in results),
        [f for r in results for f in r.falsifications],
        [n for r in results for n in r.notes],
    )


def verify_range(d_min: int, d_max: int) -> VerifySummary:
    if not 2 <= d_min <= d_max:
        raise ValueError(f"need 2 <= d_min <= d_max, got [{d_min}, {d_max}]")
    return summarize([verify_d0(d0) for d0 in range(d_min, d_max + 1)], d_min, d_max)
