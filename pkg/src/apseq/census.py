"""Census of symmetric seeds S(d0) and the twin-prime equivalence.

S(d0) is the set of a0 in [1, d0) co-prime to d0 whose first grouping is
mirror symmetric. Two independent routes compute it:

* oracle: build every first grouping and compare terms directly;
* divisor: for each divisor t < d0 of d0^2 - 1, a0 = (d0 - t)^-1 mod d0.

The claims under test are |S(d0)| = tau(d0^2 - 1) / 2 and
|S(d0)| = 2 iff d0 - 1 and d0 + 1 are both prime.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import checked_mul, count_divisors, divisors_below, euler_phi, gcd, is_prime, mod_inverse
from .grouping import check_symmetricity, first_grouping

MODES = ("oracle", "divisor", "both", "auto")
# auto: cross-check every row up to this bound, then every SPOT_CHECK_EVERY-th d0
AUTO_BOTH_LIMIT = 2000
SPOT_CHECK_EVERY = 50
# d0 = 3 has S = {1, 2} while 4 is composite; the equivalence only holds from 4 on
TWIN_D_MIN = 4


@dataclass(frozen=True)
class Falsification:
    kind: str  # "theorem", "count", "twin", "mode_mismatch", "structure"
    d0: int
    detail: str
    a0: int | None = None

    def as_dict(self) -> dict:
        return {"kind": self.kind, "d0": self.d0, "a0": self.a0, "detail": self.detail}


@dataclass(frozen=True)
class CensusRow:
    d0: int
    phi: int
    s_set: tuple[int, ...]
    tau_half: int
    twin: bool
    mode: str
    # set only when both routes ran and disagreed
    mismatch: tuple[tuple[int, ...], tuple[int, ...]] | None = field(default=None, compare=False)

    @property
    def s_size(self) -> int:
        return len(self.s_set)

    @property
    def count_claim_ok(self) -> bool:
        return self.s_size == self.tau_half

    @property
    def twin_claim_ok(self) -> bool:
        return (self.s_size == 2) == self.twin

    def falsifications(self, twin_d_min: int = 2) -> list[Falsification]:
        """Every claim this row breaks; twin failures below ``twin_d_min`` are skipped."""
        out = []
        if self.mismatch is not None:
            oracle, divisor = self.mismatch
            out.append(Falsification("mode_mismatch", self.d0, f"oracle={list(oracle)} divisor={list(divisor)}"))
        if not self.count_claim_ok:
            out.append(Falsification("count", self.d0, f"|S|={self.s_size} but tau(d0^2-1)/2={self.tau_half}"))
        if not self.twin_claim_ok and self.d0 >= twin_d_min:
            out.append(
                Falsification(
                    "twin", self.d0, f"|S|={self.s_size} but twin flanks prime={self.twin}"
                )
            )
        return out

    def as_dict(self) -> dict:
        return {
            "d0": self.d0,
            "phi": self.phi,
            "s_size": self.s_size,
            "tau_half": self.tau_half,
            "twin": self.twin,
            "count_claim_ok": self.count_claim_ok,
            "twin_claim_ok": self.twin_claim_ok,
            "s_set": list(self.s_set),
        }


def _check_d0(d0: int) -> None:
    if d0 < 2:
        raise ValueError(f"d0 must be >= 2, got {d0}")


def compute_s_oracle(d0: int) -> list[int]:
    _check_d0(d0)
    return [
        a0
        for a0 in range(1, d0)
        if gcd(a0, d0) == 1 and check_symmetricity(first_grouping(a0, d0)).symmetric
    ]


def compute_s_divisor(d0: int) -> list[int]:
    _check_d0(d0)
    n = checked_mul(d0, d0) - 1
    return sorted(mod_inverse(d0 - t, d0) for t in divisors_below(n, d0))


def resolve_mode(d0: int, mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode != "auto":
        return mode
    if d0 <= AUTO_BOTH_LIMIT or d0 % SPOT_CHECK_EVERY == 0:
        return "both"
    return "divisor"


def census_row(d0: int, mode: str = "auto") -> CensusRow:
    _check_d0(d0)
    mode = resolve_mode(d0, mode)
    mismatch = None
    if mode == "divisor":
        s_set = tuple(compute_s_divisor(d0))
    else:
        s_set = tuple(compute_s_oracle(d0))
        if mode == "both":
            fast = tuple(compute_s_divisor(d0))
            if fast != s_set:
                mismatch = (s_set, fast)
    return CensusRow(
        d0=d0,
        phi=euler_phi(d0),
        s_set=s_set,
        tau_half=count_divisors(checked_mul(d0, d0) - 1) // 2,
        twin=is_prime(d0 - 1) and is_prime(d0 + 1),
        mode=mode,
        mismatch=mismatch,
    )


def census_rows(d_min: int, d_max: int, mode: str = "auto") -> list[CensusRow]:
    if not 2 <= d_min <= d_max:
        raise ValueError(f"need 2 <= d_min <= d_max, got [{d_min}, {d_max}]")
    return [census_row(d0, mode) for d0 in range(d_min, d_max + 1)]


@dataclass
class TwinScan:
    rows: list[CensusRow]
    scanned: int
    falsifications: list[Falsification]


def twin_scan(d_min: int, d_max: int, mode: str = "auto", rows: list[CensusRow] | None = None) -> TwinScan:
    """Rows with |S(d0)| = 2 plus every broken claim in the range.

    ``rows`` lets a caller pass a precomputed census (e.g. from parallel
    workers); it must cover [d_min, d_max] in order.
    """
    if rows is None:
        rows = census_rows(d_min, d_max, mode)
    events = [f for row in rows for f in row.falsifications()]
    return TwinScan([r for r in rows if r.s_size == 2], len(rows), events)
