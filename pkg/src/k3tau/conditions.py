from __future__ import annotations
import logging
from dataclasses import dataclass
from math import isqrt
from sympy import factorint

from .errors import InadmissibleDegreeError
from .pell import Constraint, solve_affine

log = logging.getLogger(__name__)

SCAN_FILTERS = ("all", "star", "twostar", "threestar", "tau_strict", "tau_extended")

def _check_positive(d: int) -> None:
    if d <= 0:
        raise InadmissibleDegreeError(f"d must be positive, got {d}")

def cond_star(d: int) -> bool:
    _check_positive(d)
    return d > 6 and d % 6 in (0, 2)

def cond_twostar(d: int) -> bool:
    """d even, not divisible by 4, 9 or any odd prime p ≡ 2 mod 3."""
    _check_positive(d)
    if d % 2 or d % 4 == 0 or d % 9 == 0:
        return False
    return not any(p % 2 and p % 3 == 2 for p in factorint(d))

def cond_threestar(d: int) -> tuple[bool, tuple[int, int] | None]:
    """Is a²d = 2(n² + n + 1) solvable with n ≥ 2? Returns the least witness (a, n).

    Multiplying by 4 gives (2n+1)² − (d/2)(2a)² = −3, a Pell equation with y even.
    """
    if d % 2:
        raise InadmissibleDegreeError(f"d must be even, got {d}")
    if d <= 6:
        raise InadmissibleDegreeError(f"d must exceed 6, got {d}")
    half = d // 2
    if isqrt(half) ** 2 == half:
        # n² + n + 1 lies strictly between two consecutive squares
        return False, None
    w = solve_affine(1, half, -3, (Constraint.Q_EVEN,))
    if not w.solvable:
        return False, None
    a, n = w.q // 2, (w.p - 1) // 2
    assert a * a * d == 2 * (n * n + n + 1) and n >= 2
    return True, (a, n)

def tau_strict(d: int) -> bool:
    return cond_twostar(d) and d % 6 == 0

def tau_extended(d: int) -> bool:
    _check_positive(d)
    return d % 6 == 0 and (d // 6) % 3 == 1

@dataclass(frozen=True)
class DClassification:
    d: int
    star: bool
    twostar: bool
    threestar: bool
    threestar_witness: tuple[int, int] | None
    tau_strict: bool
    tau_extended: bool

    def to_dict(self) -> dict:
        a, n = self.threestar_witness or (None, None)
        return {
            "d": self.d,
            "star": self.star,
            "twostar": self.twostar,
            "threestar": self.threestar,
            "a": a,
            "n": n,
            "tau_strict": self.tau_strict,
            "tau_extended": self.tau_extended,
        }

    def matches(self, only: str) -> bool:
        if only not in SCAN_FILTERS:
            raise ValueError(f"unknown filter {only!r}; expected one of {', '.join(SCAN_FILTERS)}")
        return only == "all" or bool(getattr(self, only))

def classify_d(d: int) -> DClassification:
    if d <= 0 or d % 2:
        raise InadmissibleDegreeError(f"d must be even, got {d}")
    threestar, witness = cond_threestar(d) if d > 6 else (False, None)
    out = DClassification(
        d=d,
        star=cond_star(d),
        twostar=cond_twostar(d),
        threestar=threestar,
        threestar_witness=witness,
        tau_strict=tau_strict(d),
        tau_extended=tau_extended(d),
    )
    log.debug("classified d=%d: %s", d, out.to_dict())
    return out
