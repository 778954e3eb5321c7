"""Generalized Pell equations x² − Dy² = N and affine forms aP² − bQ² = c.

Decisions are exact. Small searches scan y up to the classical bound coming
from the fundamental unit; larger ones take one representative per solution
class (sympy's LMM solver) and walk each unit orbit down to its least |y|.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import isqrt, lcm
from typing import Callable, Iterable
from sympy import divisors
from sympy.ntheory.continued_fraction import continued_fraction_convergents, continued_fraction_periodic
from sympy.solvers.diophantine.diophantine import diop_DN

from .errors import PellInputError

log = logging.getLogger(__name__)

# largest Nagell bound still searched by a direct y-scan
SCAN_CEILING = 200_000

Point = tuple[int, int]
Accept = Callable[[int, int], bool]

class Constraint(str, Enum):
    P_ODD = "p-odd"
    Q_EVEN = "q-even"
    P_DIV3 = "p-div3"

def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n

@dataclass(frozen=True)
class PellProblem:
    D: int
    N: int

    def __post_init__(self):
        _check_d(self.D)
        if self.N == 0:
            raise PellInputError("N must be nonzero")

def _check_d(D: int) -> None:
    if D <= 0:
        raise PellInputError(f"D must be positive, got {D}")
    if _is_square(D):
        raise PellInputError(f"D must not be a perfect square, got {D}")

@dataclass(frozen=True)
class PellWitness:
    D: int
    N: int
    solvable: bool
    x: int | None = None
    y: int | None = None
    method: str = ""
    bound: int | None = None

    @property
    def exhausted(self) -> bool:
        """Brute force found nothing up to `bound`; not a proof of unsolvability."""
        return not self.solvable and self.method == "brute-force"

    def to_dict(self) -> dict:
        return {"solvable": self.solvable, "x": self.x, "y": self.y, "method": self.method}

@dataclass(frozen=True)
class AffineWitness:
    a: int
    b: int
    c: int
    solvable: bool
    p: int | None = None
    q: int | None = None
    method: str = ""
    constraints: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {"solvable": self.solvable, "p": self.p, "q": self.q, "method": self.method}

@lru_cache(maxsize=4096)
def pell_fundamental(D: int) -> Point:
    """Least positive solution of x² − Dy² = 1 from the continued fraction of √D."""
    _check_d(D)
    a0, period = continued_fraction_periodic(0, 1, D)
    terms = [a0] + list(period)
    if len(period) % 2:
        terms += list(period)
    *_, last = continued_fraction_convergents(terms[:-1])
    x, y = int(last.p), int(last.q)
    assert x * x - D * y * y == 1
    return x, y

def nagell_bound(D: int, N: int) -> int:
    """Every solvable class has a member with 0 ≤ y ≤ this bound."""
    x1, y1 = pell_fundamental(D)
    if N > 0:
        return isqrt(y1 * y1 * N // (2 * (x1 + 1)))
    return isqrt(y1 * y1 * -N // (2 * (x1 - 1)))

def _mul(u: Point, v: Point, D: int) -> Point:
    return (u[0] * v[0] + D * u[1] * v[1], u[0] * v[1] + u[1] * v[0])

def _power(u: Point, k: int, D: int) -> Point:
    out = (1, 0)
    while k:
        if k & 1:
            out = _mul(out, u, D)
        u = _mul(u, u, D)
        k >>= 1
    return out

def _unit_period(unit: Point, D: int, modulus: int) -> int:
    """Order of the unit acting on residues mod modulus."""
    if modulus == 1:
        return 1
    base = (unit[0] % modulus, unit[1] % modulus)
    cur, t = base, 1
    while cur != (1 % modulus, 0):
        cur = ((cur[0] * base[0] + D * cur[1] * base[1]) % modulus,
               (cur[0] * base[1] + cur[1] * base[0]) % modulus)
        t += 1
    return t

def _walk(pt: Point, step: Point, D: int) -> Point:
    # |y| is unimodal along a unit orbit, so a strict descent finds the local minimum
    cur = pt
    while True:
        nxt = _mul(cur, step, D)
        if abs(nxt[1]) >= abs(cur[1]):
            return cur
        cur = nxt

def _key(pt: Point) -> Point:
    return abs(pt[1]), abs(pt[0])

def _least_in_orbits(D: int, reps: Iterable[Point], accept: Accept | None, modulus: int) -> Point | None:
    unit = pell_fundamental(D)
    period = _unit_period(unit, D, modulus)
    step = _power(unit, period, D)
    back = (step[0], -step[1])
    best = None
    for x, y in reps:
        for start in ((x, y), (x, -y)):
            pt = start
            for _ in range(period):
                if accept is None or accept(abs(pt[0]), abs(pt[1])):
                    for cand in (_walk(pt, step, D), _walk(pt, back, D)):
                        if best is None or _key(cand) < _key(best):
                            best = cand
                pt = _mul(pt, unit, D)
    if best is None:
        return None
    return abs(best[0]), abs(best[1])

def _class_representatives(D: int, N: int) -> list[Point]:
    return [(int(x), int(y)) for x, y in diop_DN(D, N)]

def pell_solve(D: int, N: int, scan_ceiling: int = SCAN_CEILING) -> PellWitness:
    PellProblem(D, N)
    bound = nagell_bound(D, N)
    if bound <= scan_ceiling:
        for y in range(bound + 1):
            t = N + D * y * y
            if _is_square(t):
                return PellWitness(D, N, True, isqrt(t), y, "scan", bound)
        return PellWitness(D, N, False, method="scan", bound=bound)
    log.debug("pell D=%d N=%d: bound %d above scan ceiling, using class representatives", D, N, bound)
    best = _least_in_orbits(D, _class_representatives(D, N), None, 1)
    if best is None:
        return PellWitness(D, N, False, method="lmm", bound=bound)
    return PellWitness(D, N, True, best[0], best[1], "lmm", bound)

def pell_brute_force(D: int, N: int, y_bound: int) -> PellWitness:
    if y_bound < 0:
        raise PellInputError(f"y_bound must be non-negative, got {y_bound}")
    for y in range(y_bound + 1):
        t = N + D * y * y
        if _is_square(t):
            return PellWitness(D, N, True, isqrt(t), y, "brute-force", y_bound)
    return PellWitness(D, N, False, method="brute-force", bound=y_bound)

def compare_with_oracle(D: int, N: int, bound: int) -> list[str]:
    solved = pell_solve(D, N)
    oracle = pell_brute_force(D, N, bound)
    problems = []
    if oracle.solvable and not solved.solvable:
        problems.append(f"D={D} N={N}: oracle found ({oracle.x},{oracle.y}) but solver says unsolvable")
    elif oracle.solvable and (solved.x, solved.y) != (oracle.x, oracle.y):
        problems.append(f"D={D} N={N}: solver ({solved.x},{solved.y}) != oracle ({oracle.x},{oracle.y})")
    elif solved.solvable and not oracle.solvable and solved.y <= bound:
        problems.append(f"D={D} N={N}: solver ({solved.x},{solved.y}) within bound {bound} missed by oracle")
    return problems

def _affine_filter(a: int, constraints: tuple[Constraint, ...]) -> tuple[Accept, int]:
    p_mod = 1
    if Constraint.P_ODD in constraints:
        p_mod *= 2
    if Constraint.P_DIV3 in constraints:
        p_mod *= 3
    modulus = a * p_mod
    if Constraint.Q_EVEN in constraints:
        modulus = lcm(modulus, 2)

    def accept(x: int, y: int) -> bool:
        if x % a:
            return False
        p = x // a
        if Constraint.P_ODD in constraints and p % 2 == 0:
            return False
        if Constraint.P_DIV3 in constraints and p % 3:
            return False
        if Constraint.Q_EVEN in constraints and y % 2:
            return False
        return True

    return accept, modulus

def _factor_pairs(D: int, N: int, accept: Accept) -> Point | None:
    # D = s²: (x − sy)(x + sy) = N has finitely many solutions
    s = isqrt(D)
    best = None
    for e in divisors(abs(N)):
        for lo in (int(e), -int(e)):
            hi = N // lo
            if (lo + hi) % 2 or (hi - lo) % (2 * s):
                continue
            x, y = abs((lo + hi) // 2), abs((hi - lo) // (2 * s))
            if accept(x, y) and (best is None or (y, x) < (best[1], best[0])):
                best = (x, y)
    return best

def solve_affine(
    a: int,
    b: int,
    c: int,
    constraints: Iterable[Constraint | str] = (),
    allow_square: bool = False,
) -> AffineWitness:
    """Least-|Q| solution of aP² − bQ² = c, through X = aP in X² − (ab)Q² = ac."""
    if a <= 0 or b <= 0:
        raise PellInputError(f"a and b must be positive, got a={a} b={b}")
    if c == 0:
        raise PellInputError("c must be nonzero")
    cons = tuple(Constraint(x) for x in constraints)
    names = tuple(x.value for x in cons)
    D, N = a * b, a * c
    accept, modulus = _affine_filter(a, cons)

    if _is_square(D):
        if not allow_square:
            raise PellInputError(f"ab = {D} is a perfect square")
        best = _factor_pairs(D, N, accept)
        method = "factor-pairs"
    else:
        best = _least_in_orbits(D, _class_representatives(D, N), accept, modulus)
        method = "lmm"

    if best is None:
        return AffineWitness(a, b, c, False, method=method, constraints=names)
    x, y = best
    p = x // a
    assert a * p * p - b * y * y == c
    return AffineWitness(a, b, c, True, p, y, method, names)
