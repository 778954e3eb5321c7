from __future__ import annotations
import logging
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterable
from sympy import isprime

from .conditions import cond_threestar, tau_extended
from .errors import InadmissibleDegreeError, MukaiVectorError
from .k3lattices import check_even, check_tau_extended
from .lattice import Lattice
from .mukai import MukaiDecomposition, MukaiVector, decompose_mukai, hilbert_point_vector
from .pell import Constraint, solve_affine

log = logging.getLogger(__name__)

SPECIAL_CASES = (
    "n3_prime",
    "n4_prime",
    "n5_equiv",
    "threestar_implies_F",
    "threestar_equiv_F",
    "threestar_prime",
)

__all__ = [
    "HilbVerdict",
    "MukaiDecomposition",
    "NSClass",
    "SpecialCaseReport",
    "UniqueModelVerdict",
    "classes_of_square",
    "decompose_mukai",
    "degree_six_class",
    "hilb2_unique_model",
    "hilb_birational",
    "moduli_iso",
    "ns_hilb2",
    "ns_hilbn",
    "special_case_checks",
]

@dataclass(frozen=True)
class NSClass:
    """aL + bδ in NS(Hilbⁿ(S)) = ZL ⊕ Zδ, with L² = d and δ² = −2(n − 1)."""

    a: int
    b: int
    d: int
    n: int = 2

    @property
    def square(self) -> int:
        return self.a * self.a * self.d - 2 * (self.n - 1) * self.b * self.b

    @property
    def div(self) -> int:
        return gcd(self.a * self.d, 2 * (self.n - 1) * self.b)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "square": self.square, "div": self.div}

def ns_hilbn(d: int, n: int) -> Lattice:
    check_even(d)
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    return Lattice(((d, 0), (0, -2 * (n - 1))), ("L", "delta"))

def ns_hilb2(d: int) -> Lattice:
    return ns_hilbn(d, 2)

def classes_of_square(
    d: int,
    target_square: int,
    a_bound: int,
    b_bound: int,
    div_filter: int | None = None,
    n: int = 2,
) -> list[NSClass]:
    """Every aL + bδ of the given square inside the box; a ≥ 0, and b ≥ 0 when a = 0."""
    if a_bound < 0 or b_bound < 0:
        raise ValueError(f"bounds must be non-negative, got a_bound={a_bound} b_bound={b_bound}")
    scale = 2 * (n - 1)
    out = []
    for a in range(a_bound + 1):
        rest = a * a * d - target_square
        if rest < 0 or rest % scale:
            continue
        b2 = rest // scale
        b = isqrt(b2)
        if b * b != b2 or b > b_bound:
            continue
        for sign in ((1,) if a == 0 or b == 0 else (1, -1)):
            cls = NSClass(a, sign * b, d, n)
            if div_filter is None or cls.div == div_filter:
                out.append(cls)
    return out

def moduli_iso(r: int, s: int, r2: int, s2: int) -> bool:
    """M(r, L, s) ≅ M(r2, L, s2) iff {r, s} = {r2, s2}."""
    if min(r, s, r2, s2) <= 0:
        raise MukaiVectorError(f"r and s must be positive, got ({r}, {s}) and ({r2}, {s2})")
    if r * s != r2 * s2:
        raise MukaiVectorError(f"degrees differ: 2·{r}·{s} vs 2·{r2}·{s2}")
    return sorted((r, s)) == sorted((r2, s2))

@dataclass(frozen=True)
class HilbVerdict:
    d: int
    n: int
    birational: bool
    equation: str | None = None
    p: int | None = None
    q: int | None = None
    sign: int | None = None
    excluded: tuple[str, ...] = field(default=())
    picard_rank_one: bool = True

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "birational": self.birational,
            "equation": self.equation,
            "p": self.p,
            "q": self.q,
            "picard_rank_one": self.picard_rank_one,
        }

def _excluded_mod3(a: int, b: int, c: int) -> bool:
    return all((a * p * p - b * q * q - c) % 3 for p in range(3) for q in range(3))

def _branches(d: int, n: int) -> list[tuple[str, int, int, int]]:
    """(name, a, b, c) for aP² − bQ² = c; F1 and F2 coincide when n = 2."""
    s = d // 6
    if n == 2:
        return [("F", 3, s, -1), ("F", 3, s, 1)]
    return [
        ("F1", 3 * (n - 1), s, -1),
        ("F2", 3, s * (n - 1), -1),
        ("F1", 3 * (n - 1), s, 1),
        ("F2", 3, s * (n - 1), 1),
    ]

def hilb_birational(d: int, n: int) -> HilbVerdict:
    """Hilbⁿ(S) ~ Hilbⁿ(S^τ) for S of Picard rank one, decided through F1 / F2 (F when n = 2)."""
    check_tau_extended(d)
    if d <= 6:
        raise InadmissibleDegreeError(f"d must exceed 6, got {d}")
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    excluded = []
    for name, a, b, c in _branches(d, n):
        label = f"{name}{'+' if c > 0 else '-'}"
        if _excluded_mod3(a, b, c):
            excluded.append(label)
            continue
        w = solve_affine(a, b, c, allow_square=True)
        log.debug("d=%d n=%d %s: %dP² − %dQ² = %d -> %s", d, n, label, a, b, c, w.to_dict())
        if w.solvable:
            return HilbVerdict(d, n, True, name, w.p, w.q, c, tuple(excluded))
    return HilbVerdict(d, n, False, excluded=tuple(excluded))

def degree_six_class(d: int) -> NSClass | None:
    """The class (q, 3p) of square 6 coming from a solution of F, if F is solvable."""
    verdict = hilb_birational(d, 2)
    if not verdict.birational:
        return None
    cls = NSClass(verdict.q, 3 * verdict.p, d)
    assert cls.square == 6
    return cls

@dataclass(frozen=True)
class UniqueModelVerdict:
    d: int
    unique: bool | None
    certificate: str
    candidates: tuple[NSClass, ...] = field(default=())
    bound: int = 0

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "unique": self.unique,
            "certificate": self.certificate,
            "candidates": [c.to_dict() for c in self.candidates],
            "bound": self.bound,
        }

def hilb2_unique_model(d: int, bound: int = 100) -> UniqueModelVerdict:
    """Square −10, divisibility 2 classes decide whether Hilb²(S) has a second birational model.

    For 3 | d they cannot exist (b² ≡ 2 mod 3); otherwise only a bounded search is
    reported and no verdict is drawn.
    """
    check_even(d)
    if d <= 6:
        raise InadmissibleDegreeError(f"d must exceed 6, got {d}")
    found = classes_of_square(d, -10, bound, bound, div_filter=2)
    if d % 3 == 0:
        if found:
            raise RuntimeError(f"d={d}: square −10 classes {found} contradict the mod-3 obstruction")
        return UniqueModelVerdict(d, True, "mod-3", bound=bound)
    if found:
        return UniqueModelVerdict(d, None, "wall-candidate", tuple(found), bound)
    # square −10 classes of any divisibility are still worth reporting
    any_div = classes_of_square(d, -10, bound, bound)
    return UniqueModelVerdict(d, None, "no-candidate-in-bounds", tuple(any_div), bound)

@dataclass(frozen=True)
class SpecialCaseReport:
    kind: str
    checked: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

def _prime_quotient(d: int) -> int | None:
    m = d // 6
    return m if d % 6 == 0 and isprime(m) else None

def _check_case(kind: str, d: int) -> str | None:
    """None when the claim holds (or does not apply); the violated statement otherwise."""
    if kind == "n3_prime":
        m = _prime_quotient(d)
        if m is None or m % 8 not in (5, 7):
            return None
        return None if hilb_birational(d, 3).birational else f"d={d}: m={m} ≡ {m % 8} mod 8 but Hilb³ not birational"
    if kind == "n4_prime":
        m = _prime_quotient(d)
        if m is None or m % 4 != 1:
            return None
        v = hilb_birational(d, 4)
        if not v.birational or v.equation != "F1":
            return f"d={d}: m={m} ≡ 1 mod 4 but Hilb⁴ verdict is {v.to_dict()}"
        return None
    if kind == "n5_equiv":
        two, five = hilb_birational(d, 2).birational, hilb_birational(d, 5).birational
        return None if two == five else f"d={d}: n=2 gives {two}, n=5 gives {five}"
    if kind == "threestar_implies_F":
        if not cond_threestar(d)[0]:
            return None
        return None if hilb_birational(d, 2).birational else f"d={d}: (***) holds but F is unsolvable"
    if kind in ("threestar_equiv_F", "threestar_prime"):
        w = solve_affine(3, d // 6, -1, (Constraint.P_ODD, Constraint.Q_EVEN), allow_square=True)
        if kind == "threestar_equiv_F":
            threestar = cond_threestar(d)[0]
            if threestar != w.solvable:
                return f"d={d}: (***) is {threestar} but F with p odd, q even is {w.solvable}"
            return None
        m = _prime_quotient(d)
        if m is None or m % 4 != 3:
            return None
        return None if w.solvable else f"d={d}: m={m} ≡ 3 mod 4 but F has no solution with p odd, q even"
    raise ValueError(f"unknown special case {kind!r}; expected one of {', '.join(SPECIAL_CASES)}")

def special_case_checks(d_range: Iterable[int], kind: str) -> SpecialCaseReport:
    if kind not in SPECIAL_CASES:
        raise ValueError(f"unknown special case {kind!r}; expected one of {', '.join(SPECIAL_CASES)}")
    checked = 0
    failures = []
    for d in d_range:
        if d <= 6 or not tau_extended(d):
            continue
        checked += 1
        problem = _check_case(kind, d)
        if problem:
            failures.append(problem)
    log.info("special case %s: %d degrees checked, %d failures", kind, checked, len(failures))
    for problem in failures[:5]:
        log.warning("special case %s: %s", kind, problem)
    return SpecialCaseReport(kind, checked, tuple(failures))

def hilbert_vector_pairing(v: MukaiVector, n: int) -> int:
    """((1, 0, 1 − n), v) = v.r(n − 1) − v.s; ±1 for a birational witness."""
    return v.pairing(hilbert_point_vector(n, v.d))
