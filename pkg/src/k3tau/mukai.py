"""Mukai vectors (r, cL, s) over a K3 surface with Picard lattice ZL, L² = d."""
from __future__ import annotations
from dataclasses import dataclass
from math import gcd
from sympy.core.intfunc import igcdex

from .errors import MukaiVectorError

@dataclass(frozen=True)
class MukaiVector:
    r: int
    c: int
    s: int
    d: int

    def pairing(self, other: MukaiVector) -> int:
        if other.d != self.d:
            raise MukaiVectorError(f"degrees differ: {self.d} vs {other.d}")
        return self.c * other.c * self.d - self.r * other.s - other.r * self.s

    @property
    def square(self) -> int:
        return self.pairing(self)

    def is_primitive(self) -> bool:
        return gcd(self.r, self.c, self.s) == 1

    def is_isotropic(self) -> bool:
        return self.square == 0

    def __neg__(self) -> MukaiVector:
        return MukaiVector(-self.r, -self.c, -self.s, self.d)

    def to_dict(self) -> dict:
        return {"r": self.r, "c": self.c, "s": self.s, "d": self.d}

    def __str__(self) -> str:
        return f"({self.r}, {self.c}L, {self.s})"

def hilbert_point_vector(n: int, d: int) -> MukaiVector:
    """(1, 0, 1 − n): ideal sheaves of n points, square 2n − 2."""
    if n < 1:
        raise MukaiVectorError(f"n must be positive, got {n}")
    return MukaiVector(1, 0, 1 - n, d)

def twisted(v: MukaiVector, k: int = 1) -> MukaiVector:
    """v · exp(kL); preserves the pairing."""
    return MukaiVector(v.r, v.c + k * v.r, v.s + k * v.c * v.d + k * k * v.r * v.d // 2, v.d)

def fine_moduli_witness(v: MukaiVector) -> MukaiVector | None:
    """An algebraic w = (x0, aL, x4) with (v, w) = 1, or None when no such class exists.

    (v, w) = c·d·a − r·x4 − s·x0; if gcd(r, s) = 1 the witness has a = 0 and the
    least positive x0 (x0 = 0 only for r = 1).
    """
    if not v.is_primitive():
        raise MukaiVectorError(f"{v} is not primitive")
    r, s, cd = v.r, v.s, v.c * v.d
    g = gcd(r, s)
    if gcd(g, cd) != 1:
        return None
    if g == 1:
        # −r·x4 − s·x0 = 1, normalised to 0 ≤ x0 < |r|
        alpha, beta, _ = igcdex(r, s)
        x4, x0 = -int(alpha), -int(beta)
        if r:
            t = x0 // abs(r) if r > 0 else -(x0 // abs(r))
            x0, x4 = x0 - t * r, x4 + t * s
        w = MukaiVector(x0, 0, x4, v.d)
    else:
        # r·alpha + s·beta = g, then c·d·a − g·k = 1
        alpha, beta, _ = igcdex(r, s)
        a, k, _ = igcdex(cd, -g)
        w = MukaiVector(int(k) * int(beta), int(a), int(k) * int(alpha), v.d)
    assert v.pairing(w) == 1
    return w

@dataclass(frozen=True)
class MukaiDecomposition:
    """v = (p²r, pqL, q²s) with p, q ≥ 1."""

    p: int
    q: int
    r: int
    s: int
    gcd_ok: bool

    @property
    def moduli_pair(self) -> tuple[int, int]:
        return tuple(sorted((self.r, self.s)))

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r, "s": self.s, "gcd_ok": self.gcd_ok}

def decompose_mukai(v: MukaiVector) -> MukaiDecomposition:
    """p = gcd(r, c), q = gcd(s, c); the sign of c is absorbed into the orientation of L."""
    if not v.is_primitive():
        raise MukaiVectorError(f"{v} is not primitive")
    if not v.is_isotropic():
        raise MukaiVectorError(f"{v} is not isotropic: (v, v) = {v.square}")
    if v.r <= 0:
        raise MukaiVectorError(f"{v} needs positive rank")
    if v.c == 0:
        raise MukaiVectorError(f"{v} needs a nonzero L-coefficient")
    c = abs(v.c)
    p, q = gcd(v.r, c), gcd(v.s, c)
    if v.r % (p * p) or v.s % (q * q) or p * q != c:
        raise MukaiVectorError(f"{v} has no decomposition with p={p}, q={q}")
    r, s = v.r // (p * p), v.s // (q * q)
    assert 2 * r * s == v.d
    return MukaiDecomposition(p=p, q=q, r=r, s=s, gcd_ok=gcd(p * r, q * s) == 1)
