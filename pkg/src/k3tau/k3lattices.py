"""The named lattices and classes: Λ_K3, Λ̃_K3, Λ_Muk, Λ_cub, Λ_cub⁰ and friends.

Basis labels: a1..a8 / b1..b8 for the two E8(−1) blocks, ei, fi for the
hyperbolic plane Ui, z1..z3 for the three Z(−1) summands of Λ_cub.
"""
from __future__ import annotations
from functools import lru_cache

from .errors import InadmissibleDegreeError
from .intmat import IntRows
from .lattice import (
    Lattice,
    LatticeVector,
    direct_sum,
    orthogonal_complement,
    relabel,
    standard_lattice,
    suffixed,
    twist,
)

def _e8_blocks() -> list[Lattice]:
    e8 = standard_lattice("E8_neg")
    return [e8, relabel(e8, (f"b{i}" for i in range(1, 9)))]

def _u(i: int) -> Lattice:
    return suffixed(standard_lattice("U"), str(i))

@lru_cache(maxsize=None)
def k3_lattice() -> Lattice:
    return direct_sum([*_e8_blocks(), _u(1), _u(2), _u(3)])

@lru_cache(maxsize=None)
def extended_k3_lattice() -> Lattice:
    return direct_sum([k3_lattice(), _u(4)])

@lru_cache(maxsize=None)
def mukai_lattice() -> Lattice:
    """Λ_K3 ⊕ U4(−1): basis e4 is H⁰, −f4 is H⁴."""
    return direct_sum([k3_lattice(), twist(_u(4), -1)])

@lru_cache(maxsize=None)
def cubic_lattice() -> Lattice:
    ones = [relabel(standard_lattice("rank1", -1), (f"z{i}",)) for i in range(1, 4)]
    return direct_sum([*_e8_blocks(), _u(1), _u(2), *ones])

def check_even(d: int) -> None:
    if d <= 0 or d % 2:
        raise InadmissibleDegreeError(f"d must be a positive even integer, got {d}")

def check_tau_extended(d: int) -> None:
    if d <= 0 or d % 6:
        raise InadmissibleDegreeError(f"d={d} fails d ≡ 0 mod 6")
    if (d // 6) % 3 != 1:
        raise InadmissibleDegreeError(f"d={d} fails d/6 ≡ 1 mod 3 (d/6 ≡ {(d // 6) % 3})")

def polarization_class(d: int, lattice: Lattice | None = None) -> LatticeVector:
    """ℓ_d = e3 + (d/2) f3."""
    check_even(d)
    lattice = lattice or k3_lattice()
    return lattice.combination({"e3": 1, "f3": d // 2})

def hyperplane_class() -> LatticeVector:
    """h = z1 + z2 + z3, of square −3."""
    return cubic_lattice().combination({"z1": 1, "z2": 1, "z3": 1})

def v_class(d: int) -> LatticeVector:
    """v_d = e2 − (d/6) f2, of square −d/3."""
    if d <= 0 or d % 6:
        raise InadmissibleDegreeError(f"v_d needs d ≡ 0 mod 6, got {d}")
    return cubic_lattice().combination({"e2": 1, "f2": -(d // 6)})

def kd_basis(d: int) -> list[LatticeVector]:
    return [hyperplane_class(), v_class(d)]

@lru_cache(maxsize=None)
def primitive_cubic_lattice() -> tuple[Lattice, IntRows]:
    """Λ_cub⁰ = h^⊥ ⊂ Λ_cub."""
    return orthogonal_complement(cubic_lattice(), [hyperplane_class()])

@lru_cache(maxsize=None)
def kd_complement(d: int) -> tuple[Lattice, IntRows]:
    """K_d^⊥ ⊂ Λ_cub for K_d = Zh ⊕ Zv_d."""
    return orthogonal_complement(cubic_lattice(), kd_basis(d))

@lru_cache(maxsize=None)
def lattice_d(d: int) -> tuple[Lattice, IntRows]:
    """Λ_d = ℓ_d^⊥ ⊂ Λ_K3."""
    return orthogonal_complement(k3_lattice(), [polarization_class(d)])

def a2_embedding() -> tuple[LatticeVector, LatticeVector]:
    """λ1 = e3 + f3, λ2 = e4 + f4 − e3 in Λ̃_K3, spanning a copy of A2."""
    lat = extended_k3_lattice()
    return (
        lat.combination({"e3": 1, "f3": 1}),
        lat.combination({"e4": 1, "f4": 1, "e3": -1}),
    )

@lru_cache(maxsize=None)
def a2_complement() -> tuple[Lattice, IntRows]:
    return orthogonal_complement(extended_k3_lattice(), list(a2_embedding()))
