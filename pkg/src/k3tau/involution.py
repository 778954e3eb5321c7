"""The involutions behind τ: g on Λ_cub, u on Zℓ_d ⊕ U4, and the glued g̃ on Λ̃_K3."""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from math import gcd
import numpy as np

from .discriminant import discriminant_group, glue_extends, induced_disc_map, multiplier_preserves_form
from .errors import GlueError, LatticeError
from .intmat import IntRows, IntegralSolver, as_rows, from_columns, identity, int_array
from .k3lattices import (
    check_tau_extended,
    cubic_lattice,
    extended_k3_lattice,
    hyperplane_class,
    k3_lattice,
    kd_basis,
    kd_complement,
    lattice_d,
    polarization_class,
    v_class,
)
from .lattice import (
    Isometry,
    Lattice,
    LatticeVector,
    conjugate,
    embedding_columns,
    orthogonal_complement,
    restrict,
    sublattice,
)
from .mukai import MukaiDecomposition, MukaiVector, decompose_mukai

log = logging.getLogger(__name__)

U_LABELS = ("e4", "l_d", "f4")

# (e4, ℓ_d, f4) -> (e2, m, −f2) with m = e3 − (d/2) f3; rows e2, f2, m
_PHI = ((1, 0, 0), (0, 0, -1), (0, 1, 0))

@dataclass(frozen=True)
class TauCertificate:
    d: int
    u_matrix: IntRows
    g_matrix: IntRows
    glued: Isometry
    v: MukaiVector
    L_tau: MukaiVector
    disc_multiplier: int

def u_lattice(d: int) -> Lattice:
    """Zℓ_d ⊕ U4 on the ordered basis (e4, ℓ_d, f4)."""
    return Lattice(((0, 0, 1), (0, d, 0), (1, 0, 0)), U_LABELS)

def u_matrix(d: int) -> IntRows:
    check_tau_extended(d)
    k, t = d // 6, d // 3
    columns = (
        (-k, -(k - 1) // 3, (k - 1) ** 2 // 3),
        (d, t - 1, -t * (k - 1)),
        (3, 1, -k),
    )
    return tuple(tuple(col[i] for col in columns) for i in range(3))

def build_u(d: int) -> Isometry:
    u = Isometry(u_lattice(d), u_matrix(d))
    if not u.is_involution():
        raise LatticeError(f"u is not an involution for d={d}")
    return u

def build_g() -> Isometry:
    """Identity on E8(−1)² ⊕ Z(−1)³, −id on U1 ⊕ U2."""
    lat = cubic_lattice()
    flipped = {lat.index_of(x) for x in ("e1", "f1", "e2", "f2")}
    diag = [-1 if i in flipped else 1 for i in range(lat.rank)]
    return Isometry(lat, tuple(tuple(diag[i] if i == j else 0 for j in range(lat.rank)) for i in range(lat.rank)))

def _nice_basis(ambient: Lattice, d: int) -> np.ndarray:
    """E8² ⊕ U1 basis vectors, then e2, f2 and e3 − (d/2) f3, as columns."""
    cols = [ambient.combination({x: 1}).coords for x in ambient.labels
            if x[0] in "ab" or x in ("e1", "f1", "e2", "f2")]
    cols.append(ambient.combination({"e3": 1, "f3": -(d // 2)}).coords)
    return from_columns(cols, ambient.rank)

def _transport(nice: np.ndarray, matrix: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Rewrite a matrix given on the columns of `nice` in terms of `basis` (same span)."""
    forward = IntegralSolver(basis).solve_columns(nice)
    back = IntegralSolver(nice).solve_columns(basis)
    if forward is None or back is None:
        raise GlueError("bases do not span the same lattice")
    return forward @ matrix @ back

def _substitute_matrix(d: int) -> np.ndarray:
    n = 21
    m = identity(n)
    phi = int_array(_PHI, 3)
    m[18:, 18:] = phi @ int_array(u_matrix(d), 3) @ phi.T
    return m

def _substitute(d: int, ambient: Lattice, comp: Lattice, embedding: IntRows) -> Isometry:
    basis = int_array(embedding, comp.rank)
    moved = _transport(_nice_basis(ambient, d), _substitute_matrix(d), basis)
    return Isometry(comp, as_rows(moved))

def substitute_on_lattice_d(d: int) -> Isometry:
    """Identity on E8(−1)² ⊕ U1 and u on U2 ⊕ Z(e3 − (d/2) f3), in the basis of lattice_d(d)."""
    check_tau_extended(d)
    comp, embedding = lattice_d(d)
    return _substitute(d, k3_lattice(), comp, embedding)

def sample_isometries_of_lattice_d(d: int) -> list[Isometry]:
    """A few elements of O(Λ_d): swaps and sign changes of the hyperbolic planes, and −id."""
    check_tau_extended(d)
    comp, embedding = lattice_d(d)
    basis = int_array(embedding, comp.rank)
    nice = _nice_basis(k3_lattice(), d)
    out = [Isometry.negation(comp)]
    # indices 16..19 are e1, f1, e2, f2 in the nice basis
    swap_ef = identity(21)
    swap_ef[16:18, 16:18] = int_array(((0, 1), (1, 0)), 2)
    minus_u1 = identity(21)
    minus_u1[16, 16] = minus_u1[17, 17] = -1
    swap_planes = identity(21)
    swap_planes[16:20, 16:20] = int_array(((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0)), 4)
    for m in (swap_ef, minus_u1, swap_planes):
        out.append(Isometry(comp, as_rows(_transport(nice, m, basis))))
    return out

def _u_sub_basis(d: int) -> list[LatticeVector]:
    amb = extended_k3_lattice()
    return [amb.combination({"e4": 1}), polarization_class(d, amb), amb.combination({"f4": 1})]

def _to_mukai(e4: int, l: int, f4: int, d: int) -> MukaiVector:
    # H⁰ = e4, H⁴ = −f4
    return MukaiVector(e4, l, -f4, d)

def _coefficients(glued: Isometry, image: LatticeVector, d: int) -> tuple[int, int, int]:
    """(e4, ℓ_d, f4) coefficients of a vector in the span of e4, ℓ_d, f4."""
    amb = glued.domain
    x = image.coords
    l = x[amb.index_of("e3")]
    rest = LatticeVector(x) - amb.combination({"e4": x[amb.index_of("e4")], "f4": x[amb.index_of("f4")]})
    if rest != polarization_class(d, amb).scaled(l):
        raise GlueError(f"g̃ moves U4 outside Zℓ_d ⊕ U4 for d={d}")
    return x[amb.index_of("e4")], l, x[amb.index_of("f4")]

def mukai_vector_of_tau(d: int, glued: Isometry | None = None) -> MukaiVector:
    """(3, L, d/6), read off as the image of f4 under g̃ (or u when g̃ is not given)."""
    check_tau_extended(d)
    if glued is None:
        e4, l, f4 = build_u(d).apply(LatticeVector((0, 0, 1))).coords
    else:
        amb = glued.domain
        e4, l, f4 = _coefficients(glued, glued.apply(amb.combination({"f4": 1})), d)
    v = _to_mukai(e4, l, f4, d)
    if v != MukaiVector(3, 1, d // 6, d):
        raise GlueError(f"g̃(f4) gives {v}, expected (3, L, {d // 6})")
    return v

def tau_polarization(d: int, glued: Isometry | None = None) -> MukaiVector:
    """L^τ = (d, (d/3 − 1)L, (d/3)(d/6 − 1)), the image of ℓ_d."""
    check_tau_extended(d)
    if glued is None:
        e4, l, f4 = build_u(d).apply(LatticeVector((0, 1, 0))).coords
    else:
        e4, l, f4 = _coefficients(glued, glued.apply(polarization_class(d, glued.domain)), d)
    L_tau = _to_mukai(e4, l, f4, d)
    v = MukaiVector(3, 1, d // 6, d)
    if v.pairing(L_tau) != 0:
        raise GlueError(f"(v, L^τ) = {v.pairing(L_tau)} for d={d}")
    if L_tau.square != d:
        raise GlueError(f"(L^τ, L^τ) = {L_tau.square}, expected {d}")
    return L_tau

def build_gtilde(d: int) -> TauCertificate:
    check_tau_extended(d)
    amb = extended_k3_lattice()
    sub_basis = _u_sub_basis(d)
    u = build_u(d)
    comp, embedding = orthogonal_complement(amb, sub_basis)
    s = _substitute(d, amb, comp, embedding)
    result = glue_extends(amb, sub_basis, u, s)
    if not result.extends or result.certificate is None:
        raise GlueError(f"u and the Λ_d isometry do not glue for d={d}")
    glued = result.certificate
    if not glued.is_involution():
        raise GlueError(f"glued isometry is not an involution for d={d}")
    if restrict(glued, sub_basis).matrix != u.matrix:
        raise GlueError(f"glued isometry does not restrict to u for d={d}")
    if restrict(glued, embedding_columns(embedding)).matrix != s.matrix:
        raise GlueError(f"glued isometry does not restrict to the Λ_d isometry for d={d}")
    multiplier = result.sub_map.multiplier
    log.debug("d=%d: glued over Z/%d with multiplier %s", d, d, multiplier)
    return TauCertificate(
        d=d,
        u_matrix=u.matrix,
        g_matrix=build_g().matrix,
        glued=glued,
        v=mukai_vector_of_tau(d, glued),
        L_tau=tau_polarization(d, glued),
        disc_multiplier=multiplier % d,
    )

@dataclass(frozen=True)
class TauReport:
    d: int
    kd_orders: tuple[int, ...]
    complement_rank: int
    complement_orders: tuple[int, ...]
    multiplier: int | None
    expected: int
    failures: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "kd_orders": list(self.kd_orders),
            "complement_rank": self.complement_rank,
            "complement_orders": list(self.complement_orders),
            "multiplier": self.multiplier,
            "expected": self.expected,
            "failures": list(self.failures),
        }

def verify_tau(d: int) -> TauReport:
    """Restrict g to K_d^⊥ ⊂ Λ_cub and check that it acts on Disc K_d^⊥ = Z/d by d/3 − 1."""
    check_tau_extended(d)
    g = build_g()
    failures = []
    h, v = kd_basis(d)
    if g.apply(h) != h:
        failures.append("g(h) != h")
    if g.apply(v) != -v:
        failures.append(f"g(v_d) != -v_d for v_d = e2 - {d // 6} f2")
    if not g.is_involution():
        failures.append("g∘g != id")

    kd = sublattice(cubic_lattice(), [h, v])
    kd_orders = discriminant_group(kd).orders
    comp, embedding = kd_complement(d)
    g_comp = restrict(g, embedding_columns(embedding), comp.labels)
    disc_map = induced_disc_map(comp, g_comp)
    orders = disc_map.source.orders
    expected = d // 3 - 1
    multiplier = disc_map.multiplier
    if comp.rank != 21:
        failures.append(f"rank K_d^⊥ = {comp.rank}, expected 21")
    if orders != (d,):
        failures.append(f"Disc K_d^⊥ = {list(orders)}, expected Z/{d}")
    if multiplier is None or (multiplier - expected) % d:
        failures.append(f"multiplier {multiplier} != d/3 - 1 = {expected} mod {d}")
    elif not disc_map.preserves_form():
        failures.append(f"multiplier {multiplier} does not preserve q on Disc K_d^⊥")
    if failures:
        log.warning("verify_tau d=%d: %s", d, "; ".join(failures))
    return TauReport(
        d=d,
        kd_orders=kd_orders,
        complement_rank=comp.rank,
        complement_orders=orders,
        multiplier=None if multiplier is None else multiplier % d,
        expected=expected,
        failures=tuple(failures),
    )

@dataclass(frozen=True)
class MultiplierCandidate:
    alpha: int
    unit: bool
    shape_ok: bool
    preserves_form: bool

    @property
    def accepted(self) -> bool:
        return self.unit and self.shape_ok and self.preserves_form

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "unit": self.unit,
            "shape_ok": self.shape_ok,
            "preserves_form": self.preserves_form,
            "accepted": self.accepted,
        }

def multiplier_candidates(d: int) -> list[MultiplierCandidate]:
    """α ∈ {−1, d/3 − 1, 2d/3 − 1}: only α = d/3 − 1 matches the action of g on K_d and keeps q.

    The shape check compares α with the multiplier g induces on Disc K_d
    (fix h/3, negate v_d/(d/3)); gluing forces the two actions to agree.
    """
    check_tau_extended(d)
    g_kd = restrict(build_g(), [hyperplane_class(), v_class(d)])
    beta = induced_disc_map(g_kd.domain, g_kd).multiplier
    if beta is None:
        raise LatticeError(f"Disc K_d is not cyclic for d={d}")
    disc = discriminant_group(kd_complement(d)[0])
    out = []
    for alpha in (-1, d // 3 - 1, 2 * d // 3 - 1):
        out.append(
            MultiplierCandidate(
                alpha=alpha,
                unit=gcd(alpha, d) == 1,
                shape_ok=(alpha - beta) % d == 0,
                preserves_form=multiplier_preserves_form(disc, alpha),
            )
        )
    return out

def conjugation_preserves_multiplier(d: int, f: Isometry) -> bool:
    s = substitute_on_lattice_d(d)
    if f.domain != s.domain:
        raise LatticeError("f must be an isometry of Λ_d in the basis of lattice_d(d)")
    lat = s.domain
    before = induced_disc_map(lat, s).multiplier
    after = induced_disc_map(lat, conjugate(s, f)).multiplier
    return before is not None and after is not None and (before - after) % d == 0

def tau_orbit(d: int) -> tuple[MukaiDecomposition, MukaiDecomposition, MukaiDecomposition]:
    """Decompositions of w0 = (1, L, d/2), u(w0) and u²(w0)."""
    u = build_u(d)
    point = LatticeVector((1, 1, -(d // 2)))
    out = []
    for _ in range(3):
        v = _to_mukai(*point.coords, d)
        if v.r < 0:
            v = -v
        out.append(decompose_mukai(v))
        point = u.apply(point)
    return tuple(out)
