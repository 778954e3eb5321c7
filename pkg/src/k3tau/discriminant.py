"""Discriminant groups, induced maps and the gluing criterion."""
from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence
import numpy as np

from .errors import GlueError, LatticeError, NotAnIsometryError, NotUnimodularError
from .intmat import (
    IntRows,
    IntegralSolver,
    as_rows,
    from_columns,
    int_array,
    integralize,
    is_integral,
    rational_inverse,
    smith_normal_form,
)
from .lattice import Isometry, Lattice, LatticeVector, orthogonal_complement, sublattice

log = logging.getLogger(__name__)

RationalVector = tuple[Fraction, ...]

def _form(gram: IntRows, x: Sequence, y: Sequence) -> Fraction:
    n = len(gram)
    return sum((Fraction(x[i]) * gram[i][j] * Fraction(y[j]) for i in range(n) for j in range(n)
                if x[i] and y[j]), Fraction(0))

@dataclass(frozen=True)
class DiscriminantGroup:
    """Λ∨/Λ as Z/d1 ⊕ ... ⊕ Z/dk with d1 | d2 | ..., each di > 1.

    generators are dual vectors in lattice coordinates; coordinate_rows turn any
    dual vector y into generator coefficients via rows · y.
    """

    lattice: Lattice
    orders: tuple[int, ...]
    generators: tuple[RationalVector, ...]
    qvalues: tuple[Fraction, ...]
    bvalues: tuple[tuple[Fraction, ...], ...]
    coordinate_rows: IntRows

    @property
    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return not self.orders

    def is_cyclic(self) -> bool:
        return len(self.orders) <= 1

    def coordinates(self, y: Sequence) -> tuple[int, ...]:
        out = []
        for row, d in zip(self.coordinate_rows, self.orders):
            c = sum((row[k] * Fraction(y[k]) for k in range(len(row)) if row[k]), Fraction(0))
            if c.denominator != 1:
                raise LatticeError(f"vector {list(y)} is not in the dual lattice")
            out.append(int(c) % d)
        return tuple(out)

    def element(self, coords: Sequence[int]) -> RationalVector:
        n = self.lattice.rank
        out = [Fraction(0)] * n
        for c, g in zip(coords, self.generators):
            for k in range(n):
                out[k] += c * g[k]
        return tuple(out)

    def q(self, y: Sequence) -> Fraction:
        # mod 2 is well defined on classes only for even lattices; odd ones reduce mod 1
        value = _form(self.lattice.gram, y, y)
        return value % 2 if self.lattice.is_even() else value % 1

    def b(self, y: Sequence, z: Sequence) -> Fraction:
        return _form(self.lattice.gram, y, z) % 1

def discriminant_group(lattice: Lattice) -> DiscriminantGroup:
    n = lattice.rank
    snf = smith_normal_form(lattice.gram, n)
    left = int_array(snf.left, n)
    right = int_array(snf.right, n)
    nontrivial = [i for i, d in enumerate(snf.diagonal) if d > 1]
    orders = tuple(snf.diagonal[i] for i in nontrivial)
    generators = tuple(
        tuple(Fraction(int(right[k, i]), snf.diagonal[i]) for k in range(n)) for i in nontrivial
    )
    rows = left @ lattice.matrix
    coordinate_rows = tuple(tuple(int(x) for x in rows[i]) for i in nontrivial)
    qvalues = tuple(_form(lattice.gram, x, x) % 2 for x in generators)
    bvalues = tuple(tuple(_form(lattice.gram, x, y) % 1 for y in generators) for x in generators)
    log.debug("discriminant of rank %d lattice: %s", n, list(orders))
    return DiscriminantGroup(
        lattice=lattice,
        orders=orders,
        generators=generators,
        qvalues=qvalues,
        bvalues=bvalues,
        coordinate_rows=coordinate_rows,
    )

@dataclass(frozen=True)
class DiscMap:
    """Column j holds the coordinates of the image of generator j."""

    source: DiscriminantGroup
    target: DiscriminantGroup
    matrix: IntRows

    @property
    def multiplier(self) -> int | None:
        if len(self.source.orders) == 1 and self.source == self.target:
            return self.matrix[0][0]
        return None

    def image(self, j: int) -> RationalVector:
        return self.target.element([row[j] for row in self.matrix])

    def compose(self, other: DiscMap) -> DiscMap:
        """self after other."""
        if other.target != self.source:
            raise LatticeError("discriminant maps do not compose")
        r = len(self.target.orders)
        inner = len(self.source.orders)
        cols = len(other.source.orders)
        matrix = tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(inner)) % self.target.orders[i]
                  for j in range(cols))
            for i in range(r)
        )
        return DiscMap(other.source, self.target, matrix)

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            self.matrix[i][j] % self.source.orders[i] == int(i == j)
            for i in range(len(self.matrix)) for j in range(len(self.matrix))
        )

    def preserves_form(self) -> bool:
        src = self.source
        images = [self.image(j) for j in range(len(src.orders))]
        for j, x in enumerate(src.generators):
            if self.target.q(images[j]) != src.q(x):
                return False
            for i, y in enumerate(src.generators):
                if self.target.b(images[i], images[j]) != src.b(y, x):
                    return False
        return True

def induced_disc_map(lattice: Lattice, g: Isometry) -> DiscMap:
    if g.domain.gram != lattice.gram:
        raise NotAnIsometryError("isometry acts on a different lattice")
    disc = discriminant_group(lattice)
    cols = []
    for x in disc.generators:
        image = g.array @ np.array(x, dtype=object)
        cols.append(disc.coordinates(tuple(image)))
    r = len(disc.orders)
    matrix = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
    return DiscMap(disc, disc, matrix)

def multiplier_preserves_form(disc: DiscriminantGroup, alpha: int) -> bool:
    """Does x ↦ αx preserve the quadratic form of a cyclic group?"""
    if not disc.is_cyclic():
        raise LatticeError("multipliers are defined on cyclic groups only")
    if disc.is_trivial():
        return True
    x = disc.generators[0]
    return disc.q(tuple(alpha * c for c in x)) == disc.q(x)

@dataclass(frozen=True)
class GlueResult:
    extends: bool
    gamma: IntRows
    sub_map: DiscMap
    complement_map: DiscMap
    certificate: Isometry | None

def _natural_isomorphism(
    inverse: np.ndarray, k1: int, disc1: DiscriminantGroup, disc2: DiscriminantGroup
) -> IntRows:
    """Disc Λ1 → Disc Λ2 read off from the glue vectors (columns of C⁻¹)."""
    if disc1.orders != disc2.orders:
        raise GlueError(f"discriminant groups differ: {list(disc1.orders)} vs {list(disc2.orders)}")
    r = len(disc1.orders)
    if r == 0:
        return ()
    n = inverse.shape[0]
    c1 = [disc1.coordinates(tuple(inverse[:k1, k])) for k in range(n)]
    c2 = [disc2.coordinates(tuple(inverse[k1:, k])) for k in range(n)]
    system = [list(c1[k][i] for k in range(n)) + [disc1.orders[i] * int(i == j) for j in range(r)]
              for i in range(r)]
    solver = IntegralSolver(system, n + r)
    columns = []
    for j in range(r):
        lam = solver.solve([int(i == j) for i in range(r)])
        if lam is None:
            raise GlueError(f"generator {j} is not hit by any glue vector")
        columns.append([sum(int(lam[k]) * c2[k][i] for k in range(n)) % disc2.orders[i] for i in range(r)])
    return tuple(tuple(columns[j][i] for j in range(r)) for i in range(r))

def _intertwines(gamma: IntRows, m1: DiscMap, m2: DiscMap, orders: tuple[int, ...]) -> bool:
    r = len(orders)
    for j in range(r):
        for i in range(r):
            lhs = sum(gamma[i][l] * m1.matrix[l][j] for l in range(r))
            rhs = sum(m2.matrix[i][l] * gamma[l][j] for l in range(r))
            if (lhs - rhs) % orders[i]:
                return False
    return True

def glue_extends(
    ambient: Lattice, sub_basis: Sequence[LatticeVector], g1: Isometry, g2: Isometry
) -> GlueResult:
    """Does g1 ⊕ g2 extend from sublattice ⊕ complement to the unimodular ambient lattice?"""
    if not ambient.is_unimodular():
        raise NotUnimodularError(f"ambient determinant is {ambient.determinant}, not ±1")
    sub = sublattice(ambient, sub_basis)
    comp, embedding = orthogonal_complement(ambient, sub_basis)
    if g1.domain.gram != sub.gram:
        raise LatticeError("g1 does not act on the given sublattice")
    if g2.domain.gram != comp.gram:
        raise LatticeError("g2 does not act on the orthogonal complement basis")

    m1 = induced_disc_map(g1.domain, g1)
    m2 = induced_disc_map(g2.domain, g2)
    b1 = from_columns([v.coords for v in sub_basis], ambient.rank)
    c = np.hstack([b1, int_array(embedding, comp.rank)])
    inverse = rational_inverse(as_rows(c))
    gamma = _natural_isomorphism(inverse, sub.rank, m1.source, m2.source)
    extends = _intertwines(gamma, m1, m2, m2.source.orders)

    k1 = sub.rank
    block = np.zeros((ambient.rank, ambient.rank), dtype=object)
    block[:k1, :k1] = g1.array
    block[k1:, k1:] = g2.array
    glued = c @ block @ inverse
    if is_integral(glued) != extends:
        raise GlueError("discriminant comparison and direct extension disagree")
    certificate = Isometry(ambient, as_rows(integralize(glued))) if extends else None
    log.debug("glue over discriminant %s: extends=%s", list(m1.source.orders), extends)
    return GlueResult(
        extends=extends,
        gamma=gamma,
        sub_map=m1,
        complement_map=m2,
        certificate=certificate,
    )
