from __future__ import annotations
import logging
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping, Sequence
import numpy as np
from sympy import Matrix

from .errors import (
    DegenerateLatticeError,
    DependentVectorsError,
    DimensionMismatchError,
    LatticeError,
    NotAnIsometryError,
    NotPrimitiveError,
)
from .intmat import (
    IntRows,
    IntegralSolver,
    as_rows,
    columns_of,
    determinant,
    from_columns,
    hermite_columns,
    int_array,
    integer_kernel,
    integralize,
    rational_inverse,
    smith_normal_form,
)

log = logging.getLogger(__name__)

# E8 Dynkin diagram: chain 1-2-3-4-5-6-7 with node 8 attached to node 5
_E8_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7))

@dataclass(frozen=True)
class LatticeVector:
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: LatticeVector) -> LatticeVector:
        _same_length(self, other)
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: LatticeVector) -> LatticeVector:
        _same_length(self, other)
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> LatticeVector:
        return LatticeVector(tuple(-a for a in self.coords))

    def scaled(self, k: int) -> LatticeVector:
        return LatticeVector(tuple(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

def _same_length(x: LatticeVector, y: LatticeVector) -> None:
    if len(x) != len(y):
        raise DimensionMismatchError(f"vector lengths differ: {len(x)} vs {len(y)}")

@dataclass(frozen=True)
class Lattice:
    """Free Z-module with a nondegenerate integral symmetric form."""

    gram: IntRows
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        rank = len(self.gram)
        gram = as_rows(int_array(self.gram, rank))
        for i in range(rank):
            for j in range(i + 1, rank):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(f"Gram matrix is not symmetric at ({i}, {j})")
        labels = tuple(self.labels) if self.labels else tuple(f"b{i}" for i in range(rank))
        if len(labels) != rank:
            raise LatticeError(f"{len(labels)} labels for a rank {rank} lattice")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels", labels)
        if self.determinant == 0:
            raise DegenerateLatticeError(f"degenerate Gram matrix of rank {rank}")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def determinant(self) -> int:
        return determinant(self.gram)

    @cached_property
    def matrix(self) -> np.ndarray:
        return int_array(self.gram, self.rank)

    def is_unimodular(self) -> bool:
        return abs(self.determinant) == 1

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LatticeError(f"no basis vector labelled {label!r}") from None

    def vector(self, coords: Sequence[int]) -> LatticeVector:
        if len(coords) != self.rank:
            raise DimensionMismatchError(f"{len(coords)} coordinates for a rank {self.rank} lattice")
        return LatticeVector(tuple(coords))

    def combination(self, coefficients: Mapping[str, int]) -> LatticeVector:
        coords = [0] * self.rank
        for label, k in coefficients.items():
            coords[self.index_of(label)] += k
        return LatticeVector(tuple(coords))

def standard_lattice(name: str, n: int | None = None) -> Lattice:
    if name == "U":
        return Lattice(((0, 1), (1, 0)), ("e", "f"))
    if name == "E8_neg":
        gram = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
        for i, j in _E8_EDGES:
            gram[i][j] = gram[j][i] = 1
        return Lattice(as_rows(gram), tuple(f"a{i}" for i in range(1, 9)))
    if name == "A2":
        return Lattice(((2, -1), (-1, 2)), ("l1", "l2"))
    if name == "A2_neg":
        return twist(standard_lattice("A2"), -1)
    if name == "rank1":
        if n is None or n == 0:
            raise DegenerateLatticeError(f"rank1 needs a nonzero square, got {n}")
        return Lattice(((n,),), ("x",))
    raise ValueError(f"unknown standard lattice {name!r}")

def direct_sum(parts: Sequence[Lattice]) -> Lattice:
    rank = sum(p.rank for p in parts)
    gram = [[0] * rank for _ in range(rank)]
    labels: list[str] = []
    offset = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                gram[offset + i][offset + j] = p.gram[i][j]
        labels.extend(p.labels)
        offset += p.rank
    return Lattice(as_rows(gram), tuple(labels))

def twist(lattice: Lattice, n: int) -> Lattice:
    if n == 0:
        raise DegenerateLatticeError("twisting by 0 gives a degenerate form")
    return Lattice(tuple(tuple(n * x for x in row) for row in lattice.gram), lattice.labels)

def relabel(lattice: Lattice, labels: Iterable[str]) -> Lattice:
    return Lattice(lattice.gram, tuple(labels))

def suffixed(lattice: Lattice, suffix: str) -> Lattice:
    return relabel(lattice, (f"{label}{suffix}" for label in lattice.labels))

def pairing(lattice: Lattice, x: LatticeVector, y: LatticeVector) -> int:
    if len(x) != lattice.rank or len(y) != lattice.rank:
        raise DimensionMismatchError(
            f"vectors of length {len(x)}, {len(y)} on a rank {lattice.rank} lattice"
        )
    g = lattice.gram
    return sum(x.coords[i] * g[i][j] * y.coords[j] for i in range(lattice.rank) for j in range(lattice.rank)
               if x.coords[i] and y.coords[j])

def is_isometry(lattice: Lattice, matrix: IntRows | Sequence[Sequence[int]]) -> bool:
    if len(matrix) != lattice.rank or any(len(row) != lattice.rank for row in matrix):
        raise DimensionMismatchError(f"matrix is not {lattice.rank}x{lattice.rank}")
    m = int_array(matrix, lattice.rank)
    g = lattice.matrix
    if not np.array_equal(m.T @ g @ m, g):
        return False
    return abs(determinant(m)) == 1

@dataclass(frozen=True)
class Isometry:
    """Form-preserving automorphism; column j is the image of basis vector j."""

    domain: Lattice
    matrix: IntRows

    def __post_init__(self):
        matrix = as_rows(int_array(self.matrix, self.domain.rank))
        object.__setattr__(self, "matrix", matrix)
        if not is_isometry(self.domain, matrix):
            raise NotAnIsometryError(f"matrix does not preserve the rank {self.domain.rank} form")

    @classmethod
    def identity(cls, lattice: Lattice) -> Isometry:
        return cls(lattice, tuple(tuple(int(i == j) for j in range(lattice.rank)) for i in range(lattice.rank)))

    @classmethod
    def negation(cls, lattice: Lattice) -> Isometry:
        return cls(lattice, tuple(tuple(-int(i == j) for j in range(lattice.rank)) for i in range(lattice.rank)))

    @cached_property
    def array(self) -> np.ndarray:
        return int_array(self.matrix, self.domain.rank)

    def apply(self, v: LatticeVector) -> LatticeVector:
        if len(v) != self.domain.rank:
            raise DimensionMismatchError(f"vector of length {len(v)} on a rank {self.domain.rank} lattice")
        return LatticeVector(tuple(self.array @ np.array(v.coords, dtype=object)))

    def compose(self, other: Isometry) -> Isometry:
        """self after other."""
        if other.domain != self.domain:
            raise DimensionMismatchError("isometries act on different lattices")
        return Isometry(self.domain, as_rows(self.array @ other.array))

    def inverse(self) -> Isometry:
        return Isometry(self.domain, as_rows(integralize(rational_inverse(self.matrix))))

    def is_involution(self) -> bool:
        return self.compose(self) == Isometry.identity(self.domain)

def _family(lattice: Lattice, vectors: Sequence[LatticeVector]) -> np.ndarray:
    for v in vectors:
        if len(v) != lattice.rank:
            raise DimensionMismatchError(f"vector of length {len(v)} in a rank {lattice.rank} lattice")
    return from_columns([v.coords for v in vectors], lattice.rank)

def _check_primitive(lattice: Lattice, vectors: Sequence[LatticeVector]) -> np.ndarray:
    s = _family(lattice, vectors)
    if not vectors:
        return s
    snf = smith_normal_form(s)
    if snf.rank < len(vectors):
        raise DependentVectorsError(f"{len(vectors)} vectors span only rank {snf.rank}")
    if any(x != 1 for x in snf.invariant_factors):
        raise NotPrimitiveError(
            f"span is not primitive: elementary divisors {list(snf.invariant_factors)}"
        )
    return s

def is_primitive(lattice: Lattice, vectors: Sequence[LatticeVector]) -> bool:
    try:
        _check_primitive(lattice, vectors)
    except (DependentVectorsError, NotPrimitiveError):
        return False
    return True

def sublattice(lattice: Lattice, vectors: Sequence[LatticeVector], labels: Sequence[str] = ()) -> Lattice:
    s = _check_primitive(lattice, vectors)
    return Lattice(as_rows(s.T @ lattice.matrix @ s), tuple(labels))

def saturate(lattice: Lattice, vectors: Sequence[LatticeVector]) -> list[LatticeVector]:
    """Hermite basis of (rational span of vectors) ∩ lattice."""
    n = lattice.rank
    s = _family(lattice, vectors)
    if s.shape[1] == 0:
        return []
    normals = integer_kernel(s.T, n)
    sat = integer_kernel(normals.T, n)
    return [LatticeVector(c) for c in columns_of(hermite_columns(sat))]

def orthogonal_complement(lattice: Lattice, sub: Sequence[LatticeVector]) -> tuple[Lattice, IntRows]:
    """Complement of a primitive family, with its embedding (basis as columns)."""
    n = lattice.rank
    s = _check_primitive(lattice, sub)
    basis = hermite_columns(integer_kernel(s.T @ lattice.matrix, n))
    gram = as_rows(basis.T @ lattice.matrix @ basis)
    if determinant(gram) == 0:
        raise DegenerateLatticeError(
            f"orthogonal complement of rank {basis.shape[1]} is degenerate"
        )
    log.debug("complement of %d vectors in rank %d: rank %d", len(sub), n, basis.shape[1])
    labels = tuple(f"w{i}" for i in range(1, basis.shape[1] + 1))
    return Lattice(gram, labels), as_rows(basis)

def embedding_columns(embedding: IntRows) -> list[LatticeVector]:
    return [LatticeVector(c) for c in columns_of(int_array(embedding))]

def divisibility(lattice: Lattice, x: LatticeVector) -> int:
    if len(x) != lattice.rank:
        raise DimensionMismatchError(f"vector of length {len(x)} in a rank {lattice.rank} lattice")
    if x.is_zero():
        raise LatticeError("divisibility of the zero vector is undefined")
    values = lattice.matrix @ np.array(x.coords, dtype=object)
    return gcd(*(int(v) for v in values))

def restrict(g: Isometry, basis: Sequence[LatticeVector], labels: Sequence[str] = ()) -> Isometry:
    """Matrix of g on the primitive sublattice spanned by basis."""
    sub = sublattice(g.domain, basis, labels)
    b = _family(g.domain, basis)
    images = g.array @ b
    coords = IntegralSolver(b).solve_columns(images)
    if coords is None:
        raise LatticeError("isometry does not preserve the given sublattice")
    return Isometry(sub, as_rows(coords))

def conjugate(g: Isometry, f: Isometry) -> Isometry:
    """f⁻¹ ∘ g ∘ f."""
    return f.inverse().compose(g).compose(f)

def _sign_changes(coeffs: Sequence[int]) -> int:
    nz = [c for c in coeffs if c]
    return sum(1 for a, b in zip(nz, nz[1:]) if (a < 0) != (b < 0))

def signature(lattice: Lattice) -> tuple[int, int]:
    """(positive, negative) inertia; exact since a symmetric matrix has only real eigenvalues."""
    if lattice.rank == 0:
        return (0, 0)
    coeffs = [int(c) for c in Matrix([list(r) for r in lattice.gram]).charpoly().all_coeffs()]
    deg = len(coeffs) - 1
    positive = _sign_changes(coeffs)
    negative = _sign_changes([c * (-1) ** (deg - k) for k, c in enumerate(coeffs)])
    return positive, negative
