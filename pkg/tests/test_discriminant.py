from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from k3tau.discriminant import (
    discriminant_group,
    glue_extends,
    induced_disc_map,
    multiplier_preserves_form,
)
from k3tau.errors import LatticeError, NotUnimodularError
from k3tau.k3lattices import a2_complement, kd_complement, lattice_d, primitive_cubic_lattice
from k3tau.involution import _u_sub_basis, build_u
from k3tau.lattice import Isometry, Lattice, direct_sum, orthogonal_complement, standard_lattice, suffixed

# U1 ⊕ U2 ⊕ <−6> on (e1, f1, e2, f2, x); columns are images
UU6 = direct_sum([suffixed(standard_lattice("U"), "1"), suffixed(standard_lattice("U"), "2"), standard_lattice("rank1", -6)])
UU6_GENERATORS = [
    ((0, 1, 0, 0, 0), (1, 0, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)),
    ((-1, 0, 0, 0, 0), (0, -1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)),
    ((0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 0, 0, 1)),
    ((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, -1)),
    # Eichler transvection along e1 and x
    ((1, 3, 0, 0, 6), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 1, 0, 0, 1)),
]
words = st.lists(st.integers(0, len(UU6_GENERATORS) - 1), min_size=1, max_size=6)


def _word(indices):
    g = Isometry.identity(UU6)
    for i in indices:
        g = g.compose(Isometry(UU6, UU6_GENERATORS[i]))
    return g


def test_rank_one():
    disc = discriminant_group(standard_lattice("rank1", 6))
    assert disc.orders == (6,)
    assert disc.qvalues == (Fraction(1, 6),)
    assert disc.is_cyclic() and not disc.is_trivial()


def test_a2_form():
    disc = discriminant_group(standard_lattice("A2"))
    assert disc.orders == (3,)
    assert disc.qvalues == (Fraction(2, 3),)


def test_unimodular_is_trivial(k3):
    disc = discriminant_group(k3)
    assert disc.is_trivial()
    assert disc.order == 1


def test_coordinates_of_dual_vectors():
    disc = discriminant_group(standard_lattice("rank1", 6))
    assert disc.coordinates(disc.generators[0]) == (1,)
    assert disc.coordinates((Fraction(5, 6),)) in {(5,), (1,)}
    assert disc.coordinates((1,)) == (0,)
    with pytest.raises(LatticeError, match="dual lattice"):
        disc.coordinates((Fraction(1, 4),))


@pytest.mark.parametrize("d", [42, 78, 114, 438])
def test_cyclic_discriminants(d):
    assert discriminant_group(lattice_d(d)[0]).orders == (d,)
    assert discriminant_group(kd_complement(d)[0]).orders == (d,)


def test_a2_complement_matches_primitive_cubic_lattice():
    a2c = discriminant_group(a2_complement()[0])
    cub0 = discriminant_group(primitive_cubic_lattice()[0])
    assert a2c.orders == cub0.orders == (3,)
    assert a2c.qvalues == cub0.qvalues == (Fraction(4, 3),)


def test_induced_maps():
    lat = standard_lattice("rank1", 6)
    assert induced_disc_map(lat, Isometry.identity(lat)).is_identity()
    neg = induced_disc_map(lat, Isometry.negation(lat))
    assert neg.multiplier == 5
    assert neg.preserves_form()
    assert neg.compose(neg).is_identity()


def test_multiplier_preserves_form():
    disc = discriminant_group(standard_lattice("rank1", 6))
    assert multiplier_preserves_form(disc, -1)
    assert not multiplier_preserves_form(disc, 2)


def test_glue_swap_on_hyperbolic_plane(hyperbolic):
    plus = [hyperbolic.vector((1, 1))]
    g1 = Isometry.identity(Lattice(((2,),)))
    g2 = Isometry.negation(Lattice(((-2,),)))
    result = glue_extends(hyperbolic, plus, g1, g2)
    assert result.extends
    assert result.certificate.matrix == ((0, 1), (1, 0))


def test_glue_failure_is_reported(hyperbolic):
    sub = [hyperbolic.vector((1, 2))]
    g1 = Isometry.identity(Lattice(((4,),)))
    g2 = Isometry.negation(Lattice(((-4,),)))
    result = glue_extends(hyperbolic, sub, g1, g2)
    assert not result.extends
    assert result.certificate is None


def test_glue_needs_unimodular_ambient():
    lat = standard_lattice("A2")
    with pytest.raises(NotUnimodularError):
        glue_extends(lat, [lat.vector((1, 0))], Isometry.identity(Lattice(((2,),))),
                     Isometry.identity(Lattice(((6,),))))


@given(words, words)
def test_induced_map_of_composition(w1, w2):
    g, h = _word(w1), _word(w2)
    both = induced_disc_map(UU6, g.compose(h))
    composed = induced_disc_map(UU6, g).compose(induced_disc_map(UU6, h))
    assert both.source.orders == (6,)
    assert (both.matrix[0][0] - composed.matrix[0][0]) % 6 == 0
    assert both.multiplier % 6 in (1, 5)


def test_identity_on_lattice_d_does_not_glue_with_u(extended):
    sub = _u_sub_basis(42)
    comp, _ = orthogonal_complement(extended, sub)
    result = glue_extends(extended, sub, build_u(42), Isometry.identity(comp))
    assert not result.extends
    assert result.certificate is None
