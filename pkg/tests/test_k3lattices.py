from __future__ import annotations

import pytest

from k3tau.errors import InadmissibleDegreeError
from k3tau.k3lattices import (
    a2_complement,
    a2_embedding,
    check_tau_extended,
    hyperplane_class,
    kd_basis,
    kd_complement,
    mukai_lattice,
    polarization_class,
    primitive_cubic_lattice,
    v_class,
)
from k3tau.lattice import pairing, signature, sublattice


def test_named_lattices(k3, extended, cubic):
    assert k3.is_unimodular() and k3.is_even()
    assert extended.is_unimodular() and extended.is_even()
    assert cubic.is_unimodular() and not cubic.is_even()
    assert signature(mukai_lattice()) == (4, 20)
    assert k3.labels[-2:] == ("e3", "f3")
    assert extended.labels[-2:] == ("e4", "f4")
    assert cubic.labels[-3:] == ("z1", "z2", "z3")


def test_classes(cubic, extended):
    h = hyperplane_class()
    assert pairing(cubic, h, h) == -3
    v = v_class(42)
    assert pairing(cubic, v, v) == -14
    assert pairing(cubic, h, v) == 0
    ell = polarization_class(78, extended)
    assert pairing(extended, ell, ell) == 78
    assert sublattice(cubic, kd_basis(42)).gram == ((-3, 0), (0, -14))


def test_complements():
    assert primitive_cubic_lattice()[0].rank == 22
    assert kd_complement(42)[0].rank == 21
    assert a2_complement()[0].rank == 22


def test_a2_embedding(extended):
    assert sublattice(extended, list(a2_embedding())).gram == ((2, -1), (-1, 2))


@pytest.mark.parametrize("d", [6, 24, 42, 78, 150, 438])
def test_tau_extended_degrees(d):
    check_tau_extended(d)


@pytest.mark.parametrize("d, match", [(48, "d/6 ≡ 1 mod 3"), (66, "d/6 ≡ 1 mod 3"), (40, "0 mod 6"), (-6, "0 mod 6")])
def test_inadmissible_degrees(d, match):
    with pytest.raises(InadmissibleDegreeError, match=match):
        check_tau_extended(d)


def test_odd_polarization_rejected():
    with pytest.raises(InadmissibleDegreeError, match="even"):
        polarization_class(7)
