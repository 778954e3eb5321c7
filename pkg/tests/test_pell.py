from __future__ import annotations

from math import isqrt

import pytest
from hypothesis import given, settings, strategies as st
from sympy.solvers.diophantine.diophantine import diop_DN

from k3tau.errors import PellInputError
from k3tau.pell import (
    Constraint,
    PellProblem,
    compare_with_oracle,
    nagell_bound,
    pell_brute_force,
    pell_fundamental,
    pell_solve,
    solve_affine,
)

NONSQUARE = [D for D in range(2, 61) if isqrt(D) ** 2 != D]


@pytest.mark.parametrize("D, expected", [(2, (3, 2)), (13, (649, 180)), (39, (25, 4)), (61, (1766319049, 226153980))])
def test_fundamental_unit(D, expected):
    assert pell_fundamental(D) == expected


@pytest.mark.parametrize("D, N, expected", [(39, -3, (6, 1)), (2, -1, (1, 1)), (7, 2, (3, 1)), (13, -4, (3, 1))])
def test_solvable(D, N, expected):
    w = pell_solve(D, N)
    assert w.solvable
    assert (w.x, w.y) == expected
    assert w.x * w.x - D * w.y * w.y == N


@pytest.mark.parametrize("D, N", [(219, -3), (3, -1), (34, -1)])
def test_unsolvable(D, N):
    assert not pell_solve(D, N).solvable


def test_lmm_path_agrees_with_scan():
    for D, N in [(39, -3), (13, -4), (7, 2), (219, -3), (61, -1)]:
        scanned = pell_solve(D, N)
        walked = pell_solve(D, N, scan_ceiling=-1)
        assert walked.method == "lmm"
        assert (walked.solvable, walked.x, walked.y) == (scanned.solvable, scanned.x, scanned.y)


def test_invalid_input():
    with pytest.raises(PellInputError, match="perfect square"):
        PellProblem(9, 1)
    with pytest.raises(PellInputError, match="positive"):
        pell_solve(-2, 1)
    with pytest.raises(PellInputError, match="nonzero"):
        pell_solve(2, 0)
    with pytest.raises(PellInputError):
        pell_brute_force(2, 1, -1)


def test_nagell_bound_is_small_for_small_units():
    assert nagell_bound(39, -3) == 1
    assert nagell_bound(2, 7) >= 1


def test_brute_force_exhaustion_is_not_a_proof():
    w = pell_brute_force(219, -3, 100)
    assert not w.solvable
    assert w.exhausted and w.bound == 100
    assert not pell_solve(219, -3).exhausted


@pytest.mark.parametrize("D", NONSQUARE)
def test_oracle_agreement(D):
    for N in range(-12, 13):
        if N:
            assert compare_with_oracle(D, N, 2000) == []


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NONSQUARE), st.integers(-40, 40).filter(bool))
def test_witness_is_least(D, N):
    w = pell_solve(D, N)
    if w.solvable:
        assert w.x * w.x - D * w.y * w.y == N
        if w.y:
            assert not pell_brute_force(D, N, w.y - 1).solvable


@pytest.mark.parametrize("a, b, c, expected", [(3, 13, -1, (2, 1)), (3, 19, -1, (5, 2)), (6, 7, -1, (1, 1))])
def test_affine(a, b, c, expected):
    w = solve_affine(a, b, c)
    assert w.solvable
    assert (w.p, w.q) == expected


def test_affine_constraints():
    # x² − 21y² = −3 with y even: 81 − 84
    w = solve_affine(1, 21, -3, (Constraint.Q_EVEN,))
    assert (w.p, w.q) == (9, 2)
    assert w.constraints == ("q-even",)
    w = solve_affine(3, 7, -1, ["p-odd", "q-even"])
    assert (w.p, w.q) == (3, 2)
    assert not solve_affine(3, 13, -1, (Constraint.P_ODD, Constraint.Q_EVEN)).solvable


def test_affine_square_discriminant():
    with pytest.raises(PellInputError, match="perfect square"):
        solve_affine(1, 4, -3)
    w = solve_affine(1, 4, -3, allow_square=True)
    assert (w.p, w.q, w.method) == (1, 1, "factor-pairs")
    assert not solve_affine(9, 4, -1, allow_square=True).solvable


def test_affine_rejects_bad_coefficients():
    with pytest.raises(PellInputError):
        solve_affine(0, 3, 1)
    with pytest.raises(PellInputError):
        solve_affine(3, 7, 0)


@pytest.mark.parametrize("D", [D for D in range(2, 201) if isqrt(D) ** 2 != D])
def test_fundamental_unit_is_least(D):
    x, y = pell_fundamental(D)
    assert x * x - D * y * y == 1 and y > 0
    assert [(x, y)] == [(int(a), int(b)) for a, b in diop_DN(D, 1)]
    if y <= 5000:
        assert not any(isqrt(1 + D * t * t) ** 2 == 1 + D * t * t for t in range(1, y))


def test_219_minus_3_exhausts_the_oracle():
    w = pell_brute_force(219, -3, 10_000)
    assert w.exhausted and w.bound == 10_000
    assert compare_with_oracle(219, -3, 10_000) == []


@pytest.mark.parametrize("m", range(1, 400, 3))
def test_plus_one_branch_is_empty_when_m_is_one_mod_3(m):
    assert not solve_affine(3, m, 1).solvable
