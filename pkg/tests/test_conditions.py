from __future__ import annotations

import pytest

from k3tau.conditions import (
    classify_d,
    cond_star,
    cond_threestar,
    cond_twostar,
    tau_extended,
    tau_strict,
)
from k3tau.errors import InadmissibleDegreeError


@pytest.mark.parametrize("d, expected", [(8, True), (12, True), (6, False), (10, False), (14, True)])
def test_star(d, expected):
    assert cond_star(d) is expected


@pytest.mark.parametrize(
    "d, expected",
    [(14, True), (26, True), (42, True), (78, True), (438, True), (66, False), (150, False), (8, False), (18, False)],
)
def test_twostar(d, expected):
    assert cond_twostar(d) is expected


@pytest.mark.parametrize("d, witness", [(14, (1, 2)), (26, (1, 3)), (38, (7, 30)), (42, (1, 4)), (62, (1, 5))])
def test_threestar_witness(d, witness):
    ok, w = cond_threestar(d)
    assert ok and w == witness
    a, n = w
    assert a * a * d == 2 * (n * n + n + 1)


@pytest.mark.parametrize("d", [78, 438, 8, 18])
def test_threestar_fails(d):
    assert cond_threestar(d) == (False, None)


def test_threestar_rejects_bad_degrees():
    with pytest.raises(InadmissibleDegreeError, match="even"):
        cond_threestar(15)
    with pytest.raises(InadmissibleDegreeError, match="exceed 6"):
        cond_threestar(6)


def test_threestar_square_half_degree():
    # d/2 = 49: n² + n + 1 sits between consecutive squares
    assert cond_threestar(98) == (False, None)


def test_tau_strict_scan():
    assert [d for d in range(12, 121, 2) if tau_strict(d)] == [42, 78, 114]


def test_threestar_scan():
    assert [d for d in range(12, 61, 2) if cond_threestar(d)[0]] == [14, 26, 38, 42]


def test_tau_extended_is_weaker_than_strict():
    for d in range(12, 2000, 6):
        if tau_strict(d):
            assert tau_extended(d)


@pytest.mark.parametrize("d, twostar, strict, extended", [(150, False, False, True), (66, False, False, False)])
def test_classify(d, twostar, strict, extended):
    c = classify_d(d)
    assert (c.twostar, c.tau_strict, c.tau_extended) == (twostar, strict, extended)
    assert c.matches("all")
    assert c.matches("tau_extended") is extended


def test_classify_row():
    row = classify_d(14).to_dict()
    assert row == {
        "d": 14, "star": True, "twostar": True, "threestar": True,
        "a": 1, "n": 2, "tau_strict": False, "tau_extended": False,
    }


def test_classify_rejects_odd():
    with pytest.raises(InadmissibleDegreeError, match="d must be even"):
        classify_d(7)
    with pytest.raises(ValueError, match="unknown filter"):
        classify_d(42).matches("cubic")
