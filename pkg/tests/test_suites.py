from __future__ import annotations

import pytest

from k3tau.suites import SUITES, run_suite


@pytest.mark.parametrize(
    "name, kwargs",
    [
        ("involution", {"d_max": 500}),
        ("mukai", {"d_max": 300}),
        ("disc-action", {"d_list": [42]}),
        ("multipliers", {"d_list": [42, 78]}),
        ("unique-model", {"d_max": 100}),
        ("pell-oracle", {"d_max": 6}),
    ],
)
def test_suite_passes(name, kwargs):
    (result,) = run_suite(name, **kwargs)
    assert result.ok, result.failures
    assert result.checked > 0
    assert result.to_dict()["ok"] is True


def test_special_case_suites():
    results = run_suite("special-cases", d_max=400)
    assert [r.name for r in results] == ["n3_prime", "n4_prime", "n5_equiv", "threestar_prime"]
    assert all(r.ok for r in results), [r.failures for r in results]


def test_threestar_suite():
    results = run_suite("threestar", d_max=400)
    assert {r.name for r in results} == {"threestar_equiv_F", "threestar_implies_F"}
    assert all(r.ok for r in results)


def test_suite_with_workers():
    serial = run_suite("involution", d_max=300)
    parallel = run_suite("involution", d_max=300, workers=2)
    assert serial == parallel


def test_unknown_suite():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("bogus")


def test_suite_names():
    assert "all" not in SUITES
    assert len(SUITES) == len(set(SUITES))


@pytest.mark.parametrize(
    "name, d_list, expected",
    [("disc-action", [42, 78], (13, 25)), ("multipliers", [42], (13,)), ("involution", [42, 114, 438], (13, 37, 145))],
)
def test_suite_details_carry_multipliers(name, d_list, expected):
    (result,) = run_suite(name, d_list=d_list)
    assert result.multipliers == expected
    assert [x["d"] for x in result.details] == d_list


def test_disc_action_details():
    (result,) = run_suite("disc-action", d_list=[42])
    (detail,) = result.details
    assert detail["complement_rank"] == 21
    assert detail["complement_orders"] == [42]
    assert result.to_dict()["details"] == [detail]
