from __future__ import annotations

import io
import json

import pandas as pd
import pytest

from k3tau.codec import (
    certificate_from_json,
    certificate_to_json,
    decode_int,
    dumps,
    encode_int,
    lattice_from_json,
    lattice_to_json,
)
from k3tau.conditions import classify_d
from k3tau.errors import LatticeError
from k3tau.involution import build_gtilde
from k3tau.report import ReportRecord, build_record, records_frame, render, write_certificate


@pytest.fixture(scope="module")
def cert42():
    return build_gtilde(42)


def test_encode_int_switches_to_strings_past_int64():
    assert encode_int(2**63 - 1) == 2**63 - 1
    assert encode_int(-(2**63)) == -(2**63)
    assert encode_int(2**63) == "9223372036854775808"
    assert decode_int("9223372036854775808") == 2**63
    assert json.loads(dumps({"x": 2**70}))["x"] == str(2**70)


def test_lattice_json(hyperbolic):
    payload = lattice_to_json(hyperbolic)
    assert payload == {"rank": 2, "gram": [[0, 1], [1, 0]], "labels": list(hyperbolic.labels)}
    assert lattice_from_json(json.loads(json.dumps(payload))) == hyperbolic
    payload["rank"] = 3
    with pytest.raises(LatticeError, match="rank 3"):
        lattice_from_json(payload)


def test_certificate_json(cert42):
    text = dumps(certificate_to_json(cert42))
    again = certificate_from_json(json.loads(text))
    assert again == cert42
    assert dumps(certificate_to_json(again)) == text


def test_write_certificate(tmp_path):
    path = write_certificate(str(tmp_path / "certs"), 42)
    assert path.endswith("tau_d42.json")
    with open(path, encoding="utf-8") as f:
        payload = json.load(f)
    assert payload["d"] == 42
    assert payload["disc_multiplier"] == 13
    assert payload["v"] == {"r": 3, "c": 1, "s": 7, "d": 42}


def test_certificate_paths_reach_every_format(tmp_path):
    rec = build_record(42, certify_dir=str(tmp_path))
    path = str(tmp_path / "tau_d42.json")
    assert rec.certificates == (path,)
    assert rec.to_row()["certificates"] == path
    assert path in render([rec], "csv")
    assert path in render([rec], "table")


def test_build_record():
    rec = build_record(42, [2, 3])
    assert str(rec.mukai_v) == "(3, 1L, 7)"
    assert str(rec.L_tau) == "(42, 13L, 84)"
    assert rec.to_row([2, 3])["hilb2"] == "F (3,2)"
    assert rec.to_row([2, 3])["hilb3"] == "F1 (1,1)"

    rec = build_record(14, [2])
    assert rec.mukai_v is None and rec.hilb == {}
    assert rec.to_row([2]) == {**rec.classification.to_dict(), "v": "", "L_tau": "", "hilb2": "", "certificates": ""}

    assert build_record(438, [2]).to_row([2])["hilb2"] == "no"
    with pytest.raises(ValueError, match="at least 2"):
        build_record(42, [1])


def test_record_needs_mukai_vector_exactly_when_tau_is_defined():
    with pytest.raises(ValueError, match="Mukai vector"):
        ReportRecord(d=42, classification=classify_d(42))
    with pytest.raises(ValueError, match="Mukai vector"):
        ReportRecord(d=14, classification=classify_d(14), mukai_v=build_record(42).mukai_v)


def test_csv_keeps_integers():
    records = [build_record(d) for d in (14, 16, 42)]
    out = render(records, "csv")
    assert out.splitlines()[0] == "d,star,twostar,threestar,a,n,tau_strict,tau_extended,v,L_tau,certificates"
    assert out.splitlines()[1].startswith("14,True,True,True,1,2,False,False")
    assert ".0" not in out
    df = pd.read_csv(io.StringIO(out))
    assert list(df["d"]) == [14, 16, 42]


def test_json_is_stable():
    records = [build_record(d, [2]) for d in (42, 78)]
    text = render(records, "json", [2])
    payload = json.loads(text)
    assert [r["d"] for r in payload] == [42, 78]
    assert payload[1]["hilb"]["2"]["p"] == 2
    assert dumps(payload) == text


def test_empty_and_unknown_formats():
    assert render([], "table") == ""
    assert render([], "json") == "[]"
    assert render([], "csv").strip() == ",".join(records_frame([]).columns)
    with pytest.raises(ValueError, match="unknown format"):
        render([], "xml")
