from __future__ import annotations
import logging
import os
from dataclasses import dataclass, field
from typing import Sequence
import pandas as pd

from .codec import certificate_to_json, dumps
from .conditions import DClassification, classify_d
from .hilbert import HilbVerdict, hilb_birational
from .involution import build_gtilde, mukai_vector_of_tau, tau_polarization
from .mukai import MukaiVector

log = logging.getLogger(__name__)

FORMATS = ("table", "csv", "json")

CLASSIFICATION_COLUMNS = ["d", "star", "twostar", "threestar", "a", "n", "tau_strict", "tau_extended"]

@dataclass(frozen=True)
class ReportRecord:
    d: int
    classification: DClassification
    mukai_v: MukaiVector | None = None
    L_tau: MukaiVector | None = None
    hilb: dict[int, HilbVerdict] = field(default_factory=dict)
    certificates: tuple[str, ...] = ()

    def __post_init__(self):
        if (self.mukai_v is not None) != self.classification.tau_extended:
            raise ValueError(f"d={self.d}: Mukai vector must be present exactly when τ is defined")

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "classification": self.classification.to_dict(),
            "mukai_v": self.mukai_v.to_dict() if self.mukai_v else None,
            "L_tau": self.L_tau.to_dict() if self.L_tau else None,
            "hilb": {str(n): v.to_dict() for n, v in sorted(self.hilb.items())},
            "certificates": list(self.certificates),
        }

    def to_row(self, n_list: Sequence[int] = ()) -> dict:
        row = self.classification.to_dict()
        row["v"] = str(self.mukai_v) if self.mukai_v else ""
        row["L_tau"] = str(self.L_tau) if self.L_tau else ""
        for n in n_list:
            v = self.hilb.get(n)
            if v is None:
                row[f"hilb{n}"] = ""
            elif v.birational:
                row[f"hilb{n}"] = f"{v.equation} ({v.p},{v.q})"
            else:
                row[f"hilb{n}"] = "no"
        row["certificates"] = ";".join(self.certificates)
        return row

def write_certificate(out_dir: str, d: int) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"tau_d{d}.json")
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(certificate_to_json(build_gtilde(d))))
        f.write("\n")
    log.info("wrote certificate for d=%d to %s", d, path)
    return path

def build_record(
    d: int,
    n_list: Sequence[int] = (),
    certify_dir: str | None = None,
    classification: DClassification | None = None,
) -> ReportRecord:
    for n in n_list:
        if n < 2:
            raise ValueError(f"n must be at least 2, got {n}")
    cls = classification or classify_d(d)
    if not cls.tau_extended:
        return ReportRecord(d=d, classification=cls)
    hilb = {n: hilb_birational(d, n) for n in n_list} if d > 6 else {}
    certificates = (write_certificate(certify_dir, d),) if certify_dir else ()
    return ReportRecord(
        d=d,
        classification=cls,
        mukai_v=mukai_vector_of_tau(d),
        L_tau=tau_polarization(d),
        hilb=hilb,
        certificates=certificates,
    )

def records_frame(records: Sequence[ReportRecord], n_list: Sequence[int] = ()) -> pd.DataFrame:
    columns = CLASSIFICATION_COLUMNS + ["v", "L_tau"] + [f"hilb{n}" for n in n_list] + ["certificates"]
    if not records:
        return pd.DataFrame(columns=columns)
    # object dtype keeps optional integer columns free of float coercion
    return pd.DataFrame([r.to_row(n_list) for r in records], columns=columns, dtype=object)

def render(records: Sequence[ReportRecord], fmt: str = "table", n_list: Sequence[int] = ()) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if fmt == "json":
        return dumps([r.to_dict() for r in records])
    df = records_frame(records, n_list)
    if fmt == "csv":
        return df.to_csv(index=False)
    if df.empty:
        return ""
    return df.to_string(index=False)
