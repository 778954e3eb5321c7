"""JSON encoding of exact data: integers past 64 bits travel as decimal strings."""
from __future__ import annotations
import json
from typing import Any

from .errors import LatticeError
from .intmat import IntRows
from .involution import TauCertificate
from .lattice import Isometry, Lattice
from .mukai import MukaiVector

INT64_MAX = 2**63 - 1

def encode_int(x: int) -> int | str:
    return x if -INT64_MAX - 1 <= x <= INT64_MAX else str(x)

def decode_int(x: int | str) -> int:
    return int(x)

def _jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return encode_int(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return _jsonable(obj.to_dict())
    raise TypeError(f"cannot encode {type(obj).__name__} as JSON")

def dumps(obj: Any) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True)

def _matrix(rows: IntRows) -> list[list[int | str]]:
    return [[encode_int(x) for x in row] for row in rows]

def _decode_matrix(rows: list) -> IntRows:
    return tuple(tuple(decode_int(x) for x in row) for row in rows)

def lattice_to_json(lattice: Lattice) -> dict:
    return {"rank": lattice.rank, "gram": _matrix(lattice.gram), "labels": list(lattice.labels)}

def lattice_from_json(payload: dict) -> Lattice:
    gram = _decode_matrix(payload["gram"])
    if len(gram) != payload["rank"]:
        raise LatticeError(f"rank {payload['rank']} does not match a {len(gram)}-row Gram matrix")
    return Lattice(gram, tuple(payload.get("labels", ())))

def isometry_to_json(g: Isometry) -> dict:
    return {"lattice": lattice_to_json(g.domain), "matrix": _matrix(g.matrix)}

def isometry_from_json(payload: dict) -> Isometry:
    return Isometry(lattice_from_json(payload["lattice"]), _decode_matrix(payload["matrix"]))

def mukai_from_json(payload: dict) -> MukaiVector:
    return MukaiVector(*(decode_int(payload[k]) for k in ("r", "c", "s", "d")))

def certificate_to_json(cert: TauCertificate) -> dict:
    return {
        "d": cert.d,
        "u_matrix": _matrix(cert.u_matrix),
        "g_matrix": _matrix(cert.g_matrix),
        "glued": isometry_to_json(cert.glued),
        "v": _jsonable(cert.v.to_dict()),
        "L_tau": _jsonable(cert.L_tau.to_dict()),
        "disc_multiplier": cert.disc_multiplier,
    }

def certificate_from_json(payload: dict) -> TauCertificate:
    """Rebuilds a certificate; the Isometry constructor re-checks the glued matrix."""
    return TauCertificate(
        d=payload["d"],
        u_matrix=_decode_matrix(payload["u_matrix"]),
        g_matrix=_decode_matrix(payload["g_matrix"]),
        glued=isometry_from_json(payload["glued"]),
        v=mukai_from_json(payload["v"]),
        L_tau=mukai_from_json(payload["L_tau"]),
        disc_multiplier=payload["disc_multiplier"],
    )
