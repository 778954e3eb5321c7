"""Verification suites behind `k3tau verify`."""
from __future__ import annotations
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import isqrt
from typing import Callable, Iterable, Sequence

from .conditions import tau_extended
from .discriminant import induced_disc_map
from .hilbert import hilb2_unique_model, special_case_checks
from .involution import (
    build_u,
    multiplier_candidates,
    mukai_vector_of_tau,
    tau_orbit,
    tau_polarization,
    verify_tau,
)
from .mukai import fine_moduli_witness
from .pell import compare_with_oracle

log = logging.getLogger(__name__)

Problem = tuple[str, str]
# violated identities plus an optional per-input detail record
Outcome = tuple[list[Problem], dict | None]

SUITES = ("involution", "disc-action", "pell-oracle", "special-cases", "mukai", "threestar",
          "unique-model", "multipliers")

DEFAULT_D_MAX = {
    "involution": 10_002,
    "mukai": 10_002,
    "pell-oracle": 200,
    "special-cases": 3_000,
    "threestar": 5_000,
    "unique-model": 600,
}
DEFAULT_D_LIST = {
    "disc-action": (42, 78, 114, 438),
    "multipliers": (42, 78),
}
PELL_N_MAX = 50
PELL_BOUND = 10_000

@dataclass(frozen=True)
class SuiteResult:
    name: str
    checked: int
    failures: tuple[str, ...]
    details: tuple[dict, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def multipliers(self) -> tuple[int | None, ...]:
        return tuple(x["multiplier"] for x in self.details if "multiplier" in x)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "ok": self.ok,
            "failures": list(self.failures),
            "details": list(self.details),
        }

def _check_involution(d: int) -> Outcome:
    u = build_u(d)
    multiplier = induced_disc_map(u.domain, u).multiplier
    detail = {"d": d, "multiplier": None if multiplier is None else multiplier % d}
    if multiplier is None or (multiplier - (d // 3 - 1)) % d:
        return [("u-multiplier", f"d={d}: u acts on Z/{d} by {multiplier}, expected {d // 3 - 1}")], detail
    return [], detail

def _check_disc_action(d: int) -> Outcome:
    report = verify_tau(d)
    return [("disc-action", f"d={d}: {f}") for f in report.failures], report.to_dict()

def _check_mukai(d: int) -> Outcome:
    out = []
    v = mukai_vector_of_tau(d)
    L_tau = tau_polarization(d)
    if v.square:
        out.append(("(v,v)=0", f"d={d}: (v, v) = {v.square}"))
    if v.pairing(L_tau):
        out.append(("(v,L^τ)=0", f"d={d}: (v, L^τ) = {v.pairing(L_tau)}"))
    if L_tau.square != d:
        out.append(("(L^τ,L^τ)=d", f"d={d}: (L^τ, L^τ) = {L_tau.square}"))
    if not v.is_primitive():
        out.append(("primitive", f"d={d}: {v} is not primitive"))
    elif fine_moduli_witness(v) is None:
        out.append(("fine", f"d={d}: no w with (v, w) = 1"))
    pairs = [x.moduli_pair for x in tau_orbit(d)]
    expected = [(1, d // 2), (3, d // 6), (1, d // 2)]
    if pairs != [tuple(sorted(p)) for p in expected]:
        out.append(("τ²=id", f"d={d}: orbit pairs {pairs}, expected {expected}"))
    return out, None

def _check_unique_model(d: int) -> Outcome:
    verdict = hilb2_unique_model(d)
    if d % 3 == 0 and (verdict.unique is not True or verdict.certificate != "mod-3"):
        return [("mod-3", f"d={d}: verdict {verdict.to_dict()}")], None
    if d == 62 and not any((c.a, abs(c.b)) == (1, 6) for c in verdict.candidates):
        return [("d=62", "d=62: square −10 class (1, 6) not reported")], None
    return [], None

def _check_multipliers(d: int) -> Outcome:
    candidates = multiplier_candidates(d)
    accepted = [c.alpha for c in candidates if c.accepted]
    detail = {
        "d": d,
        "multiplier": accepted[0] if len(accepted) == 1 else None,
        "candidates": [c.to_dict() for c in candidates],
    }
    if accepted != [d // 3 - 1]:
        return [("multiplier", f"d={d}: accepted multipliers {accepted}, expected [{d // 3 - 1}]")], detail
    return [], detail

def _check_pell_row(D: int) -> Outcome:
    out = []
    for N in range(-PELL_N_MAX, PELL_N_MAX + 1):
        if N:
            out.extend(("oracle", msg) for msg in compare_with_oracle(D, N, PELL_BOUND))
    return out, None

def _run(name: str, check: Callable[[int], Outcome], items: Sequence[int], workers: int) -> SuiteResult:
    log.info("suite %s: %d inputs, %d worker(s)", name, len(items), workers)
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(check, items, chunksize=max(1, len(items) // (4 * workers))))
    else:
        results = [check(x) for x in items]
    problems = [p for batch, _ in results for p in batch]
    details = tuple(detail for _, detail in results if detail is not None)
    reasons = Counter(identity for identity, _ in problems)
    if reasons:
        log.warning("suite %s: violated identities %s", name, reasons.most_common(5))
    return SuiteResult(name, len(items), tuple(msg for _, msg in problems), details)

def _tau_degrees(d_max: int) -> list[int]:
    return [d for d in range(12, d_max + 1, 6) if tau_extended(d)]

def _degrees(name: str, d_max: int | None, d_list: Sequence[int] | None) -> list[int]:
    if d_list:
        return list(d_list)
    if d_max is None:
        if name in DEFAULT_D_LIST:
            return list(DEFAULT_D_LIST[name])
        d_max = DEFAULT_D_MAX[name]
    if name == "unique-model":
        return list(range(8, d_max + 1, 2))
    if name == "pell-oracle":
        return [D for D in range(2, d_max + 1) if isqrt(D) ** 2 != D]
    return _tau_degrees(d_max)

def run_suite(
    name: str,
    d_max: int | None = None,
    d_list: Sequence[int] | None = None,
    workers: int = 1,
) -> list[SuiteResult]:
    if name == "all":
        out = []
        for suite in SUITES:
            out.extend(run_suite(suite, d_max, d_list, workers))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES + ('all',))}")
    items = _degrees(name, d_max, d_list)
    if name == "involution":
        return [_run(name, _check_involution, items, workers)]
    if name == "disc-action":
        return [_run(name, _check_disc_action, items, workers)]
    if name == "mukai":
        return [_run(name, _check_mukai, items, workers)]
    if name == "unique-model":
        return [_run(name, _check_unique_model, items, workers)]
    if name == "multipliers":
        return [_run(name, _check_multipliers, items, workers)]
    if name == "pell-oracle":
        return [_run(name, _check_pell_row, items, workers)]
    if name == "threestar":
        return [_special(items, "threestar_equiv_F"), _special(items, "threestar_implies_F")]
    return [_special(items, kind) for kind in ("n3_prime", "n4_prime", "n5_equiv", "threestar_prime")]

def _special(ds: Iterable[int], kind: str) -> SuiteResult:
    report = special_case_checks(ds, kind)
    return SuiteResult(kind, report.checked, report.failures)
