"""Predicted preperiods and periods of ``(E_n mod q)`` and the verification harness.

Known results and open formulas are kept apart:

* odd primes ``p``: ``d(p) = p - 1`` if ``p = 1 (mod 4)``, else ``2p - 2`` (theorem);
  ``s(p^k) <= k`` and ``d(p^k) | p^(k-1) d(p)`` (theorem);
* odd prime powers: ``s(p^k) = k``, ``d(p^k) = p^(k-1) d(p)`` (conjecture);
* powers of two: ``s(2^k) = u_k``, ``d(2^k) = 2^k`` except ``d(4) = 2`` (conjecture);
* any ``q``: ``s`` is the max and ``d`` the lcm over prime-power factors (theorem);
* ``u_k`` is the f-transform of ``(2, 4, 4, 4)`` (conjecture).

A failed theorem check is a ``violation`` (a defect in this code); a failed
conjecture check is a ``mismatch`` (a finding).
"""
from __future__ import annotations

import math
import platform
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .arnold import arnold_sequence
from .core_arith import DomainError, factorize, is_prime, primes_below
from .ftransform import f_transform
from .periodicity import DEFAULT_MARGIN, PeriodProfile, detect
from .seidel import euler_sequence

ARNOLD_SEED = (2, 4, 4, 4)

THEOREM = "theorem"
CONJECTURE = "conjecture"
BOUND = "divisibility-bound"


class Verdict(str, Enum):
    MATCH = "match"
    MISMATCH = "mismatch"
    INCONCLUSIVE = "inconclusive"
    VIOLATION = "violation"


@dataclass(frozen=True)
class Prediction:
    q: int
    s_pred: int | None
    d_pred: int | None
    provenance: str
    source: str
    # True when some factor's formula could not be evaluated (e.g. u_k unavailable)
    partial: bool = False

    def __post_init__(self) -> None:
        if self.s_pred is None and self.d_pred is None:
            raise DomainError(f"prediction for q={self.q} carries no value")

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "s_pred": self.s_pred,
            "d_pred": self.d_pred,
            "provenance": self.provenance,
            "source": self.source,
            "partial": self.partial,
        }


def kb_d(p: int) -> int:
    if p % 2 == 0 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    return p - 1 if p % 4 == 1 else 2 * p - 2


def _odd_prime_power(q: int) -> tuple[int, int]:
    fac = factorize(q)
    if not fac.is_prime_power or fac.factors[0][0] == 2:
        raise DomainError(f"{q} is not an odd prime power")
    return fac.factors[0]


def kb_bounds(q: int) -> Prediction:
    """Proven bounds for an odd prime power: ``s <= s_pred`` and ``d | d_pred``."""
    p, k = _odd_prime_power(q)
    return Prediction(q, k, p ** (k - 1) * kb_d(p), BOUND, "knuth-buckholtz")


@lru_cache(maxsize=None)
def _arnold_u(k_max: int) -> tuple[int, ...] | None:
    return arnold_sequence(k_max).u


def _prime_power_prediction(p: int, k: int, u: Sequence[int] | None) -> Prediction:
    q = p**k
    if p == 2:
        d = 2 if k == 2 else q
        if u is None:
            u = _arnold_u(k)
        if u is None or len(u) < k:
            return Prediction(q, None, d, CONJECTURE, "powers-of-two", partial=True)
        return Prediction(q, u[k - 1], d, CONJECTURE, "powers-of-two")
    # s(p) = 1 is only bounded by the theorem, so even primes-to-the-one are conjectural in s.
    return Prediction(q, k, p ** (k - 1) * kb_d(p), CONJECTURE, "odd-prime-powers")


def predict(q: int, u: Sequence[int] | None = None) -> Prediction:
    """Predicted ``(s(q), d(q))``.

    ``u`` supplies ``u_1, u_2, ...`` for power-of-two factors; when omitted
    it is computed with :func:`arnold_sequence`.
    """
    if q < 2:
        raise DomainError(f"predictions need q >= 2, got {q}")
    parts = [_prime_power_prediction(p, k, u) for p, k in factorize(q)]
    if len(parts) == 1:
        return parts[0]
    partial = any(pr.partial for pr in parts)
    s = None if partial else max(pr.s_pred for pr in parts)
    d = math.lcm(*(pr.d_pred for pr in parts))
    source = "crt-lemma(" + ",".join(pr.source for pr in parts) + ")"
    return Prediction(q, s, d, CONJECTURE, source, partial=partial)


def check_kb_bounds(q: int, profile: PeriodProfile) -> Verdict:
    if not profile.confirmed:
        return Verdict.INCONCLUSIVE
    bound = kb_bounds(q)
    ok = profile.s <= bound.s_pred and bound.d_pred % profile.d == 0
    return Verdict.MATCH if ok else Verdict.VIOLATION


def crt_check(q: int, profiles: Mapping[int, PeriodProfile]) -> Verdict:
    """Check ``s(q) = max s(p^a)`` and ``d(q) = lcm d(p^a)`` on empirical profiles."""
    needed = [q] + factorize(q).prime_powers()
    if any(m not in profiles for m in needed):
        return Verdict.INCONCLUSIVE
    if not all(profiles[m].confirmed for m in needed):
        return Verdict.INCONCLUSIVE
    parts = [profiles[m] for m in needed[1:]]
    s = max(pr.s for pr in parts)
    d = math.lcm(*(pr.d for pr in parts))
    whole = profiles[q]
    return Verdict.MATCH if (whole.s, whole.d) == (s, d) else Verdict.VIOLATION


def compare(profile: PeriodProfile, prediction: Prediction) -> Verdict:
    if not profile.confirmed:
        return Verdict.INCONCLUSIVE
    for got, want in ((profile.s, prediction.s_pred), (profile.d, prediction.d_pred)):
        if want is not None and got != want:
            return Verdict.MISMATCH
    if prediction.partial:
        return Verdict.INCONCLUSIVE
    return Verdict.MATCH


# ---------------------------------------------------------------- harness


@dataclass(frozen=True)
class Scope:
    """Moduli covered by :func:`verify_suite`; ``None`` switches a family off."""

    odd_prime_power_max: int | None = None
    pow2_max_exp: int | None = None
    composite_max: int | None = None
    k_max: int | None = None
    margin: int = DEFAULT_MARGIN
    slack: int = 32

    @classmethod
    def desk(cls) -> Scope:
        return cls(odd_prime_power_max=200, pow2_max_exp=8, composite_max=100, k_max=64)

    def moduli(self) -> list[tuple[str, int]]:
        rows: dict[int, str] = {}
        if self.odd_prime_power_max:
            for p in primes_below(self.odd_prime_power_max + 1):
                if p == 2:
                    continue
                q = p
                while q <= self.odd_prime_power_max:
                    rows[q] = "odd-prime-power"
                    q *= p
        if self.pow2_max_exp:
            for k in range(1, self.pow2_max_exp + 1):
                rows[2**k] = "power-of-two"
        if self.composite_max:
            for q in range(6, self.composite_max + 1):
                if not factorize(q).is_prime_power:
                    rows[q] = "composite"
        return [(kind, q) for q, kind in sorted(rows.items())]


@dataclass
class ModulusRow:
    q: int
    kind: str
    profile: PeriodProfile | None
    prediction: Prediction | None
    verdict: Verdict
    checks: dict[str, Verdict] = field(default_factory=dict)
    witness: list[int] | None = None
    error: str | None = None

    def as_dict(self) -> dict:
        out = {
            "q": self.q,
            "kind": self.kind,
            "profile": self.profile.as_dict() if self.profile else None,
            "prediction": self.prediction.as_dict() if self.prediction else None,
            "verdict": self.verdict.value,
            "checks": {k: v.value for k, v in self.checks.items()},
        }
        if self.witness is not None:
            out["witness"] = [str(x) for x in self.witness]
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class ArnoldRow:
    k: int
    u_k: int | None
    f_k: int
    verdict: Verdict

    def as_dict(self) -> dict:
        return {"k": self.k, "u_k": self.u_k, "f_k": self.f_k, "verdict": self.verdict.value}


@dataclass
class VerificationReport:
    scope: Scope
    rows: list[ModulusRow]
    arnold_rows: list[ArnoldRow]
    runtime: dict

    def counts(self) -> dict[str, int]:
        out = {v.value: 0 for v in Verdict}
        for r in self.rows:
            out[r.verdict.value] += 1
            for v in r.checks.values():
                if v is Verdict.VIOLATION:
                    out[Verdict.VIOLATION.value] += 1
        for r in self.arnold_rows:
            out[r.verdict.value] += 1
        return out

    @property
    def exit_code(self) -> int:
        c = self.counts()
        if c["mismatch"] or c["violation"]:
            return 1
        if c["inconclusive"]:
            return 2
        return 0

    def as_dict(self) -> dict:
        sc = self.scope
        return {
            "scope": {
                "odd_prime_power_max": sc.odd_prime_power_max,
                "pow2_max_exp": sc.pow2_max_exp,
                "composite_max": sc.composite_max,
                "k_max": sc.k_max,
                "margin": sc.margin,
                "slack": sc.slack,
            },
            "summary": self.counts(),
            "rows": [r.as_dict() for r in self.rows],
            "arnold": [r.as_dict() for r in self.arnold_rows],
            "runtime": self.runtime,
        }


DEFAULT_WINDOW = 2048


def window_for(prediction: Prediction | None, margin: int, slack: int) -> int:
    """Enough terms for ``margin`` extra periods if the predicted ``d`` is right."""
    if prediction is None or prediction.d_pred is None:
        return DEFAULT_WINDOW
    s = prediction.s_pred if prediction.s_pred is not None else 64
    return s + (margin + 1) * prediction.d_pred + slack + prediction.d_pred


def _profile_job(q: int, prediction: Prediction, margin: int, slack: int) -> tuple[PeriodProfile, list[int]]:
    n = window_for(prediction, margin, slack)
    terms = list(euler_sequence(n, q).terms)
    return detect(terms, margin, modulus=q), terms


def verify_suite(scope: Scope, workers: int | None = None) -> VerificationReport:
    """Profile every modulus in ``scope`` and compare with predictions.

    Jobs run on a bounded thread pool; rows come back sorted by ``q`` so the
    report does not depend on scheduling.
    """
    for name in ("odd_prime_power_max", "pow2_max_exp", "composite_max", "k_max"):
        val = getattr(scope, name)
        if val is not None and val < 1:
            raise DomainError(f"{name} must be positive, got {val}")

    targets = scope.moduli()
    max_exp = max(
        [k for _, q in targets for p, k in factorize(q) if p == 2] + [scope.k_max or 0, 1]
    )
    table = arnold_sequence(max_exp)
    u = table.u

    # Factors of composites are profiled too, whether or not they are rows.
    needed = {q for _, q in targets}
    for kind, q in targets:
        if kind == "composite":
            needed.update(factorize(q).prime_powers())

    predictions: dict[int, Prediction | None] = {}
    pred_errors: dict[int, str] = {}
    for q in sorted(needed):
        try:
            predictions[q] = predict(q, u)
        except Exception as exc:  # downgrade, never abort
            predictions[q] = None
            pred_errors[q] = repr(exc)

    profiles: dict[int, PeriodProfile] = {}
    windows: dict[int, list[int]] = {}
    errors: dict[int, str] = dict(pred_errors)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {
            q: pool.submit(_profile_job, q, predictions[q], scope.margin, scope.slack)
            for q in sorted(needed)
        }
        for q, fut in futures.items():
            try:
                profiles[q], windows[q] = fut.result()
            except Exception as exc:
                errors[q] = repr(exc)

    rows = []
    for kind, q in targets:
        prof, pred = profiles.get(q), predictions.get(q)
        if prof is None or pred is None:
            rows.append(ModulusRow(q, kind, prof, pred, Verdict.INCONCLUSIVE, error=errors.get(q)))
            continue
        verdict = compare(prof, pred)
        checks: dict[str, Verdict] = {}
        if kind == "odd-prime-power":
            p, k = factorize(q).factors[0]
            checks["kb_bounds"] = check_kb_bounds(q, prof)
            if k == 1:
                if not prof.confirmed:
                    checks["kb_d"] = Verdict.INCONCLUSIVE
                else:
                    checks["kb_d"] = Verdict.MATCH if prof.d == kb_d(p) else Verdict.VIOLATION
        elif kind == "composite":
            checks["crt"] = crt_check(q, profiles)
        witness = windows.get(q) if verdict is not Verdict.MATCH else None
        rows.append(ModulusRow(q, kind, prof, pred, verdict, checks, witness))

    arnold_rows = []
    if scope.k_max:
        f_vals = f_transform(ARNOLD_SEED, scope.k_max)
        got = table.u
        for k in range(1, scope.k_max + 1):
            if got is None:
                arnold_rows.append(ArnoldRow(k, None, f_vals[k - 1], Verdict.INCONCLUSIVE))
            else:
                v = Verdict.MATCH if got[k - 1] == f_vals[k - 1] else Verdict.MISMATCH
                arnold_rows.append(ArnoldRow(k, got[k - 1], f_vals[k - 1], v))

    runtime = {
        "workers": workers,
        "arnold_rows_used": table.rows_used,
        "arnold_status": table.status,
        "python": platform.python_version(),
        "numpy": np.__version__,
    }
    return VerificationReport(scope, rows, arnold_rows, runtime)
