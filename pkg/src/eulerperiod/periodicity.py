"""Preperiod and minimal period of a finite window of an ultimately periodic sequence.

For every candidate period ``d`` the window yields ``s_d``, the smallest
offset from which ``terms[n] == terms[n + d]`` holds to the end.  The
preperiod is ``s = min_d s_d`` and the period the smallest ``d`` reaching
it, so a longer deletion never buys a shorter period.  Candidates are
capped at ``N // (min_margin + 1)``: a period the window cannot show at
least ``min_margin + 1`` times is never reported.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core_arith import DomainError
from .seidel import euler_sequence

DEFAULT_MARGIN = 3

CONFIRMED = "confirmed"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PeriodProfile:
    modulus: int | None
    s: int
    d: int
    window: int
    margin: int
    min_margin: int
    status: str
    # d' < d  ->  some n >= s with terms[n] != terms[n + d']
    period_witnesses: dict[int, int] = field(default_factory=dict, compare=False)
    # n = s - 1 with terms[n] != terms[n + d], or None when s == 0
    preperiod_witness: int | None = field(default=None, compare=False)

    @property
    def confirmed(self) -> bool:
        return self.status == CONFIRMED

    def verify(self, seq: Sequence[int]) -> bool:
        """Re-check periodicity and both minimality witnesses against ``seq``."""
        a = list(seq)
        n_terms, s, d = len(a), self.s, self.d
        if n_terms != self.window:
            return False
        if any(a[n] != a[n + d] for n in range(s, n_terms - d)):
            return False
        for dd in range(1, d):
            n = self.period_witnesses.get(dd)
            if n is None or n < s or n + dd >= n_terms or a[n] == a[n + dd]:
                return False
        if s > 0:
            w = self.preperiod_witness
            if w != s - 1 or a[w] == a[w + d]:
                return False
        return True

    def as_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "s": self.s,
            "d": self.d,
            "window": self.window,
            "margin": self.margin,
            "min_margin": self.min_margin,
            "status": self.status,
        }


def _as_array(seq: Sequence[int]) -> np.ndarray:
    if isinstance(seq, np.ndarray):
        return seq
    try:
        return np.asarray(seq, dtype=np.int64)
    except OverflowError:
        return np.asarray(list(seq), dtype=object)


def _last_mismatch(a: np.ndarray, d: int) -> int:
    """Largest ``n`` with ``a[n] != a[n + d]``, or -1."""
    bad = np.flatnonzero(a[d:] != a[:-d])
    return int(bad[-1]) if bad.size else -1


def detect(seq: Sequence[int], min_margin: int = DEFAULT_MARGIN, modulus: int | None = None) -> PeriodProfile:
    if len(seq) == 0:
        raise DomainError("cannot detect a period in an empty sequence")
    if min_margin < 1:
        raise DomainError(f"min_margin must be >= 1, got {min_margin}")
    a = _as_array(seq)
    n_terms = len(a)
    max_d = max(1, n_terms // (min_margin + 1))

    last_bad: dict[int, int] = {}
    best_s, best_d = None, None
    for d in range(1, max_d + 1):
        if d >= n_terms:
            last_bad[d] = -1
        else:
            last_bad[d] = _last_mismatch(a, d)
        s_d = last_bad[d] + 1
        if best_s is None or s_d < best_s:
            best_s, best_d = s_d, d
            if s_d == 0:
                break

    s, d = best_s, best_d
    # Every d' < d has s_d' > s, so its last mismatch sits at or beyond s.
    witnesses = {dd: last_bad[dd] for dd in range(1, d)}
    margin = (n_terms - s) // d - 1
    status = CONFIRMED if margin >= min_margin else INCONCLUSIVE
    return PeriodProfile(
        modulus=modulus,
        s=s,
        d=d,
        window=n_terms,
        margin=margin,
        min_margin=min_margin,
        status=status,
        period_witnesses=witnesses,
        preperiod_witness=s - 1 if s > 0 else None,
    )


def profile_euler(q: int, window: int, min_margin: int = DEFAULT_MARGIN) -> PeriodProfile:
    """Profile of ``(E_n mod q)`` over its first ``window`` terms."""
    if q < 1:
        raise DomainError(f"modulus must be >= 1, got {q}")
    if window < 2:
        raise DomainError(f"window must be >= 2, got {window}")
    if q == 1:
        return PeriodProfile(1, 0, 1, window, window - 1, min_margin, CONFIRMED)
    terms = euler_sequence(window, q).terms
    return detect(terms, min_margin, modulus=q)
