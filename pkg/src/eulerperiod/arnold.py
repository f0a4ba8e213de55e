"""2-adic valuations of the Entringer triangle and Arnold's sequence ``u_k``.

Diagonal ``i`` is column ``i`` of the triangle (entries ``e(n, i)``,
``n >= i``).  Only a truncation of each diagonal is computable, so the
minima here are upper bounds ``m_hat_i >= m_i`` that can only fall as more
rows are added.  Rows are generated modulo ``2**cap``; that decides every
predicate ``valuation < k`` with ``k <= cap``.

``u_k = max{i : m_hat_i < k}`` is accepted once it survives a doubling of
the row count and at least ``guard`` computed diagonals lie past
``u_{k_max}`` (all of which then have ``m_hat >= k_max`` by definition).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterator

import numpy as np

from .core_arith import CappedValuation, DomainError, InvariantError, v2_array, v2_int
from .seidel import iter_raw_rows

log = logging.getLogger(__name__)

DEFAULT_GUARD = 16
DEFAULT_START_ROWS = 256
DEFAULT_MAX_ROWS = 1 << 14

CONFIRMED = "confirmed"
INCONCLUSIVE = "inconclusive"


def _raw_valuations(row, cap: int) -> np.ndarray:
    if isinstance(row, np.ndarray):
        return v2_array(row, cap)
    return np.fromiter((v2_int(x, cap) for x in row), dtype=np.int64, count=len(row))


def _iter_valuation_rows(cap: int) -> Iterator[np.ndarray]:
    if cap < 1:
        raise DomainError(f"cap must be >= 1, got {cap}")
    for row in iter_raw_rows(1 << cap):
        yield _raw_valuations(row, cap)


def valuation_row(n: int, cap: int) -> list[CappedValuation]:
    if n < 1:
        raise DomainError(f"row index must be >= 1, got {n}")
    raw = next(islice(_iter_valuation_rows(cap), n - 1, None))
    return [CappedValuation.from_int(int(v), cap) for v in raw]


def valuation_rows(count: int, cap: int) -> list[list[CappedValuation]]:
    return [
        [CappedValuation.from_int(int(v), cap) for v in raw]
        for raw in islice(_iter_valuation_rows(cap), count)
    ]


def _minima_snapshots(cap: int, checkpoints: list[int]) -> Iterator[tuple[int, np.ndarray]]:
    """Stream rows, yielding ``(N, m_hat[0:N])`` at each checkpoint ``N`` (ascending)."""
    last = checkpoints[-1]
    mins = np.full(last, cap, dtype=np.int64)
    targets = iter(checkpoints)
    target = next(targets)
    for n, vals in enumerate(_iter_valuation_rows(cap), start=1):
        np.minimum(mins[:n], vals, out=mins[:n])
        if n == target:
            yield n, mins[:n].copy()
            target = next(targets, None)
            if target is None:
                return


def diagonal_minima(rows: int, cap: int) -> list[CappedValuation]:
    """``m_hat_1 .. m_hat_rows`` over the first ``rows`` rows."""
    if rows < 1:
        raise DomainError(f"rows must be >= 1, got {rows}")
    (_, mins), = _minima_snapshots(cap, [rows])
    return [CappedValuation.from_int(int(v), cap) for v in mins]


def u_from_minima(mins: np.ndarray | list[int], k_max: int) -> list[int]:
    """``u_k`` for ``k = 1..k_max`` from saturating-int minima (index 0 is diagonal 1)."""
    mins = np.asarray(mins)
    out = []
    for k in range(1, k_max + 1):
        hits = np.flatnonzero(mins < k)
        out.append(int(hits[-1]) + 1 if hits.size else 0)
    return out


@dataclass(frozen=True)
class ArnoldTable:
    k_max: int
    cap: int
    rows_used: int
    guard: int
    status: str
    u: tuple[int, ...] | None
    candidate_u: tuple[int, ...]
    minima: tuple[CappedValuation, ...] = field(repr=False)
    stable: bool
    guarded: bool
    # (i, m_hat_i, m_hat_{i+1}) where the minima decrease, up to u_kmax + guard
    anomalies: tuple[tuple[int, int, int], ...] = ()

    @property
    def confirmed(self) -> bool:
        return self.status == CONFIRMED


def _check_invariants(prev: np.ndarray | None, mins: np.ndarray, u: list[int]) -> None:
    if prev is not None and np.any(mins[: len(prev)] > prev):
        raise InvariantError("diagonal minimum increased when rows were added")
    if any(a > b for a, b in zip(u, u[1:])):
        raise InvariantError(f"u_k not non-decreasing: {u}")


def _monotonicity_anomalies(mins: np.ndarray, upto: int, cap: int) -> list[tuple[int, int, int]]:
    upto = min(upto, len(mins))
    out = []
    for i in range(1, upto):
        a, b = int(mins[i - 1]), int(mins[i])
        if b < a:
            out.append((i, a, b))
    for i, a, b in out:
        log.warning("m_hat not monotone at diagonal %d: %d then %d (cap %d)", i, a, b, cap)
    return out


def arnold_sequence(
    k_max: int,
    rows: int = DEFAULT_START_ROWS,
    guard: int = DEFAULT_GUARD,
    cap: int | None = None,
    max_rows: int = DEFAULT_MAX_ROWS,
) -> ArnoldTable:
    """Arnold's ``u_1..u_{k_max}`` from truncated diagonal minima.

    Starts at ``rows`` rows and doubles until the values are stable under
    doubling and guarded, or until ``max_rows`` would be exceeded, in which
    case the table is inconclusive and only ``candidate_u`` is filled.
    """
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    if guard < 1:
        raise DomainError(f"guard must be >= 1, got {guard}")
    if rows < 1:
        raise DomainError(f"rows must be >= 1, got {rows}")
    cap = k_max if cap is None else cap
    if cap < k_max:
        raise DomainError(f"cap {cap} cannot decide valuations below {k_max}")

    checkpoints = [rows]
    while checkpoints[-1] * 2 <= max(max_rows, 2 * rows):
        checkpoints.append(checkpoints[-1] * 2)

    prev_n, prev_mins, prev_u = None, None, None
    for n, mins in _minima_snapshots(cap, checkpoints):
        u = u_from_minima(mins, k_max)
        _check_invariants(prev_mins, mins, u)
        if prev_u is not None:
            guarded = prev_u[-1] + guard <= prev_n
            if guarded and u == prev_u:
                anomalies = _monotonicity_anomalies(prev_mins, prev_u[-1] + guard, cap)
                return ArnoldTable(
                    k_max=k_max,
                    cap=cap,
                    rows_used=prev_n,
                    guard=guard,
                    status=CONFIRMED,
                    u=tuple(prev_u),
                    candidate_u=tuple(prev_u),
                    minima=tuple(CappedValuation.from_int(int(v), cap) for v in prev_mins),
                    stable=True,
                    guarded=True,
                    anomalies=tuple(anomalies),
                )
        prev_n, prev_mins, prev_u = n, mins, u

    return ArnoldTable(
        k_max=k_max,
        cap=cap,
        rows_used=prev_n,
        guard=guard,
        status=INCONCLUSIVE,
        u=None,
        candidate_u=tuple(prev_u),
        minima=tuple(CappedValuation.from_int(int(v), cap) for v in prev_mins),
        stable=False,
        guarded=prev_u[-1] + guard <= prev_n,
        anomalies=tuple(_monotonicity_anomalies(prev_mins, prev_u[-1] + guard, cap)),
    )
