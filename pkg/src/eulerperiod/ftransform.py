"""The doubling map ``f`` on finite sequences of nonnegative integers and its limit.

``f`` sends a length-``d`` sequence to a length-``2d`` one whose first half
is the input, so iterates agree on common prefixes and converge to an
infinite sequence, the f-transform of the seed.
"""
from __future__ import annotations

from typing import Iterable

from .core_arith import DomainError


def _as_seq(x: Iterable[int]) -> tuple[int, ...]:
    seq = tuple(int(v) for v in x)
    if not seq:
        raise DomainError("f is defined on nonempty sequences")
    if any(v < 0 for v in seq):
        raise DomainError(f"terms must be nonnegative: {seq}")
    return seq


def pivot(x: tuple[int, ...]) -> int | None:
    """Largest 1-based ``i < d`` with ``x_i != x_d``; None when all terms agree."""
    last = x[-1]
    for i in range(len(x) - 1, 0, -1):
        if x[i - 1] != last:
            return i
    return None


def apply_f(x: Iterable[int]) -> tuple[int, ...]:
    x = _as_seq(x)
    d = len(x)
    last = x[-1]
    s = pivot(x)
    if s is None:
        return x + (2 * last,) * d
    # s == 1 leaves the shifted block empty.
    return x + tuple(v + last for v in x[: s - 1]) + (2 * last,) * (d - s + 1)


def iterate_f(x: Iterable[int], times: int) -> tuple[int, ...]:
    seq = _as_seq(x)
    for _ in range(times):
        seq = apply_f(seq)
    return seq


def f_transform(seed: Iterable[int], count: int) -> list[int]:
    """First ``count`` terms of the f-transform of ``seed``."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    seq = _as_seq(seed)
    while len(seq) < count:
        seq = apply_f(seq)
    return list(seq[:count])
