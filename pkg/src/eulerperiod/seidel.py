"""Seidel-Entringer-Arnold triangle, Euler up/down numbers, and an enumeration oracle.

Row ``n`` holds ``e(n, 1..n)``, the number of up/down permutations of
``{1..n}`` ending in ``i``.  Each row is a running sum of the previous one:
left-to-right prefix sums for even ``n``, right-to-left suffix sums for odd
``n``.  Rows can be generated exactly (``modulus=None``) or modulo ``q``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate, islice
from typing import Any, Iterator, Sequence

import numpy as np

from .core_arith import DomainError, is_power_of_two

_INT64_SAFE_MODULUS = 2**31
_UINT64_MODULUS = 2**64


@dataclass(frozen=True)
class TriangleRow:
    n: int
    entries: tuple[int, ...]
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1 or len(self.entries) != self.n:
            raise DomainError(f"row {self.n} must have {self.n} entries, got {len(self.entries)}")

    def __getitem__(self, i: int) -> int:
        """1-based access: ``row[i] == e(n, i)``."""
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return self.entries[i - 1]

    def total(self) -> int:
        s = sum(self.entries)
        return s if self.modulus is None else s % self.modulus


@dataclass(frozen=True)
class EulerSequence:
    modulus: int | None
    terms: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, n):
        return self.terms[n]


def _check_modulus(modulus: int | None) -> None:
    if modulus is not None and modulus < 1:
        raise DomainError(f"modulus must be >= 1, got {modulus}")


def next_row(prev: TriangleRow) -> TriangleRow:
    """Row ``prev.n + 1`` from ``prev``, using O(n) additions."""
    n = prev.n + 1
    q = prev.modulus
    if n % 2 == 0:
        sums = list(accumulate(prev.entries, initial=0))
    else:
        sums = list(accumulate(reversed(prev.entries), initial=0))[::-1]
    if q is not None:
        sums = [x % q for x in sums]
    return TriangleRow(n, tuple(sums), q)


# Row backends.  Each exposes first(), step(prev, n), total(row), to_ints(row).
# The numpy ones are used whenever partial sums provably fit in 64 bits.


class _PyKernel:
    """Python ints; exact when ``modulus`` is None, otherwise reduced each step."""

    def __init__(self, modulus: int | None):
        self.modulus = modulus
        self.mask = modulus - 1 if modulus is not None and is_power_of_two(modulus) else None

    def _reduce(self, xs: list[int]) -> list[int]:
        if self.mask is not None:
            m = self.mask
            return [x & m for x in xs]
        if self.modulus is not None:
            q = self.modulus
            return [x % q for x in xs]
        return xs

    def first(self) -> list[int]:
        return self._reduce([1])

    def step(self, prev: list[int], n: int) -> list[int]:
        if n % 2 == 0:
            return self._reduce(list(accumulate(prev, initial=0)))
        return self._reduce(list(accumulate(reversed(prev), initial=0))[::-1])

    def total(self, row: list[int]) -> int:
        s = sum(row)
        return s if self.modulus is None else s % self.modulus

    def to_ints(self, row: list[int]) -> list[int]:
        return row


class _Int64Kernel:
    """``q < 2**31``: prefix sums of fewer than ``2**32`` residues stay below ``2**63``."""

    dtype = np.int64

    def __init__(self, modulus: int):
        self.modulus = modulus

    def _reduce(self, xs: np.ndarray) -> np.ndarray:
        return xs % self.modulus

    def first(self) -> np.ndarray:
        return self._reduce(np.ones(1, dtype=self.dtype))

    def step(self, prev: np.ndarray, n: int) -> np.ndarray:
        out = np.zeros(n, dtype=self.dtype)
        if n % 2 == 0:
            np.cumsum(prev, out=out[1:])
        else:
            np.cumsum(prev[::-1], out=out[-2::-1])
        return self._reduce(out)

    def total(self, row: np.ndarray) -> int:
        return int(self._reduce(row.sum(dtype=self.dtype)))

    def to_ints(self, row: np.ndarray) -> list[int]:
        return row.tolist()


class _UInt64Kernel(_Int64Kernel):
    """Powers of two up to ``2**64``: wrapping uint64 arithmetic is exact mod ``2**64``."""

    dtype = np.uint64

    def __init__(self, modulus: int):
        self.modulus = modulus
        self.mask = np.uint64(modulus - 1)

    def _reduce(self, xs):
        return xs & self.mask


def _kernel(modulus: int | None):
    if modulus is None:
        return _PyKernel(None)
    if is_power_of_two(modulus) and modulus <= _UINT64_MODULUS:
        return _UInt64Kernel(modulus)
    if modulus < _INT64_SAFE_MODULUS:
        return _Int64Kernel(modulus)
    return _PyKernel(modulus)


def iter_raw_rows(modulus: int | None = None) -> Iterator[Any]:
    """Endless stream of rows 1, 2, ... in the backend's native container.

    Only the current row is kept alive.  Entries are ``int`` lists for the
    exact ring and large moduli, ``numpy`` arrays otherwise.
    """
    _check_modulus(modulus)
    k = _kernel(modulus)
    row = k.first()
    n = 1
    while True:
        yield row
        n += 1
        row = k.step(row, n)


def iter_rows(modulus: int | None = None) -> Iterator[TriangleRow]:
    k = _kernel(modulus)
    for n, row in enumerate(iter_raw_rows(modulus), start=1):
        yield TriangleRow(n, tuple(int(x) for x in k.to_ints(row)), modulus)


def triangle_rows(count: int, modulus: int | None = None) -> list[TriangleRow]:
    """Rows 1..count, fully retained."""
    if count < 0:
        raise DomainError("count must be >= 0")
    return list(islice(iter_rows(modulus), count))


def euler_sequence(count: int, modulus: int | None = None) -> EulerSequence:
    """``E_0 .. E_{count-1}``, exactly or reduced mod ``modulus``.

    ``E_0 = 1`` is prepended; ``E_n`` for ``n >= 1`` is the sum of row ``n``.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    _check_modulus(modulus)
    k = _kernel(modulus)
    terms = [1 if modulus is None else 1 % modulus]
    for row in islice(iter_raw_rows(modulus), count - 1):
        terms.append(k.total(row))
    return EulerSequence(modulus, tuple(terms))


def is_up_down(perm: Sequence[int]) -> bool:
    """Rises into even (1-based) positions, falls into odd ones."""
    for i in range(2, len(perm) + 1):
        a, b = perm[i - 2], perm[i - 1]
        if (i % 2 == 0) != (a < b):
            return False
    return True


def brute_force_entringer(n: int) -> TriangleRow:
    """Count up/down permutations of ``{1..n}`` by their last value.

    Enumerates the permutations directly by backtracking, pruning a prefix
    as soon as it breaks the alternation.  Does not use the recurrence.
    """
    if not 1 <= n <= 10:
        raise DomainError(f"brute force limited to 1 <= n <= 10, got {n}")
    counts = [0] * n
    used = [False] * (n + 1)
    perm: list[int] = []

    def extend() -> None:
        pos = len(perm) + 1
        if pos > n:
            counts[perm[-1] - 1] += 1
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            if perm and (pos % 2 == 0) != (perm[-1] < v):
                continue
            used[v] = True
            perm.append(v)
            extend()
            perm.pop()
            used[v] = False

    extend()
    return TriangleRow(n, tuple(counts))
