"""Residues, capped 2-adic valuations and small-modulus factorization.

Exact values are plain Python ``int`` objects, which are already unbounded;
nothing here wraps them.  Residues carry their modulus so that mixing rings
is caught early.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterator

import numpy as np

MAX_FACTOR_INPUT = 2**32


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


class InvariantError(RuntimeError):
    """A property that must always hold was observed to fail."""


def is_power_of_two(q: int) -> bool:
    return q >= 1 and q & (q - 1) == 0


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise DomainError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise DomainError(f"value {self.value} not reduced mod {self.modulus}")

    @classmethod
    def reduce(cls, a: int, modulus: int) -> Residue:
        if modulus < 1:
            raise DomainError(f"modulus must be >= 1, got {modulus}")
        return cls(a % modulus, modulus)

    def _other(self, other: Residue | int) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise DomainError(f"moduli differ: {self.modulus} vs {other.modulus}")
            return other.value
        return other

    def __add__(self, other: Residue | int) -> Residue:
        return Residue((self.value + self._other(other)) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Residue | int) -> Residue:
        return Residue((self.value - self._other(other)) % self.modulus, self.modulus)

    def __mul__(self, other: Residue | int) -> Residue:
        return Residue((self.value * self._other(other)) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __int__(self) -> int:
        return self.value


@total_ordering
@dataclass(frozen=True, eq=False)
class CappedValuation:
    """2-adic valuation known exactly below ``cap``; ``value is None`` means TOP (>= cap)."""

    cap: int
    value: int | None

    def __post_init__(self) -> None:
        if self.cap < 1:
            raise DomainError(f"cap must be >= 1, got {self.cap}")
        if self.value is not None and not 0 <= self.value < self.cap:
            raise DomainError(f"exact valuation {self.value} outside [0, {self.cap})")

    @classmethod
    def top(cls, cap: int) -> CappedValuation:
        return cls(cap, None)

    @classmethod
    def from_int(cls, v: int, cap: int) -> CappedValuation:
        """Build from the saturating integer encoding used internally (``v >= cap`` is TOP)."""
        return cls(cap, None) if v >= cap else cls(cap, v)

    @property
    def is_top(self) -> bool:
        return self.value is None

    def _key(self) -> float:
        return math.inf if self.value is None else self.value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CappedValuation):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other: CappedValuation) -> bool:
        if not isinstance(other, CappedValuation):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def below(self, k: int) -> bool:
        """Decide ``valuation < k``; only meaningful for ``k <= cap``."""
        if k > self.cap:
            raise DomainError(f"predicate '< {k}' undecidable at cap {self.cap}")
        return self.value is not None and self.value < k

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


def v2_int(x: int, cap: int) -> int:
    """Valuation of a residue mod ``2**cap`` as a saturating int (``cap`` for zero)."""
    if x == 0:
        return cap
    return min((x & -x).bit_length() - 1, cap)


def v2_array(xs: np.ndarray, cap: int) -> np.ndarray:
    """Vectorised :func:`v2_int` for ``uint64`` arrays."""
    xs = xs.astype(np.uint64, copy=False)
    low = xs & (~xs + np.uint64(1))
    out = np.bitwise_count(low - np.uint64(1)).astype(np.int64)
    out[xs == 0] = cap
    np.minimum(out, cap, out=out)
    return out


def v2_capped(x: Residue) -> CappedValuation:
    q = x.modulus
    if q < 2 or not is_power_of_two(q):
        raise DomainError(f"modulus {q} is not a power of two >= 2")
    cap = q.bit_length() - 1
    return CappedValuation.from_int(v2_int(x.value, cap), cap)


@dataclass(frozen=True)
class PrimePowerFactorization:
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)) or any(a < 1 for _, a in self.factors):
            raise DomainError(f"malformed factorization {self.factors}")

    @property
    def value(self) -> int:
        return math.prod(p**a for p, a in self.factors)

    def prime_powers(self) -> list[int]:
        return [p**a for p, a in self.factors]

    @property
    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def factorize(q: int) -> PrimePowerFactorization:
    if q < 2:
        raise DomainError(f"cannot factorize {q}")
    if q > MAX_FACTOR_INPUT:
        raise DomainError(f"{q} exceeds trial-division limit 2**32")
    factors = []
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            factors.append((p, a))
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return PrimePowerFactorization(tuple(factors))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n).factors == ((n, 1),)


def primes_below(n: int) -> list[int]:
    if n < 3:
        return []
    sieve = bytearray([1]) * n
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n, p)))
    return [i for i, flag in enumerate(sieve) if flag]
