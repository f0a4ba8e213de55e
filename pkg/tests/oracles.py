"""Slow reference implementations used only as test oracles."""
from __future__ import annotations


def naive_rows(count, modulus=None):
    """Entringer rows straight from the double-sum recurrence, O(n^2) per row."""
    rows = [[1 if modulus is None else 1 % modulus]]
    for n in range(2, count + 1):
        prev = rows[-1]
        if n % 2 == 0:
            row = [sum(prev[j] for j in range(i - 1)) for i in range(1, n + 1)]
        else:
            row = [sum(prev[j] for j in range(i - 1, n - 1)) for i in range(1, n + 1)]
        if modulus is not None:
            row = [x % modulus for x in row]
        rows.append(row)
    return rows[:count]


def v2_exact(x):
    """2-adic valuation of an exact integer; None stands for infinity."""
    if x == 0:
        return None
    v = 0
    while x % 2 == 0:
        x //= 2
        v += 1
    return v


def naive_profile(seq, min_margin):
    """Smallest s admitting any period d <= N // (min_margin + 1), then smallest d."""
    n = len(seq)
    max_d = max(1, n // (min_margin + 1))
    for s in range(n):
        for d in range(1, max_d + 1):
            if all(seq[i] == seq[i + d] for i in range(s, n - d)):
                return s, d
    return n, 1
