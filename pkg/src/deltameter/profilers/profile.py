"""The Profile result type and the O(b) counting fold shared by the phase algorithms."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from numba import njit


@dataclass
class Profile:
    """S_T(k) for k = 1..n (``values[k-1]``) with the space the computation needed."""

    n: int
    values: np.ndarray
    peak_words: int
    algo: str
    b: Optional[int] = None
    warnings: list = field(default_factory=list)

    def __getitem__(self, k: int) -> int:
        """S_T(k) for 1 <= k <= n, and 0 beyond n."""
        if k < 1:
            raise IndexError("k starts at 1")
        return int(self.values[k - 1]) if k <= self.n else 0

    def tolist(self) -> list:
        return [int(v) for v in self.values]

    def delta(self) -> tuple:
        """(max_k S(k)/k as a Fraction, smallest k attaining it)."""
        if self.n == 0:
            raise ValueError("delta of the empty text is undefined")
        best_s, best_k = int(self.values[0]), 1
        for k in range(2, self.n + 1):
            s = int(self.values[k - 1])
            if s * best_k > best_s * k:
                best_s, best_k = s, k
        return Fraction(best_s, best_k), best_k


def clamp_budget(b: int, n: int) -> int:
    """Budgets above n behave as b = n (a single block covers the text)."""
    if b < 1:
        raise ValueError("budget b must be >= 1")
    return min(int(b), max(n, 1))


@njit(cache=True)
def fold_kernel(end, count, alpha, b, acc, diff, g0, n):
    """Add each position's unique lengths to ``acc`` (lengths alpha*b+1 .. alpha*b+width).

    Position i (1-based, block start g0 0-based) counts every k with
    alpha*b - i + end[i-1] < k <= min(width, n - g0 - i + 1 in absolute terms).
    """
    width = acc.shape[0]
    base = alpha * b
    for h in range(width + 1):
        diff[h] = 0
    for i in range(1, count + 1):
        lo = base - i + end[i - 1] + 1
        if lo < base + 1:
            lo = base + 1
        hi = n - (g0 + i - 1)
        if hi > base + width:
            hi = base + width
        if lo <= hi:
            diff[lo - base - 1] += 1
            diff[hi - base] -= 1
    run = 0
    for h in range(width):
        run += diff[h]
        acc[h] += run


def counts_fold(end, alpha: int, b: int, s, n: Optional[int] = None, block_start: int = 1):
    """Fold END (or LS, see below) for one block into the phase counters ``s``.

    ``s[h]`` counts k = alpha*b + 1 + h.  Position i contributes to every k
    with k > alpha*b - i + end[i], clamped to the phase range and, when
    ``n`` is given, to lengths that fit in the text from position
    ``block_start + i - 1``.  An LS array folds with alpha = 0 after the
    shift ``end[i] = LS[i] + i``.
    """
    end = np.asarray(end, dtype=np.int64)
    s = np.asarray(s)
    acc = np.zeros(s.shape[0], dtype=np.int64)
    diff = np.zeros(s.shape[0] + 1, dtype=np.int64)
    limit = n if n is not None else 1 << 62
    fold_kernel(end, end.shape[0], alpha, b, acc, diff, block_start - 1, limit)
    s += acc.astype(s.dtype)
    return s


def prefix_max(end):
    """END after the monotone sweep END[i] = max(END[i-1], END[i])."""
    return np.maximum.accumulate(np.asarray(end, dtype=np.int64)).tolist()
