"""Periods, Lyndon roots and runs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from .fingerprint import FingerprintConfig, fp_range


@njit(cache=True)
def period_kernel(T, s, length, fail):
    """Smallest period of T[s:s+length] from a border array held in ``fail``."""
    fail[0] = 0
    k = 0
    for i in range(1, length):
        while k > 0 and T[s + i] != T[s + k]:
            k = fail[k - 1]
        if T[s + i] == T[s + k]:
            k += 1
        fail[i] = k
    return length - fail[length - 1]


@njit(cache=True)
def least_rotation(T, s, length):
    """Start offset of the lexicographically least rotation of T[s:s+length] (O(1) space)."""
    i = 0
    j = 1
    k = 0
    while i < length and j < length and k < length:
        a = T[s + (i + k) % length]
        b = T[s + (j + k) % length]
        if a == b:
            k += 1
        else:
            if a > b:
                i += k + 1
            else:
                j += k + 1
            if i == j:
                j += 1
            k = 0
    return min(i, j)


@njit(cache=True)
def extend_period(T, s, e, p, lo, hi):
    """Grow T[s..e] (0-based, inclusive) while period p holds, staying inside [lo, hi]."""
    while s - 1 >= lo and T[s - 1] == T[s - 1 + p]:
        s -= 1
    while e + 1 <= hi and T[e + 1] == T[e + 1 - p]:
        e += 1
    return s, e


def period_of(text, i: int, j: int, ledger=None) -> int:
    """per(T[i..j]) using a border array of j-i+1 words."""
    if not 1 <= i <= j <= text.n:
        raise ValueError(f"bad fragment [{i}, {j}]")
    length = j - i + 1
    fail = np.empty(length, dtype=np.int64)
    if ledger is not None:
        ledger.alloc(length)
    try:
        return int(period_kernel(text.data, i - 1, length, fail))
    finally:
        if ledger is not None:
            ledger.free(length)


@dataclass(frozen=True)
class Run:
    """Maximal periodic fragment T[s..e] = t[q..|t|] t^beta t[1..gamma] (1-based).

    ``root_start`` is a position where the Lyndon root t occurs inside the run.
    Lengths that are an exact multiple of the period take gamma = |t|.
    """

    s: int
    e: int
    period: int
    root_start: int
    offset: int
    root_fp: Optional[int] = None

    @property
    def length(self) -> int:
        return self.e - self.s + 1

    @property
    def gamma(self) -> int:
        rest = self.length - (self.period - self.offset + 1)
        return (rest - 1) % self.period + 1

    @property
    def beta(self) -> int:
        rest = self.length - (self.period - self.offset + 1)
        return (rest - self.gamma) // self.period

    def root(self, text) -> list:
        return text.letters()[self.root_start - 1:self.root_start - 1 + self.period]

    def phase(self, pos: int) -> int:
        """Index in [1, |t|] of the root letter found at text position ``pos``."""
        return (pos - self.root_start) % self.period + 1


def make_run(text, s: int, e: int, p: int, cfg: Optional[FingerprintConfig] = None) -> Run:
    r0 = int(least_rotation(text.data, s - 1, p))
    offset = (p - r0) % p + 1
    root_fp = int(fp_range(text.data, s - 1 + r0, p, cfg.x)) if cfg is not None else None
    return Run(s=s, e=e, period=p, root_start=s + r0, offset=offset, root_fp=root_fp)


def extend_run(text, i: int, j: int, p: int, window_lo: int, window_hi: int,
               cfg: Optional[FingerprintConfig] = None) -> Run:
    """Maximal run with period p through T[i..j], clipped to the window."""
    window_lo = max(window_lo, 1)
    window_hi = min(window_hi, text.n)
    i, j = max(i, window_lo), min(j, window_hi)
    if i > j or p < 1:
        raise ValueError("seed fragment does not meet the window")
    T = text.data
    for x in range(i - 1, j - p):
        if T[x] != T[x + p]:
            raise ValueError(f"{p} is not a period of T[{i}..{j}]")
    s, e = extend_period(T, i - 1, j - 1, p, window_lo - 1, window_hi - 1)
    return make_run(text, int(s) + 1, int(e) + 1, p, cfg)
