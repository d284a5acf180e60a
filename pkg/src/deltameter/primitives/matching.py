"""Constant-space exact matching (Crochemore-Perrin two-way).

The pattern is always a fragment of the text itself, so a pattern is just
``(start, length)``.  Kernels use 0-based offsets.
"""
from __future__ import annotations

from numba import njit


@njit(cache=True)
def _max_suffix(T, ps, m, flip):
    ms = -1
    j = 0
    k = 1
    p = 1
    while j + k < m:
        a = T[ps + j + k]
        b = T[ps + ms + k]
        if (a < b and not flip) or (a > b and flip):
            j += k
            k = 1
            p = j - ms
        elif a == b:
            if k != p:
                k += 1
            else:
                j += p
                k = 1
        else:
            ms = j
            j = ms + 1
            k = 1
            p = 1
    return ms, p


@njit(cache=True)
def tw_prepare(T, ps, m):
    """Critical factorisation of T[ps:ps+m]: returns (ell, shift, periodic)."""
    i1, p1 = _max_suffix(T, ps, m, False)
    i2, p2 = _max_suffix(T, ps, m, True)
    if i1 > i2:
        ell = i1
        per = p1
    else:
        ell = i2
        per = p2
    periodic = ell + per + 1 <= m
    if periodic:
        for t in range(ell + 1):
            if T[ps + t] != T[ps + per + t]:
                periodic = False
                break
    if not periodic:
        per = max(ell + 1, m - ell - 1) + 1
    return ell, per, periodic


@njit(cache=True)
def tw_next(T, ps, m, ell, per, periodic, hi, j, memory):
    """Next occurrence start >= j whose last letter is at most ``hi``.

    Returns ``(occ, j, memory)``; feed the last two back in to resume.
    ``occ`` is -1 once the window is exhausted.
    """
    last = hi - m + 1
    while j <= last:
        i = max(ell, memory) + 1
        while i < m and T[ps + i] == T[i + j]:
            i += 1
        if i >= m:
            i = ell
            while i > memory and T[ps + i] == T[i + j]:
                i -= 1
            found = i <= memory
            occ = j
            j += per
            if periodic:
                memory = m - per - 1
            if found:
                return occ, j, memory
        else:
            j += i - ell
            memory = -1
    return -1, j, memory


@njit(cache=True)
def tw_first(T, ps, m, lo, hi):
    """First occurrence of T[ps:ps+m] starting in [lo, hi-m+1], or -1."""
    if m == 0:
        return lo if lo <= hi + 1 else -1
    ell, per, periodic = tw_prepare(T, ps, m)
    occ, _, _ = tw_next(T, ps, m, ell, per, periodic, hi, lo, -1)
    return occ


def find_occurrences(text, pat_start: int, pat_len: int, lo: int, hi: int):
    """Yield, left to right, every q in [lo, hi-pat_len+1] with T[q..] equal to the pattern.

    1-based positions; the pattern is T[pat_start..pat_start+pat_len-1].
    """
    n = text.n
    if pat_len < 1 or pat_start < 1 or pat_start + pat_len - 1 > n:
        raise ValueError("pattern must be a non-empty fragment of the text")
    lo = max(lo, 1)
    hi = min(hi, n)
    if hi - lo + 1 < pat_len:
        return
    T = text.data
    ps = pat_start - 1
    ell, per, periodic = tw_prepare(T, ps, pat_len)
    j, memory = lo - 1, -1
    while True:
        occ, j, memory = tw_next(T, ps, pat_len, ell, per, periodic, hi - 1, j, memory)
        if occ < 0:
            return
        yield occ + 1


def naive_occurrences(text, pat_start: int, pat_len: int, lo: int, hi: int) -> list:
    data = text.letters()
    pat = data[pat_start - 1:pat_start - 1 + pat_len]
    return [q for q in range(max(lo, 1), min(hi, text.n) - pat_len + 2)
            if data[q - 1:q - 1 + pat_len] == pat]
