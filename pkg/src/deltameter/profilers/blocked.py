"""Phase algorithms with O(b) working words: anchor search plus direct or LCE extension.

Lengths k <= 2b are settled per block by computing, for every position
g, the longest fragment starting at g that also starts earlier (LS).
Longer lengths run in phases alpha >= 2 covering k in (alpha*b, (alpha+1)*b]:
every earlier occurrence of such a fragment contains the anchor
M_j = T[jb+1..(j+alpha-1)b], so each anchor hit is extended left into the
block and right into the next 2b letters, and the extensions are folded
into per-position END values.
"""
from __future__ import annotations

from typing import Iterable, Optional

import numpy as np
from numba import njit

from ..primitives.lce import lce_build, lce_fill, lce_query, workspace_words
from ..primitives.matching import tw_next, tw_prepare
from ..text import SpaceLedger
from .profile import Profile, clamp_budget, fold_kernel


@njit(cache=True)
def block_ls(T, g0, bl, cap_len, ls):
    """ls[i] = longest T[g0+i..] that also starts before g0+i, capped at min(cap_len, n-g0-i).

    Walks each diagonal q = g - d once, right to left, so the common
    extension is one more than its right neighbour or zero.
    """
    n = T.shape[0]
    for i in range(bl):
        ls[i] = 0
    last = g0 + bl - 1
    stop = min(n, last + cap_len)
    for d in range(1, last + 1):
        run = 0
        x = last + 1
        while x + run < stop and T[x - d + run] == T[x + run]:
            run += 1
        for x in range(last, max(g0, d) - 1, -1):
            run = (run + 1) if T[x - d] == T[x] else 0
            i = x - g0
            ls[i] = run if run > ls[i] else ls[i]
    for i in range(bl):
        cap = min(cap_len, n - g0 - i)
        if ls[i] > cap:
            ls[i] = cap


@njit(cache=True)
def small_lengths(T, b, out, ls, end, acc, diff):
    """S(k) for k <= min(2b, n) from per-block LS arrays."""
    n = T.shape[0]
    width = min(2 * b, n)
    w = acc[:width]
    for h in range(width):
        w[h] = 0
    g0 = 0
    while g0 < n:
        bl = min(b, n - g0)
        block_ls(T, g0, bl, 2 * b, ls)
        for i in range(bl):
            end[i] = ls[i] + i + 1
        fold_kernel(end, bl, 0, b, w, diff, g0, n)
        g0 += b
    for h in range(width):
        out[h] = w[h]


@njit(cache=True)
def _sweep(end, b):
    for i in range(1, b):
        if end[i - 1] > end[i]:
            end[i] = end[i - 1]


@njit(cache=True)
def blocked_kernel(T, b, alphas, out, ls, end, acc, diff):
    n = T.shape[0]
    for alpha in alphas:
        if alpha <= 1:
            small_lengths(T, b, out, ls, end, acc, diff)
            continue
        if alpha * b + 1 > n:
            continue
        width = min(b, n - alpha * b)
        w = acc[:width]
        for h in range(width):
            w[h] = 0
        Lm = (alpha - 1) * b
        j = 1
        while (j + alpha - 1) * b < n:
            a0 = j * b
            for i in range(b):
                end[i] = 0
            ell, per, periodic = tw_prepare(T, a0, Lm)
            pos = 0
            mem = -1
            rlim = min(2 * b - 1, n - (a0 + Lm))
            while True:
                occ, pos, mem = tw_next(T, a0, Lm, ell, per, periodic, a0 + Lm - 2, pos, mem)
                if occ < 0:
                    break
                lam = 0
                llim = min(b, occ)
                while lam < llim and T[occ - 1 - lam] == T[a0 - 1 - lam]:
                    lam += 1
                if lam == 0:
                    continue
                rho = 0
                while rho < rlim and T[occ + Lm + rho] == T[a0 + Lm + rho]:
                    rho += 1
                if rho + 1 > end[b - lam]:
                    end[b - lam] = rho + 1
            _sweep(end, b)
            fold_kernel(end, b, alpha, b, w, diff, (j - 1) * b, n)
            j += 1
        for h in range(width):
            out[alpha * b + h] = w[h]


@njit(cache=True)
def lce_kernel(T, b, alphas, merged, out, ls, end, acc, diff,
               cR, saR, rkR, tmpR, cntR, lcpR, tabR,
               cL, saL, rkL, tmpL, cntL, lcpL, tabL):
    n = T.shape[0]
    for alpha in alphas:
        if alpha <= 1:
            small_lengths(T, b, out, ls, end, acc, diff)
            continue
        if alpha * b + 1 > n:
            continue
        width = min(b, n - alpha * b)
        w = acc[:width]
        for h in range(width):
            w[h] = 0
        Lm = (alpha - 1) * b
        j = 1
        while (j + alpha - 1) * b < n:
            a0 = j * b
            for i in range(b):
                end[i] = 0
            rs = a0 + Lm
            rl = min(2 * b, n - rs)
            rlim = min(2 * b - 1, rl)
            curR = -1
            curL = -1
            flR = 0
            flL = 0
            fsR = 0
            fsL = 0
            NR = BR = nbR = 0
            NL = BL = nbL = 0
            ell, per, periodic = tw_prepare(T, a0, Lm)
            pos = 0
            mem = -1
            while True:
                occ, pos, mem = tw_next(T, a0, Lm, ell, per, periodic, a0 + Lm - 2, pos, mem)
                if occ < 0:
                    break
                if occ == 0:
                    continue
                # left: reversed text, fragment holding T[occ-1] against reversed B_j
                z = n - occ
                t = z // (2 * b)
                if t != curL:
                    curL = t
                    fsL = 2 * b * t
                    flL = min(4 * b, n - fsL)
                    lce_fill(T, fsL, flL, n - a0, b, True, cL)
                    NL, BL, nbL = lce_build(cL, flL, b, merged, saL, rkL, tmpL, cntL, lcpL, tabL)
                lam = lce_query(z - fsL, flL + 1, NL, rkL, lcpL, tabL, BL, nbL)
                lam = min(lam, b, occ)
                if lam == 0:
                    continue
                y = occ + Lm
                t = y // (2 * b)
                if t != curR:
                    curR = t
                    fsR = 2 * b * t
                    flR = min(4 * b, n - fsR)
                    lce_fill(T, fsR, flR, rs, rl, False, cR)
                    NR, BR, nbR = lce_build(cR, flR, rl, merged, saR, rkR, tmpR, cntR, lcpR, tabR)
                rho = lce_query(y - fsR, flR + 1, NR, rkR, lcpR, tabR, BR, nbR)
                rho = min(rho, rlim)
                if rho + 1 > end[b - lam]:
                    end[b - lam] = rho + 1
            _sweep(end, b)
            fold_kernel(end, b, alpha, b, w, diff, (j - 1) * b, n)
            j += 1
        for h in range(width):
            out[alpha * b + h] = w[h]


def _phase_list(n: int, b: int, phases: Optional[Iterable[int]]) -> np.ndarray:
    if phases is None:
        top = (n - 1) // b if n > 0 else 0
        phases = [1] + list(range(2, top + 1))
    return np.array(sorted({max(int(a), 1) for a in phases}), dtype=np.int64)


def _phase_buffers(b: int):
    ls = np.zeros(b, dtype=np.int64)
    end = np.zeros(b, dtype=np.int64)
    acc = np.zeros(2 * b, dtype=np.int64)
    diff = np.zeros(2 * b + 1, dtype=np.int64)
    return ls, end, acc, diff


def profile_blocked(text, b: int, ledger=None, phases: Optional[Iterable[int]] = None) -> Profile:
    """Exact profile with anchor search by two-way matching and naive extension.

    ``phases`` restricts the work to the given alpha values (alpha <= 1
    stands for all lengths up to 2b); other entries stay zero.
    """
    ledger = ledger if ledger is not None else SpaceLedger()
    n = text.n
    out = np.zeros(n, dtype=np.int64)
    if n == 0:
        return Profile(n=0, values=out, peak_words=ledger.peak, algo="blocked", b=b)
    b = clamp_budget(b, n)
    bufs = _phase_buffers(b)
    with ledger.hold(SpaceLedger.words(*bufs)):
        blocked_kernel(text.data, b, _phase_list(n, b, phases), out, *bufs)
    return Profile(n=n, values=out, peak_words=ledger.peak, algo="blocked", b=b)


def profile_lce(text, b: int, ledger=None, phases: Optional[Iterable[int]] = None,
                mode: str = "auto") -> Profile:
    """Exact profile with anchor extensions answered by per-fragment LCE indexes.

    Right extensions use fragments T[2bt+1..2bt+4b] indexed against the 2b
    letters after the anchor; left extensions use the same layout on the
    reversed text against the reversed block.  An index is rebuilt only
    when an anchor hit falls into a new fragment.
    """
    ledger = ledger if ledger is not None else SpaceLedger()
    n = text.n
    out = np.zeros(n, dtype=np.int64)
    if n == 0:
        return Profile(n=0, values=out, peak_words=ledger.peak, algo="lce", b=b)
    b = clamp_budget(b, n)
    if mode == "auto":
        merged = b * b > n
    elif mode in ("merged", "dictionary"):
        merged = mode == "merged"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    bufs = _phase_buffers(b)
    capR, capL = 6 * b + 2, 5 * b + 2
    right = _lce_arrays(capR)
    left = _lce_arrays(capL)
    words = SpaceLedger.words(*bufs) + workspace_words(capR) + workspace_words(capL)
    with ledger.hold(words):
        lce_kernel(text.data, b, _phase_list(n, b, phases), merged, out, *bufs, *right, *left)
    return Profile(n=n, values=out, peak_words=ledger.peak, algo="lce", b=b)


def _lce_arrays(cap: int):
    return (np.zeros(cap, dtype=np.int64), np.zeros(cap, dtype=np.int64), np.zeros(cap, dtype=np.int64),
            np.zeros(cap, dtype=np.int64), np.zeros(cap + 1, dtype=np.int64), np.zeros(cap, dtype=np.int64),
            np.zeros(4 * cap + 8, dtype=np.int64))
