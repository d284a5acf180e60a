"""Batched verification and search of many text fragments at once.

Both operations slide one Karp-Rabin window across the text.  In the
default verified mode every fingerprint hit is confirmed letter by
letter, so answers are exact; strict mode trusts the fingerprints.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .primitives.fingerprint import MERSENNE61, FingerprintConfig, fp_range, powmod, roll


@dataclass(frozen=True)
class ValidationInstance:
    """s patterns of a common length ell, each with positions to check.

    Patterns are fragments ``T[start..start+ell-1]`` given by their start.
    """

    ell: int
    patterns: tuple
    lists: tuple

    def __init__(self, ell: int, patterns: Sequence[int], lists: Sequence[Sequence[int]]):
        if len(patterns) != len(lists):
            raise ValueError("one position list per pattern")
        object.__setattr__(self, "ell", int(ell))
        object.__setattr__(self, "patterns", tuple(int(p) for p in patterns))
        object.__setattr__(self, "lists", tuple(tuple(int(q) for q in lst) for lst in lists))

    @property
    def N(self) -> int:
        return sum(len(lst) for lst in self.lists)

    @property
    def s(self) -> int:
        return len(self.patterns)

    def check(self, text) -> None:
        n = text.n
        if self.ell < 1:
            raise ValueError("pattern length must be positive")
        for p in self.patterns:
            if not 1 <= p <= n - self.ell + 1:
                raise ValueError(f"pattern start {p} out of range")
        for lst in self.lists:
            for q in lst:
                if not 1 <= q <= n - self.ell + 1:
                    raise ValueError(f"position {q} is not a valid start")

    def grouped(self, text) -> "ValidationInstance":
        """One representative per group of equal patterns, lists unioned."""
        data = text.data
        reps = {}
        for p, lst in zip(self.patterns, self.lists):
            key = data[p - 1:p - 1 + self.ell].tobytes()
            if key in reps:
                reps[key][1].update(lst)
            else:
                reps[key] = (p, set(lst))
        return ValidationInstance(self.ell, [p for p, _ in reps.values()],
                                  [sorted(q) for _, q in reps.values()])


@dataclass(frozen=True)
class SearchBeforeQuery:
    """Does ``T[pat_start..pat_start+pat_len-1]`` occur at some position < bound?"""

    pat_start: int
    pat_len: int
    bound: int

    def check(self, text) -> None:
        if self.pat_len < 1 or self.pat_start < 1 or self.pat_start + self.pat_len - 1 > text.n:
            raise ValueError("pattern must be a non-empty fragment of the text")
        if self.bound > self.pat_start:
            raise ValueError("bound must not exceed the pattern start")


@njit(cache=True)
def _letters_equal(T, a, b, ell):
    for t in range(ell):
        if T[a + t] != T[b + t]:
            return False
    return True


@njit(cache=True)
def validate_kernel(T, ell, pat_starts, owner, positions, flags, x, x_inv, verify):
    """flags[e] = T[positions[e]:+ell] equals the pattern at pat_starts[owner[e]] (0-based).

    Patterns are text fragments, so one left-to-right slide over the sorted
    pattern starts and list positions yields every fingerprint needed.
    Holds O(s + N) words.
    """
    N = positions.shape[0]
    if N == 0:
        return
    s = pat_starts.shape[0]
    keys = np.empty(s + N, dtype=np.int64)
    keys[:s] = pat_starts
    keys[s:] = positions
    order = np.argsort(keys, kind="mergesort")
    fps = np.empty(s + N, dtype=np.int64)
    x_top = powmod(x, ell - 1)
    cur = keys[order[0]]
    h = fp_range(T, cur, ell, x)
    for idx in range(s + N):
        e = order[idx]
        q = keys[e]
        while cur < q:
            h = roll(h, T[cur], T[cur + ell], x_inv, x_top)
            cur += 1
        fps[e] = h
    for e in range(N):
        ok = fps[s + e] == fps[owner[e]]
        if ok and verify:
            ok = _letters_equal(T, positions[e], pat_starts[owner[e]], ell)
        flags[e] = ok


def validate_words(s: int, N: int) -> int:
    """Words held by ``validate_kernel`` plus the flag output it fills."""
    return 3 * (s + N) + N + 8


def multi_validate(inst: ValidationInstance, text, cfg: FingerprintConfig,
                   strict: bool = False, ledger=None) -> list:
    """Per-pattern lists of booleans: does the pattern occur at each listed position?"""
    if cfg.p != MERSENNE61:
        raise ValueError("compiled kernels need the 2**61-1 modulus")
    if inst.N == 0:
        return [[] for _ in inst.lists]
    inst.check(text)
    live = [k for k, lst in enumerate(inst.lists) if lst]
    pat_starts = np.array([inst.patterns[k] - 1 for k in live], dtype=np.int64)
    owner = np.concatenate([np.full(len(inst.lists[k]), r, dtype=np.int64) for r, k in enumerate(live)])
    positions = np.concatenate([np.asarray(inst.lists[k], dtype=np.int64) - 1 for k in live])
    flags = np.zeros(positions.shape[0], dtype=np.bool_)
    words = validate_words(len(live), inst.N) + 2 * inst.N
    if ledger is not None:
        ledger.alloc(words)
    try:
        validate_kernel(text.data, inst.ell, pat_starts, owner, positions, flags,
                        cfg.x, cfg.x_inv, not strict)
    finally:
        if ledger is not None:
            ledger.free(words)
    out = [[] for _ in inst.lists]
    e = 0
    for k in live:
        m = len(inst.lists[k])
        out[k] = flags[e:e + m].tolist()
        e += m
    return out


@njit(cache=True)
def _slide_fps(T, m, starts, idx, cnt, x, x_inv, out):
    """out[r] = fingerprint of T[starts[idx[r]]:+m] for r < cnt; idx sorted by start."""
    x_top = powmod(x, m - 1)
    cur = starts[idx[0]]
    h = fp_range(T, cur, m, x)
    for r in range(cnt):
        q = starts[idx[r]]
        while cur < q:
            h = roll(h, T[cur], T[cur + m], x_inv, x_top)
            cur += 1
        out[r] = h


@njit(cache=True)
def search_before_kernel(T, starts, lens, bounds, answers, x, x_inv, verify):
    """answers[k] = T[starts[k]:+lens[k]] occurs at some q < bounds[k] (0-based).

    Queries are bucketed by length.  Per bucket, one slide over the
    pattern starts gives their fingerprints and a second slide from the
    text start up to the largest bound looks them up.  Holds O(#queries) words.
    """
    Q = starts.shape[0]
    if Q == 0:
        return
    by_len = np.argsort(lens, kind="mergesort")
    fps = np.empty(Q, dtype=np.int64)
    order = np.empty(Q, dtype=np.int64)
    left = np.empty(Q, dtype=np.int64)
    a = 0
    while a < Q:
        m = lens[by_len[a]]
        z = a
        top = 0
        while z < Q and lens[by_len[z]] == m:
            k = by_len[z]
            answers[k] = False
            if bounds[k] > top:
                top = bounds[k]
            z += 1
        cnt = z - a
        if top == 0:
            a = z
            continue
        # members of the bucket ordered by start, then their fingerprints
        for r in range(cnt):
            left[r] = starts[by_len[a + r]]
        sub = np.argsort(left[:cnt], kind="mergesort")
        for r in range(cnt):
            order[r] = by_len[a + sub[r]]
        _slide_fps(T, m, starts, order, cnt, x, x_inv, fps)
        # reorder the members by fingerprint
        sub = np.argsort(fps[:cnt], kind="mergesort")
        for r in range(cnt):
            left[r] = order[sub[r]]
        for r in range(cnt):
            order[r] = left[r]
            left[r] = fps[sub[r]]
        for r in range(cnt):
            fps[r] = left[r]
        # open members per run of equal fingerprints, stored at the run head
        open_total = cnt
        r = 0
        while r < cnt:
            w = r
            while w < cnt and fps[w] == fps[r]:
                w += 1
            left[r] = w - r
            r = w
        x_top = powmod(x, m - 1)
        h = fp_range(T, 0, m, x)
        q = 0
        while True:
            g = np.searchsorted(fps[:cnt], h)
            if g < cnt and fps[g] == h and left[g] > 0:
                w = g
                while w < cnt and fps[w] == h:
                    k = order[w]
                    if k >= 0:
                        if bounds[k] <= q:
                            order[w] = -1 - k
                            left[g] -= 1
                            open_total -= 1
                        elif (not verify) or _letters_equal(T, q, starts[k], m):
                            answers[k] = True
                            order[w] = -1 - k
                            left[g] -= 1
                            open_total -= 1
                    w += 1
            q += 1
            if q >= top or open_total == 0:
                break
            h = roll(h, T[q - 1], T[q + m - 1], x_inv, x_top)
        a = z


def search_words(Q: int) -> int:
    return 6 * Q + 8


def multi_search_before(queries: Sequence[SearchBeforeQuery], text, cfg: FingerprintConfig,
                        strict: bool = False, ledger=None) -> list:
    """Per query: does its pattern occur starting strictly before ``bound``?"""
    if cfg.p != MERSENNE61:
        raise ValueError("compiled kernels need the 2**61-1 modulus")
    for qr in queries:
        qr.check(text)
    Q = len(queries)
    if Q == 0:
        return []
    starts = np.array([qr.pat_start - 1 for qr in queries], dtype=np.int64)
    lens = np.array([qr.pat_len for qr in queries], dtype=np.int64)
    bounds = np.array([qr.bound - 1 for qr in queries], dtype=np.int64)
    answers = np.zeros(Q, dtype=np.bool_)
    words = search_words(Q)
    if ledger is not None:
        ledger.alloc(words)
    try:
        search_before_kernel(text.data, starts, lens, bounds, answers, cfg.x, cfg.x_inv, not strict)
    finally:
        if ledger is not None:
            ledger.free(words)
    return answers.tolist()
