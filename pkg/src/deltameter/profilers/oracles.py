"""Reference profiles: a brute-force enumerator and a linear-space suffix-array method."""
from __future__ import annotations

import numpy as np
from numba import njit

from ..text import SpaceLedger
from .profile import Profile

ORACLE_LIMIT = 4096


def profile_bruteforce(text, limit: int = ORACLE_LIMIT) -> Profile:
    """Count distinct substrings of every length by hashing all of them."""
    n = text.n
    if n > limit:
        raise ValueError(f"text of length {n} exceeds the brute-force limit {limit}")
    letters = text.letters()
    if letters and max(letters) < 0x110000:
        s = "".join(map(chr, letters))
        values = [len({s[i:i + k] for i in range(n - k + 1)}) for k in range(1, n + 1)]
    else:
        tup = tuple(letters)
        values = [len({tup[i:i + k] for i in range(n - k + 1)}) for k in range(1, n + 1)]
    return Profile(n=n, values=np.array(values, dtype=np.int64), peak_words=0, algo="brute")


def suffix_array(data: np.ndarray) -> np.ndarray:
    """Suffix array by prefix doubling over (rank, rank shifted by h) pairs."""
    n = data.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = np.unique(data, return_inverse=True)[1].astype(np.int64)
    h = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[:n - h] = rank[h:] if h < n else second[:0]
        sa = np.lexsort((second, rank))
        key_r, key_s = rank[sa], second[sa]
        fresh = np.empty(n, dtype=np.int64)
        fresh[0] = 0
        fresh[1:] = np.cumsum((key_r[1:] != key_r[:-1]) | (key_s[1:] != key_s[:-1]))
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = fresh
        if fresh[-1] == n - 1:
            return sa.astype(np.int64)
        h *= 2


@njit(cache=True)
def kasai(data, sa, rank, lcp):
    n = data.shape[0]
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            lcp[0] = 0
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and data[i + h] == data[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1


def profile_linear(text, ledger=None) -> Profile:
    """Each suffix adds one to S(k) for lcp-with-predecessor < k <= its length."""
    ledger = ledger if ledger is not None else SpaceLedger()
    n = text.n
    if n == 0:
        return Profile(n=0, values=np.zeros(0, dtype=np.int64), peak_words=ledger.peak, algo="oracle")
    words = 4 * n + 1
    with ledger.hold(words):
        sa = suffix_array(text.data)
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = np.arange(n, dtype=np.int64)
        lcp = np.zeros(n, dtype=np.int64)
        kasai(text.data, sa, rank, lcp)
        diff = np.zeros(n + 1, dtype=np.int64)
        length = n - sa
        np.add.at(diff, lcp, 1)
        np.add.at(diff, length, -1)
        values = np.cumsum(diff)[:n]
    return Profile(n=n, values=values.astype(np.int64), peak_words=ledger.peak, algo="oracle")
