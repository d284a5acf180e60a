"""Longest-common-extension index over a short fragment and a reference.

The index covers ``F $ R #`` where F is a text fragment (at most 4b
letters) and R a reference fragment (at most 2b letters).  It is built
from a suffix array (prefix doubling with counting sort), Kasai's LCP
array and a block-decomposed sparse table, so storage stays linear in
``|F| + |R|``.  Queries cost O(log b).

Letters are first reduced to small ranks through a sorted dictionary.
In ``merged`` mode the dictionary holds the letters of both pieces, so
every lcp is exact.  In ``dictionary`` mode it holds only the letters of
R and all other letters share one rank; lcp between F and R stays exact
(a shared rank never equals a letter of R) but lcp between two F
suffixes may overshoot.
"""
from __future__ import annotations

import numpy as np
from numba import njit


def workspace_words(capacity: int) -> int:
    """Words held by a workspace able to index ``capacity`` letters (including $ and #)."""
    return 5 * capacity + 1 + 4 * capacity + 8


class LceWorkspace:
    """Preallocated buffers for repeated index builds of bounded size."""

    def __init__(self, capacity: int, ledger=None):
        capacity = max(int(capacity), 2)
        self.capacity = capacity
        self.conc = np.zeros(capacity, dtype=np.int64)
        self.sa = np.zeros(capacity, dtype=np.int64)
        self.rk = np.zeros(capacity, dtype=np.int64)
        self.tmp = np.zeros(capacity, dtype=np.int64)
        self.lcp = np.zeros(capacity, dtype=np.int64)
        self.cnt = np.zeros(capacity + 1, dtype=np.int64)
        self.table = np.zeros(4 * capacity + 8, dtype=np.int64)
        self.words = workspace_words(capacity)
        self.ledger = ledger
        if ledger is not None:
            ledger.alloc(self.words)

    def release(self):
        if self.ledger is not None:
            self.ledger.free(self.words)
            self.ledger = None


@njit(cache=True)
def lce_fill(T, fs, fl, rs, rl, reverse, conc):
    """Copy F = T[fs:fs+fl] and R = T[rs:rs+rl] into ``conc``.

    With ``reverse`` the offsets address the reversed text.
    """
    n = T.shape[0]
    for k in range(fl):
        conc[k] = T[n - 1 - (fs + k)] if reverse else T[fs + k]
    for k in range(rl):
        conc[fl + 1 + k] = T[n - 1 - (rs + k)] if reverse else T[rs + k]


@njit(cache=True)
def _ilog2(v):
    r = 0
    while v > 1:
        v >>= 1
        r += 1
    return r


@njit(cache=True)
def lce_build(conc, fl, rl, merged, sa, rk, tmp, cnt, lcp, table):
    """Build the index in place; letters must already sit in ``conc``.

    Returns ``(N, B, nb)``: indexed length, RMQ block size and block count.
    """
    N = fl + rl + 2
    # rank reduction through a sorted dictionary
    m = 0
    if merged:
        for k in range(fl):
            tmp[m] = conc[k]
            m += 1
    for k in range(rl):
        tmp[m] = conc[fl + 1 + k]
        m += 1
    keys = tmp[:m]
    keys.sort()
    u = 0
    for k in range(m):
        if u == 0 or tmp[k] != tmp[u - 1]:
            tmp[u] = tmp[k]
            u += 1
    dic = tmp[:u]
    for k in range(N - 1):
        if k == fl:
            continue
        v = conc[k]
        r = np.searchsorted(dic, v)
        if r < u and dic[r] == v:
            conc[k] = r + 1
        else:
            conc[k] = u + 1
    conc[fl] = u + 2
    conc[N - 1] = 0

    # suffix array by prefix doubling
    top = u + 2
    for v in range(top + 1):
        cnt[v] = 0
    for i in range(N):
        cnt[conc[i]] += 1
    for v in range(1, top + 1):
        cnt[v] += cnt[v - 1]
    for i in range(N - 1, -1, -1):
        cnt[conc[i]] -= 1
        sa[cnt[conc[i]]] = i
    cls = 0
    tmp[sa[0]] = 0
    for x in range(1, N):
        if conc[sa[x]] != conc[sa[x - 1]]:
            cls += 1
        tmp[sa[x]] = cls
    for i in range(N):
        rk[i] = tmp[i]
    k = 1
    while cls < N - 1:
        p = 0
        for i in range(N - k, N):
            tmp[p] = i
            p += 1
        for x in range(N):
            if sa[x] >= k:
                tmp[p] = sa[x] - k
                p += 1
        for v in range(cls + 1):
            cnt[v] = 0
        for i in range(N):
            cnt[rk[i]] += 1
        for v in range(1, cls + 1):
            cnt[v] += cnt[v - 1]
        for x in range(N - 1, -1, -1):
            i = tmp[x]
            cnt[rk[i]] -= 1
            sa[cnt[rk[i]]] = i
        c = 0
        tmp[sa[0]] = 0
        for x in range(1, N):
            a = sa[x - 1]
            b = sa[x]
            a2 = rk[a + k] if a + k < N else -1
            b2 = rk[b + k] if b + k < N else -1
            if rk[a] != rk[b] or a2 != b2:
                c += 1
            tmp[b] = c
        for i in range(N):
            rk[i] = tmp[i]
        cls = c
        k *= 2

    # Kasai
    h = 0
    lcp[0] = 0
    for i in range(N):
        r = rk[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < N and j + h < N and conc[i + h] == conc[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1

    # sparse table over block minima
    B = max(1, _ilog2(N))
    nb = (N + B - 1) // B
    for bl in range(nb):
        lo = bl * B
        hi = min(N, lo + B)
        mn = lcp[lo]
        for x in range(lo + 1, hi):
            if lcp[x] < mn:
                mn = lcp[x]
        table[bl] = mn
    level = 1
    while (1 << level) <= nb:
        half = 1 << (level - 1)
        for bl in range(nb - (1 << level) + 1):
            a = table[(level - 1) * nb + bl]
            b = table[(level - 1) * nb + bl + half]
            table[level * nb + bl] = a if a < b else b
        level += 1
    return N, B, nb


@njit(cache=True)
def lce_query(i, j, N, rk, lcp, table, B, nb):
    """lcp of the suffixes at 0-based ``i != j`` of the indexed string."""
    a = rk[i]
    b = rk[j]
    if a > b:
        a, b = b, a
    lo = a + 1
    hi = b
    bl = lo // B
    bh = hi // B
    mn = lcp[lo]
    if bl == bh:
        for x in range(lo + 1, hi + 1):
            if lcp[x] < mn:
                mn = lcp[x]
        return mn
    for x in range(lo + 1, (bl + 1) * B):
        if lcp[x] < mn:
            mn = lcp[x]
    for x in range(bh * B, hi + 1):
        if lcp[x] < mn:
            mn = lcp[x]
    if bl + 1 <= bh - 1:
        span = bh - 1 - bl
        level = _ilog2(span)
        v = table[level * nb + bl + 1]
        if v < mn:
            mn = v
        v = table[level * nb + bh - (1 << level)]
        if v < mn:
            mn = v
    return mn


class LceIndex:
    """lcp queries over a fragment F and a reference R.

    Positions are 1-based in a combined coordinate: F occupies
    ``1..frag_len`` and R occupies ``frag_len+1..frag_len+ref_len``.
    """

    def __init__(self, ws: LceWorkspace, frag_len: int, ref_len: int, merged: bool, dims,
                 letters=None):
        self.ws = ws
        self.letters = letters
        self.frag_len = frag_len
        self.ref_len = ref_len
        self.merged = merged
        self.N, self.B, self.nb = (int(v) for v in dims)

    def _piece_end(self, pos: int) -> int:
        if 1 <= pos <= self.frag_len:
            return self.frag_len
        if self.frag_len < pos <= self.frag_len + self.ref_len:
            return self.frag_len + self.ref_len
        raise IndexError(f"position {pos} outside the index")

    def _offset(self, pos: int) -> int:
        return pos - 1 if pos <= self.frag_len else pos

    def lcp(self, i: int, j: int) -> int:
        ei = self._piece_end(i)
        ej = self._piece_end(j)
        if i == j:
            return ei - i + 1
        ws = self.ws
        v = int(lce_query(self._offset(i), self._offset(j), self.N, ws.rk, ws.lcp, ws.table, self.B, self.nb))
        v = min(v, ei - i + 1, ej - j + 1)
        if not self.merged and i <= self.frag_len and j <= self.frag_len and self.letters is not None:
            # letters outside the reference share one rank, so v only bounds the answer
            a, L = self.letters, 0
            while L < v and a[i - 1 + L] == a[j - 1 + L]:
                L += 1
            v = L
        return v

    def lcp_frag_ref(self, i: int, j: int) -> int:
        """lcp of F[i..] and R[j..] (both 1-based within their piece)."""
        return self.lcp(i, self.frag_len + j)

    def release(self):
        self.ws.release()


def build_lce_index(text, frag_start: int, frag_len: int, ref_start: int, ref_len: int,
                    ledger=None, mode: str = "auto", reverse: bool = False) -> LceIndex:
    """Index T[frag_start..] (frag_len letters) against T[ref_start..] (ref_len letters).

    ``mode`` is ``merged``, ``dictionary`` or ``auto``; auto picks merged
    ranks when ``ref_len**2 > 4n`` (a budget b above sqrt(n)).  With
    ``reverse`` both starts address the reversed text.  Release the
    index to return its words to the ledger.
    """
    n = text.n
    for s, ln in ((frag_start, frag_len), (ref_start, ref_len)):
        if ln < 0 or (ln > 0 and not (1 <= s and s + ln - 1 <= n)):
            raise ValueError("fragment outside the text")
    if mode == "auto":
        merged = ref_len * ref_len > 4 * n
    elif mode in ("merged", "dictionary"):
        merged = mode == "merged"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ws = LceWorkspace(frag_len + ref_len + 2, ledger)
    lce_fill(text.data, frag_start - 1, frag_len, ref_start - 1, ref_len, reverse, ws.conc)
    dims = lce_build(ws.conc, frag_len, ref_len, merged, ws.sa, ws.rk, ws.tmp, ws.cnt, ws.lcp, ws.table)
    T = text.data
    frag = T[::-1][frag_start - 1:frag_start - 1 + frag_len] if reverse else T[frag_start - 1:frag_start - 1 + frag_len]
    return LceIndex(ws, frag_len, ref_len, merged, dims, frag)
