"""Occurrences of the phase anchors M_j = T[jb+1..(j+alpha-1)b] before their start.

Anchors with period above b/2 get explicit position lists.  Anchors with
period p <= b/2 get the runs of period p that hold their earlier
occurrences: in such a run the occurrences form one arithmetic
progression with difference p.

Periodicity of an anchor is read off a table of block chains built once
per text: every full block whose period p satisfies 2p <= b, linked to
its right neighbour when the union keeps period p.  An anchor is
periodic exactly when all of its blocks sit in one chain, and the
chain's maximal run is the anchor's own run.

Occurrences are found by one sliding pass of anchor length over the text
per phase, with anchors grouped by fingerprint.  Hits of periodic groups
at distance p are merged into progressions with an O(p) check each.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numba import njit

from ..primitives.fingerprint import FingerprintConfig, roll, fp_range, powmod
from ..primitives.periodicity import Run, extend_period, least_rotation, period_kernel
from ..text import SpaceLedger


@njit(cache=True)
def chain_kernel(T, b, fail, period, chain, cs, ce, cp):
    n = T.shape[0]
    nb = n // b
    for k in range(nb):
        p = period_kernel(T, k * b, b, fail)
        period[k] = p if 2 * p <= b else 0
    nc = 0
    k = 0
    while k < nb:
        p = period[k]
        if p == 0:
            chain[k] = -1
            k += 1
            continue
        first = k
        while k + 1 < nb and period[k + 1] == p:
            ok = True
            for x in range((k + 1) * b - p, (k + 1) * b):
                if T[x] != T[x + p]:
                    ok = False
                    break
            if not ok:
                break
            k += 1
        for kk in range(first, k + 1):
            chain[kk] = nc
        s, e = extend_period(T, first * b, (k + 1) * b - 1, p, 0, n - 1)
        cs[nc] = s
        ce[nc] = e
        cp[nc] = p
        nc += 1
        k += 1
    return nc


@dataclass
class BlockChains:
    """Per full block: chain id (-1 if its period exceeds b/2); per chain: maximal run."""

    b: int
    chain: np.ndarray
    s: np.ndarray
    e: np.ndarray
    period: np.ndarray

    @property
    def words(self) -> int:
        return 2 * self.chain.shape[0] + 3 * self.s.shape[0]

    def anchor_run(self, j: int, alpha: int) -> Optional[tuple]:
        """(s, e, p) 0-based of the run holding anchor j of phase alpha, if per <= b/2."""
        first, last = j, j + alpha - 2
        c = self.chain[first]
        if c < 0 or self.chain[last] != c:
            return None
        return int(self.s[c]), int(self.e[c]), int(self.period[c])


def block_chains(text, b: int, ledger=None) -> BlockChains:
    T = text.data
    nb = text.n // b
    fail = np.empty(b, dtype=np.int64)
    period = np.zeros(nb, dtype=np.int64)
    chain = np.full(nb, -1, dtype=np.int64)
    cs = np.zeros(nb, dtype=np.int64)
    ce = np.zeros(nb, dtype=np.int64)
    cp = np.zeros(nb, dtype=np.int64)
    words = b + 5 * nb
    if ledger is not None:
        ledger.alloc(words)
    try:
        nc = chain_kernel(T, b, fail, period, chain, cs, ce, cp) if nb else 0
        out = BlockChains(b=b, chain=chain, s=cs[:nc].copy(), e=ce[:nc].copy(), period=cp[:nc].copy())
    finally:
        if ledger is not None:
            ledger.free(words)
    return out


@njit(cache=True)
def anchor_fp_kernel(T, b, Lm, J, x, x_inv, out):
    """Fingerprints of T[jb:jb+Lm] for j = 1..J from one sliding pass."""
    x_top = powmod(x, Lm - 1)
    cur = b
    h = fp_range(T, cur, Lm, x)
    for j in range(1, J + 1):
        q = j * b
        while cur < q:
            h = roll(h, T[cur], T[cur + Lm], x_inv, x_top)
            cur += 1
        out[j - 1] = h


@njit(cache=True)
def _equal(T, a, c, L):
    for t in range(L):
        if T[a + t] != T[c + t]:
            return False
    return True


@njit(cache=True)
def anchor_pass_kernel(T, Lm, qmax, gfp, grep, gper, fill, cnt, off, first, last, open_at, x, x_inv):
    """Slide a window of length Lm over starts 0..qmax-1 and record anchor hits.

    Without ``fill`` only counts entries per group; with it writes them at
    ``off[g]``.  Aperiodic groups get one entry per hit (first == last);
    periodic groups get one entry per progression of hits at distance p.
    """
    G = gfp.shape[0]
    for g in range(G):
        open_at[g] = -(1 << 40)
        cnt[g] = 0
    if qmax <= 0:
        return
    x_top = powmod(x, Lm - 1)
    h = fp_range(T, 0, Lm, x)
    q = 0
    while True:
        g = np.searchsorted(gfp, h)
        if g < G and gfp[g] == h:
            p = gper[g]
            if p > 0 and open_at[g] == q - p:
                ok = True
                for t in range(Lm - p, Lm):
                    if T[q + t] != T[q + t - p]:
                        ok = False
                        break
                if ok:
                    open_at[g] = q
                    if fill:
                        last[off[g] + cnt[g] - 1] = q
                else:
                    open_at[g] = -(1 << 40)
            elif _equal(T, q, grep[g], Lm):
                if fill:
                    first[off[g] + cnt[g]] = q
                    last[off[g] + cnt[g]] = q
                cnt[g] += 1
                if p > 0:
                    open_at[g] = q
        q += 1
        if q >= qmax:
            break
        h = roll(h, T[q - 1], T[q + Lm - 1], x_inv, x_top)


@njit(cache=True)
def progression_runs(T, p, Lm, first, last, cap, s_out, e_out):
    """Maximal period-p run through each progression, its right end clipped at last+Lm-1+cap."""
    n = T.shape[0]
    for k in range(first.shape[0]):
        hi = min(n - 1, last[k] + Lm - 1 + cap)
        s, e = extend_period(T, first[k], last[k] + Lm - 1, p, 0, hi)
        s_out[k] = s
        e_out[k] = e


def _make_run(T, s: int, e: int, p: int) -> Run:
    """Run from 0-based inclusive bounds."""
    r0 = int(least_rotation(T, s, p))
    return Run(s=s + 1, e=e + 1, period=p, root_start=s + 1 + r0, offset=(p - r0) % p + 1)


def trim_run(run: Run, lo: int, hi: int) -> Run:
    """Restrict a run to [lo, hi] keeping its root alignment."""
    s, e = max(run.s, lo), min(run.e, hi)
    p = run.period
    root_start = s + (run.root_start - s) % p
    return Run(s=s, e=e, period=p, root_start=root_start, offset=(s - run.root_start) % p + 1,
               root_fp=run.root_fp)


@dataclass
class AnchorOccurrences:
    """Earlier occurrences of one anchor M_j (1-based positions).

    ``kind`` is ``explicit`` (``positions`` lists every occurrence start
    before ``start``) or ``periodic`` (``runs`` hold them all; ``hits``
    gives the first and last such start inside each run).  ``own`` is the
    anchor's run trimmed to b letters on its left and 2b on its right,
    ``own_full`` the untrimmed one.
    """

    j: int
    alpha: int
    b: int
    start: int
    length: int
    kind: str
    period: Optional[int] = None
    positions: list = field(default_factory=list)
    runs: list = field(default_factory=list)
    hits: list = field(default_factory=list)
    own: Optional[Run] = None
    own_full: Optional[Run] = None
    lle: list = field(default_factory=list)
    lre: list = field(default_factory=list)
    candidates: list = field(default_factory=list)

    @property
    def words(self) -> int:
        return 8 + len(self.positions) + 8 * len(self.runs) + 3 * len(self.candidates)

    def occurrences(self) -> list:
        """Every earlier occurrence start, expanded (for checking)."""
        if self.kind == "explicit":
            return list(self.positions)
        out = []
        for first, last in self.hits:
            out.extend(range(first, min(last, self.start - 1) + 1, self.period))
        return sorted(out)


def anchor_occurrences(text, b: int, alpha: int, cfg: Optional[FingerprintConfig] = None,
                       chains: Optional[BlockChains] = None, ledger=None) -> list:
    """AnchorOccurrences for every anchor j with (j+alpha-1)b <= n."""
    if alpha < 2:
        raise ValueError("anchors need alpha >= 2 (length at least b)")
    n = text.n
    T = text.data
    if b < 1 or b > n:
        raise ValueError("need 1 <= b <= n")
    Lm = (alpha - 1) * b
    J = n // b - alpha + 1
    if J < 1:
        return []
    if cfg is None:
        cfg = FingerprintConfig.for_text(n, text.sigma)
    own_chains = chains is None
    if own_chains:
        chains = block_chains(text, b, ledger)
    held = chains.words if own_chains else 0
    ledger = ledger if ledger is not None else SpaceLedger()
    ledger.alloc(held)
    try:
        return _anchor_occurrences(T, n, b, alpha, Lm, J, cfg, chains, ledger)
    finally:
        ledger.free(held)


def _group_anchors(T, b, Lm, J, cfg, ledger):
    """Anchor fingerprints grouped; reseeds until equal fingerprints mean equal letters."""
    while True:
        fps = np.empty(J, dtype=np.int64)
        anchor_fp_kernel(T, b, Lm, J, cfg.x, cfg.x_inv, fps)
        gfp, rep, inv = np.unique(fps, return_index=True, return_inverse=True)
        clash = False
        for j in range(J):
            r = rep[inv[j]]
            if r != j and not _equal(T, (j + 1) * b, (r + 1) * b, Lm):
                clash = True
                break
        if not clash:
            return cfg, gfp, rep, inv
        cfg = cfg.reseeded()


def _anchor_occurrences(T, n, b, alpha, Lm, J, cfg, chains, ledger):
    with ledger.hold(4 * J):
        cfg, gfp, rep, inv = _group_anchors(T, b, Lm, J, cfg, ledger)
        G = gfp.shape[0]
        grep = ((rep + 1) * b).astype(np.int64)
        gper = np.zeros(G, dtype=np.int64)
        own = [None] * J
        for j in range(1, J + 1):
            r = chains.anchor_run(j, alpha)
            if r is not None:
                own[j - 1] = r
                gper[inv[j - 1]] = r[2]
        qmax = J * b
        cnt = np.zeros(G, dtype=np.int64)
        off = np.zeros(G + 1, dtype=np.int64)
        open_at = np.zeros(G, dtype=np.int64)
        dummy = np.zeros(1, dtype=np.int64)
        with ledger.hold(6 * G + 1):
            anchor_pass_kernel(T, Lm, qmax, gfp, grep, gper, False, cnt, off, dummy, dummy, open_at,
                               cfg.x, cfg.x_inv)
            off[1:] = np.cumsum(cnt)
            E = int(off[-1])
            first = np.zeros(E, dtype=np.int64)
            last = np.zeros(E, dtype=np.int64)
            with ledger.hold(4 * E):
                anchor_pass_kernel(T, Lm, qmax, gfp, grep, gper, True, cnt, off, first, last, open_at,
                                   cfg.x, cfg.x_inv)
                run_s = np.zeros(E, dtype=np.int64)
                run_e = np.zeros(E, dtype=np.int64)
                for g in range(G):
                    p = int(gper[g])
                    a, z = int(off[g]), int(off[g + 1])
                    if p > 0 and z > a:
                        progression_runs(T, p, Lm, first[a:z], last[a:z], 2 * b, run_s[a:z], run_e[a:z])
                run_cache = {}
                out = []
                for j in range(1, J + 1):
                    g = int(inv[j - 1])
                    a0 = j * b
                    a, z = int(off[g]), int(off[g + 1])
                    k = a + int(np.searchsorted(first[a:z], a0))
                    occ = AnchorOccurrences(j=j, alpha=alpha, b=b, start=a0 + 1, length=Lm,
                                            kind="explicit")
                    if own[j - 1] is None:
                        occ.positions = (first[a:k] + 1).tolist()
                    else:
                        s, e, p = own[j - 1]
                        occ.kind = "periodic"
                        occ.period = p
                        full = run_cache.get(("own", s, e))
                        if full is None:
                            full = run_cache[("own", s, e)] = _make_run(T, s, e, p)
                        occ.own_full = full
                        occ.own = trim_run(full, a0 + 1 - b, min(n, a0 + Lm + 2 * b))
                        for r in range(a, k):
                            key = (g, r)
                            run = run_cache.get(key)
                            if run is None:
                                run = run_cache[key] = _make_run(T, int(run_s[r]), int(run_e[r]), p)
                            occ.runs.append(run)
                            lst = int(last[r])
                            if lst >= a0:
                                lst -= -(-(lst - a0 + 1) // p) * p
                            occ.hits.append((int(first[r]) + 1, lst + 1))
                    out.append(occ)
    return out
