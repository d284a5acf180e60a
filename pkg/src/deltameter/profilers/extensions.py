"""Left/right extensions of anchor occurrences.

For an occurrence x of anchor M_j (start a, length Lm) the left extension
is the longest common suffix of T[..x-1] and T[..a-1], capped at b and at
x-1; the right extension is the longest common prefix of T[x+Lm..] and
T[a+Lm..], capped at 2b and at the text end.

Explicit occurrences are extended by binary lifting: log b rounds of
batched validation with halving pattern lengths.  Occurrences inside runs
of the anchor's period need no search on the sides where the run and the
anchor's own run break at different phases; there the extension is read
off the run boundaries, and only phase-aligned boundaries continue with
the same lifting procedure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..multimatch import validate_kernel, validate_words
from ..primitives.fingerprint import FingerprintConfig
from ..text import SpaceLedger


def extend_batch(T, occ, ref, cur, cap, left, cfg: FingerprintConfig, strict: bool = False,
                 ledger: Optional[SpaceLedger] = None) -> np.ndarray:
    """Longest common extensions by greedy binary lifting, all items at once.

    Item i compares the text around ``occ[i]`` with the text around
    ``ref[i]``: leftwards (letters before both) when ``left[i]``, else
    rightwards (letters from both on).  ``cur[i]`` letters are known to
    match already; the result is capped at ``cap[i]``.  Each round checks
    one length h for every item with a single validation pass.
    """
    occ = np.asarray(occ, dtype=np.int64)
    ref = np.asarray(ref, dtype=np.int64)
    cur = np.array(cur, dtype=np.int64)
    cap = np.asarray(cap, dtype=np.int64)
    left = np.asarray(left, dtype=np.bool_)
    if cur.shape[0] == 0:
        return cur
    top = int((cap - cur).max())
    if top <= 0:
        return np.minimum(cur, cap)
    h = 1 << (top.bit_length() - 1)
    verify = not strict
    x, x_inv = cfg.x, cfg.x_inv
    while h >= 1:
        act = np.nonzero(cur + h <= cap)[0]
        if act.shape[0]:
            c = cur[act]
            lf = left[act]
            pats = np.where(lf, ref[act] - c - h, ref[act] + c)
            pos = np.where(lf, occ[act] - c - h, occ[act] + c)
            owner = np.arange(act.shape[0], dtype=np.int64)
            flags = np.zeros(act.shape[0], dtype=np.bool_)
            words = validate_words(act.shape[0], act.shape[0]) + 4 * act.shape[0]
            if ledger is not None:
                ledger.alloc(words)
            try:
                validate_kernel(T, h, pats, owner, pos, flags, x, x_inv, verify)
            finally:
                if ledger is not None:
                    ledger.free(words)
            cur[act[flags]] += h
        h >>= 1
    return cur


def _caps(anchor, n: int):
    a0 = anchor.start - 1
    right_at = a0 + anchor.length
    return a0, right_at, min(2 * anchor.b, n - right_at)


def aperiodic_extensions(anchors, text, b: int, cfg: Optional[FingerprintConfig] = None,
                         strict: bool = False, ledger: Optional[SpaceLedger] = None) -> None:
    """Fill ``lle``/``lre`` (aligned with ``positions``) for every explicit anchor."""
    n = text.n
    cfg = cfg if cfg is not None else FingerprintConfig.for_text(n, text.sigma)
    explicit = [a for a in anchors if a.kind == "explicit"]
    N = sum(len(a.positions) for a in explicit)
    for a in explicit:
        a.lle, a.lre = [], []
    if N == 0:
        return
    occ = np.empty(2 * N, dtype=np.int64)
    ref = np.empty(2 * N, dtype=np.int64)
    cap = np.empty(2 * N, dtype=np.int64)
    left = np.zeros(2 * N, dtype=np.bool_)
    e = 0
    for a in explicit:
        a0, right_at, rcap = _caps(a, n)
        for x in a.positions:
            x0 = x - 1
            occ[e], ref[e], cap[e], left[e] = x0, a0, min(b, x0), True
            occ[N + e], ref[N + e], cap[N + e] = x0 + a.length, right_at, rcap
            e += 1
    with (ledger or SpaceLedger()).hold(8 * N):
        ext = extend_batch(text.data, occ, ref, np.zeros(2 * N, dtype=np.int64), cap, left,
                           cfg, strict, ledger)
    e = 0
    for a in explicit:
        m = len(a.positions)
        a.lle = ext[e:e + m].tolist()
        a.lre = ext[N + e:N + e + m].tolist()
        e += m


@dataclass(frozen=True)
class Candidate:
    """An occurrence x with extension lengths known up to ``lam``/``rho``.

    ``grow_left``/``grow_right`` mark sides where the run boundary is
    phase-aligned with the anchor's own run, so the true extension may go
    beyond the run and still has to be searched.
    """

    x: int
    lam: int
    rho: int
    grow_left: bool = False
    grow_right: bool = False


def sync_class(run, anchor) -> str:
    """``unsynchronized``, ``left``, ``right`` or ``bilateral`` against the anchor's own trimmed run."""
    own = anchor.own
    ls = run.offset == own.offset
    rs = run.gamma == own.gamma
    if ls and rs:
        return "bilateral"
    if ls:
        return "left"
    if rs:
        return "right"
    return "unsynchronized"


def _side_caps(anchor, x: int, n: int):
    b = anchor.b
    lcap = min(b, x - 1)
    rcap = min(2 * b, n - (anchor.start + anchor.length - 1))
    return lcap, rcap


def run_candidates(run, hit, anchor, n: int) -> list:
    """The occurrences of one listed run that can matter, with closed-form extensions.

    ``hit`` is (first, last): the first and last occurrence of the anchor
    inside the run before the anchor's start.  Occurrence x sits L = x - s
    letters after the run start and R = e - (x+Lm-1) before its end; the
    own run gives ell and m the same way.  Points with L <= ell - p are
    dominated by the occurrence one period left of the anchor in its own
    run, so only the largest L <= ell, the smallest L >= ell and the point
    with R = m survive.
    """
    own = anchor.own
    p = anchor.period
    Lm = anchor.length
    ell = anchor.start - own.s
    m = own.e - (anchor.start + Lm - 1)
    first, last = hit
    last = min(last, anchor.start - 1)
    if last < first:
        return []
    lo, hi = first - run.s, last - run.s
    D = run.length - Lm
    hi = min(hi, D)
    if hi < lo:
        return []

    def in_p(L):
        return lo <= L <= hi and (L - lo) % p == 0

    picks = set()
    if ell >= lo:
        L1 = lo + min((ell - lo) // p, (hi - lo) // p) * p
        picks.add(L1)
    L2 = lo + max(0, -(-(ell - lo) // p)) * p
    if L2 <= hi:
        picks.add(L2)
    if in_p(D - m):
        picks.add(D - m)
    out = []
    for L in sorted(picks):
        x = run.s + L
        R = D - L
        lcap, rcap = _side_caps(anchor, x, n)
        lam = min(L, ell, lcap)
        rho = min(R, m, rcap)
        out.append(Candidate(x, lam, rho, L == ell and lam < lcap, R == m and rho < rcap))
    return out


def same_run(anchor, n: int) -> Optional[Candidate]:
    """The occurrence one period left of the anchor inside its own run, if any."""
    full = anchor.own_full
    x = anchor.start - anchor.period
    if x < full.s:
        return None
    lcap, rcap = _side_caps(anchor, x, n)
    m_full = full.e - (anchor.start + anchor.length - 1)
    return Candidate(x, min(x - full.s, lcap), min(m_full, rcap))


def run_hit(run, anchor) -> tuple:
    """(first, last) occurrence of the anchor inside a run of its period, by root phase."""
    p = anchor.period
    first = run.s + (anchor.own.phase(anchor.start) - run.phase(run.s)) % p
    top = min(run.e - anchor.length + 1, anchor.start - 1)
    return first, first + max(top - first, -p) // p * p


def unsync_extensions(run, anchor, n: int, hit=None) -> list:
    """(x, lle, lre) for the at most two relevant occurrences of an unsynchronized run."""
    if hit is None:
        hit = run_hit(run, anchor)
    cands = run_candidates(run, hit, anchor, n)
    if any(c.grow_left or c.grow_right for c in cands):
        raise ValueError("run is synchronized with the anchor's own run")
    return prune([(c.x, c.lam, c.rho) for c in cands])


def prune(points: list) -> list:
    """Drop (x, lle, lre) entries dominated in both extensions by another entry."""
    best = {}
    for x, lam, rho in points:
        key = (lam, rho)
        if key not in best or x < best[key]:
            best[key] = x
    keys = sorted(best, key=lambda t: (-t[0], -t[1]))
    out = []
    top = -1
    for lam, rho in keys:
        if rho > top:
            out.append((best[(lam, rho)], lam, rho))
            top = rho
    return sorted(out)


def synchronized_extensions(anchors, text, b: int, cfg: Optional[FingerprintConfig] = None,
                            strict: bool = False, ledger: Optional[SpaceLedger] = None) -> None:
    """Fill ``candidates`` = [(x, lle, lre)] for every periodic anchor.

    Closed forms settle the unsynchronized sides; sides where a run
    boundary is phase-aligned with the own run are finished by the
    shared binary-lifting search.  Dominated entries are dropped.
    """
    n = text.n
    cfg = cfg if cfg is not None else FingerprintConfig.for_text(n, text.sigma)
    per_anchor = []
    for a in anchors:
        if a.kind != "periodic":
            continue
        cands = []
        for run, hit in zip(a.runs, a.hits):
            if run.s == a.own_full.s:
                continue
            cands.extend(run_candidates(run, hit, a, n))
        sr = same_run(a, n)
        if sr is not None:
            cands.append(sr)
        per_anchor.append((a, cands))
    items = []
    for ai, (a, cands) in enumerate(per_anchor):
        for ci, c in enumerate(cands):
            a0 = a.start - 1
            lcap, rcap = _side_caps(a, c.x, n)
            if c.grow_left:
                items.append((ai, ci, 0, c.x - 1, a0, c.lam, lcap, True))
            if c.grow_right:
                items.append((ai, ci, 1, c.x - 1 + a.length, a0 + a.length, c.rho, rcap, False))
    grown = {}
    if items:
        cols = list(zip(*items))
        with (ledger or SpaceLedger()).hold(8 * len(items)):
            ext = extend_batch(text.data, np.array(cols[3]), np.array(cols[4]), np.array(cols[5]),
                               np.array(cols[6]), np.array(cols[7]), cfg, strict, ledger)
        for it, v in zip(items, ext.tolist()):
            grown[it[:3]] = v
    for ai, (a, cands) in enumerate(per_anchor):
        pts = []
        for ci, c in enumerate(cands):
            pts.append((c.x, grown.get((ai, ci, 0), c.lam), grown.get((ai, ci, 1), c.rho)))
        a.candidates = prune(pts)
