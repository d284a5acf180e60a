"""Profile from anchor representations and batched searches.

Lengths k <= 2b: per block, every position binary-searches the length of
its longest earlier-occurring substring, one batched search-before pass
per round.  Longer lengths run in phases: the earlier occurrences of each
anchor are listed explicitly or as runs, extended by closed forms and
binary lifting, and folded through END arrays.  With b >= n^(2/3) the
per-phase representation fits in O(b) words.
"""
from __future__ import annotations

from typing import Iterable, Optional

import numpy as np
from numba import njit

from ..multimatch import search_before_kernel, search_words
from ..primitives.fingerprint import FingerprintConfig
from ..text import SpaceLedger, default_seed
from .anchors import anchor_occurrences, block_chains
from .blocked import _phase_list, _sweep
from .extensions import aperiodic_extensions, synchronized_extensions
from .profile import Profile, clamp_budget, fold_kernel

SMALL_FACTOR = 2


def small_lengths_search(text, b: int, out, cfg: FingerprintConfig, strict: bool = False,
                         ledger: Optional[SpaceLedger] = None) -> None:
    """S(k) for k <= min(2b, n) into ``out`` by per-block binary search."""
    ledger = ledger if ledger is not None else SpaceLedger()
    T = text.data
    n = text.n
    width = min(SMALL_FACTOR * b, n)
    acc = np.zeros(width, dtype=np.int64)
    diff = np.zeros(width + 1, dtype=np.int64)
    end = np.zeros(b, dtype=np.int64)
    verify = not strict
    with ledger.hold(2 * width + 1 + b + 5 * b + search_words(b)):
        for g0 in range(0, n, b):
            bl = min(b, n - g0)
            g = np.arange(g0, g0 + bl, dtype=np.int64)
            lo = np.zeros(bl, dtype=np.int64)
            hi = np.minimum(SMALL_FACTOR * b, n - g) + 1
            while True:
                act = np.nonzero(hi - lo > 1)[0]
                if act.shape[0] == 0:
                    break
                mid = (lo[act] + hi[act]) // 2
                ans = np.zeros(act.shape[0], dtype=np.bool_)
                search_before_kernel(T, g[act], mid, g[act], ans, cfg.x, cfg.x_inv, verify)
                lo[act[ans]] = mid[ans]
                hi[act[~ans]] = mid[~ans]
            end[:bl] = lo + np.arange(1, bl + 1)
            fold_kernel(end, bl, 0, b, acc, diff, g0, n)
    out[:width] = acc


@njit(cache=True)
def _record(end, b, lam, rho, rcap):
    if lam >= 1:
        r = min(rho, rcap) + 1
        if r > end[b - lam]:
            end[b - lam] = r


def phase_counts(text, b: int, alpha: int, out, cfg: FingerprintConfig, chains, strict: bool = False,
                 ledger: Optional[SpaceLedger] = None) -> None:
    """S(k) for k in (alpha*b, (alpha+1)*b] into ``out``."""
    ledger = ledger if ledger is not None else SpaceLedger()
    n = text.n
    if alpha * b + 1 > n:
        return
    width = min(b, n - alpha * b)
    acc = np.zeros(width, dtype=np.int64)
    diff = np.zeros(width + 1, dtype=np.int64)
    end = np.zeros(b, dtype=np.int64)
    with ledger.hold(2 * width + 1 + b):
        anchors = anchor_occurrences(text, b, alpha, cfg, chains, ledger)
        anchors = [a for a in anchors if a.start - 1 + a.length < n]
        rep = sum(a.words for a in anchors) + 2 * sum(len(a.positions) for a in anchors)
        with ledger.hold(rep):
            aperiodic_extensions(anchors, text, b, cfg, strict, ledger)
            synchronized_extensions(anchors, text, b, cfg, strict, ledger)
            rcap = 2 * b - 1
            for a in anchors:
                end[:] = 0
                if a.kind == "explicit":
                    for lam, rho in zip(a.lle, a.lre):
                        _record(end, b, lam, rho, rcap)
                else:
                    for _, lam, rho in a.candidates:
                        _record(end, b, lam, rho, rcap)
                _sweep(end, b)
                fold_kernel(end, b, alpha, b, acc, diff, a.start - 1 - b, n)
    out[alpha * b:alpha * b + width] = acc


def profile_fast(text, b: int, ledger: Optional[SpaceLedger] = None, seed: Optional[int] = None,
                 cfg: Optional[FingerprintConfig] = None, phases: Optional[Iterable[int]] = None,
                 strict: bool = False) -> Profile:
    """Exact profile (verified mode) with O(b) working words once b >= n^(2/3).

    Smaller budgets still give the exact profile but the representation of
    anchor occurrences may need up to n^2/b^2 words; a warning is attached.
    """
    ledger = ledger if ledger is not None else SpaceLedger()
    n = text.n
    out = np.zeros(n, dtype=np.int64)
    if n == 0:
        return Profile(n=0, values=out, peak_words=ledger.peak, algo="fast", b=b)
    b = clamp_budget(b, n)
    if cfg is None:
        cfg = FingerprintConfig.for_text(n, text.sigma, seed=default_seed() if seed is None else seed)
    warnings = []
    if b ** 3 < n * n:
        warnings.append(f"b={b} is below n^(2/3) for n={n}: the O(b) space guarantee does not apply")
    alphas = _phase_list(n, b, phases)
    chains = block_chains(text, b, ledger) if any(a >= 2 for a in alphas) else None
    with ledger.hold(chains.words if chains is not None else 0):
        for alpha in alphas:
            if alpha <= 1:
                small_lengths_search(text, b, out, cfg, strict, ledger)
            else:
                phase_counts(text, b, int(alpha), out, cfg, chains, strict, ledger)
    return Profile(n=n, values=out, peak_words=ledger.peak, algo="fast", b=b, warnings=warnings)
