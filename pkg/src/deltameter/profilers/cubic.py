"""Constant-space computation: test every fragment for an earlier occurrence."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from numba import njit

from ..primitives.matching import tw_first
from ..text import SpaceLedger
from .profile import Profile

# running k, i, S(k), best numerator/denominator and matcher state
CUBIC_WORDS = 12


@njit(cache=True)
def cubic_kernel(T, out):
    """Write S(k) into ``out`` (write-only) and return the best (S, k) pair."""
    n = T.shape[0]
    best_s = 0
    best_k = 1
    for k in range(1, n + 1):
        s = 0
        for i in range(n - k + 1):
            if i == 0 or tw_first(T, i, k, 0, i + k - 2) < 0:
                s += 1
        out[k - 1] = s
        if k == 1 or s * best_k > best_s * k:
            best_s = s
            best_k = k
    return best_s, best_k


def _run(text, ledger):
    ledger = ledger if ledger is not None else SpaceLedger()
    out = np.zeros(text.n, dtype=np.int64)
    with ledger.hold(CUBIC_WORDS):
        s, k = cubic_kernel(text.data, out)
    return out, int(s), int(k), ledger


def delta_constant_space(text, ledger=None) -> tuple:
    """(delta, smallest k attaining it) with O(1) working words."""
    if text.n == 0:
        raise ValueError("delta of the empty text is undefined")
    _, s, k, _ = _run(text, ledger)
    return Fraction(s, k), k


def profile_cubic(text, ledger=None) -> Profile:
    out, _, _, ledger = _run(text, ledger)
    return Profile(n=text.n, values=out, peak_words=ledger.peak, algo="cubic")
