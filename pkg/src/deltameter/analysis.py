"""Quantities read off substring-complexity profiles."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .profilers import ALGORITHMS, BUDGETED, ORACLE_LIMIT, Profile, auto_budget, run_profile
from .text import SpaceLedger, TextSource


@dataclass(frozen=True)
class DeltaResult:
    num: int
    den: int
    k_arg: int
    algo: str
    b: Optional[int] = None
    peak_words: int = 0
    time_ms: Optional[float] = None

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)


@dataclass(frozen=True)
class MeasuresReport:
    """Repetition index r, longest minimal absent word, shortest absent word.

    ``saw_min`` is None when every length up to n has all sigma^k words
    present (only possible over a unary alphabet).
    """

    n: int
    r: int
    maw_max: Optional[int]
    saw_min: Optional[int]

    @property
    def maw_defined(self) -> bool:
        return self.maw_max is not None

    @property
    def saw_defined(self) -> bool:
        return self.saw_min is not None


@dataclass(frozen=True)
class Mismatch:
    k: int
    algo_a: str
    algo_b: str
    value_a: int
    value_b: int


def delta_of(profile: Profile, time_ms: Optional[float] = None) -> DeltaResult:
    """max_k S(k)/k as a reduced fraction, with the smallest k attaining it."""
    frac, k = profile.delta()
    return DeltaResult(frac.numerator, frac.denominator, k, profile.algo, profile.b,
                       profile.peak_words, time_ms)


def timed_profile(text, algo: str, b: Optional[int] = None, seed: Optional[int] = None,
                  oracle_limit: int = ORACLE_LIMIT):
    """(Profile, wall-clock milliseconds) on a fresh ledger."""
    ledger = SpaceLedger(budget=b)
    t0 = time.perf_counter()
    prof = run_profile(text, algo, b, ledger, seed=seed, oracle_limit=oracle_limit)
    return prof, (time.perf_counter() - t0) * 1000.0


def repetition_index(profile: Profile) -> int:
    """Largest k with S(k) < n-k+1 (some length-k substring repeats); 0 if none."""
    n = profile.n
    for k in range(n, 0, -1):
        if profile[k] < n - k + 1:
            return k
    return 0


def absent_word_lengths(profile: Profile, sigma: int) -> MeasuresReport:
    if sigma < 1:
        raise ValueError("sigma must be >= 1")
    n = profile.n
    r = repetition_index(profile)
    saw = None
    power = 1
    for k in range(1, n + 1):
        power *= sigma
        if power > n or profile[k] < power:
            saw = k
            break
    return MeasuresReport(n=n, r=r, maw_max=r + 2 if n else None, saw_min=saw)


def _symbols(t) -> list:
    """Letters of a text in a form comparable across texts (original symbols when known)."""
    if isinstance(t, (str, bytes)):
        return list(t)
    if isinstance(t, TextSource):
        if t.symbols is not None:
            return [t.symbols[c - 1] for c in t.letters()]
        return t.letters()
    return list(t)


def lcs_length(x, y, algo: str = "oracle", b: Optional[int] = None, seed: Optional[int] = None) -> int:
    """Longest common substring length from the profiles of X, Y and X#Y.

    For k <= min(|X|, |Y|) the k windows covering # are distinct and new,
    so X and Y share a length-k substring iff S_X(k) + S_Y(k) > S_{X#Y}(k) - k.
    X and Y may be strings or texts; they are ranked over one joint alphabet.
    """
    xs, ys = _symbols(x), _symbols(y)
    top = min(len(xs), len(ys))
    if top == 0:
        return 0
    rank = {}
    for ch in xs + ys:
        rank.setdefault(ch, len(rank) + 1)
    xr, yr = [rank[ch] for ch in xs], [rank[ch] for ch in ys]
    sentinel = len(rank) + 1
    texts = [TextSource(xr, sigma=sentinel), TextSource(yr, sigma=sentinel),
             TextSource(xr + [sentinel] + yr, sigma=sentinel)]
    px, py, pj = (run_profile(t, algo, None if b is None else min(b, t.n), seed=seed) for t in texts)
    best = 0
    for k in range(1, top + 1):
        if px[k] + py[k] > pj[k] - k:
            best = k
    return best


def _label(algo: str, b: Optional[int]) -> str:
    return f"{algo}@b={b}" if b is not None else algo


def verify_profiles(text, b_set: Iterable = (None,), algo_set: Sequence[str] = ALGORITHMS,
                    oracle_limit: int = ORACLE_LIMIT, seed: Optional[int] = None,
                    extra: Sequence[Profile] = ()) -> list:
    """Run every algorithm (budgeted ones at every b) and report disagreements.

    Each profile is compared with the first one computed (the brute-force
    oracle when requested).  ``b_set`` may contain None or "auto" for
    ceil(n^(2/3)).  ``extra`` profiles are compared as well, which lets a
    caller check the harness itself.
    """
    n = text.n
    budgets = []
    for b in b_set:
        b = auto_budget(n) if b in (None, "auto") else int(b)
        if b not in budgets:
            budgets.append(b)
    ordered = sorted(algo_set, key=lambda a: ALGORITHMS.index(a))
    if "brute" in ordered and n > oracle_limit:
        ordered.remove("brute")
    results = []
    for algo in ordered:
        if algo in BUDGETED:
            for b in budgets:
                results.append((_label(algo, b), run_profile(text, algo, b, seed=seed, oracle_limit=oracle_limit)))
        else:
            results.append((algo, run_profile(text, algo, seed=seed, oracle_limit=oracle_limit)))
    for i, prof in enumerate(extra):
        results.append((_label(f"extra{i}:{prof.algo}", prof.b), prof))
    out = []
    if not results:
        return out
    ref_name, ref = results[0]
    for name, prof in results[1:]:
        for k in range(1, n + 1):
            if ref[k] != prof[k]:
                out.append(Mismatch(k, ref_name, name, ref[k], prof[k]))
    return out
