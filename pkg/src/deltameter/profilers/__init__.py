"""Substring-complexity profilers under explicit working-space budgets."""
from __future__ import annotations

from typing import Optional

from ..text import SpaceLedger
from .blocked import profile_blocked, profile_lce
from .cubic import delta_constant_space, profile_cubic
from .fast import profile_fast
from .oracles import ORACLE_LIMIT, profile_bruteforce, profile_linear
from .profile import Profile, clamp_budget, counts_fold, prefix_max

ALGORITHMS = ("brute", "oracle", "cubic", "blocked", "lce", "fast")
BUDGETED = ("blocked", "lce", "fast")


def auto_budget(n: int) -> int:
    """Smallest b with b^3 >= n^2, i.e. ceil(n^(2/3)) in exact arithmetic."""
    b = max(1, round(n ** (2 / 3)))
    while b ** 3 < n * n:
        b += 1
    while b > 1 and (b - 1) ** 3 >= n * n:
        b -= 1
    return b


def run_profile(text, algo: str, b: Optional[int] = None, ledger: Optional[SpaceLedger] = None,
                seed: Optional[int] = None, oracle_limit: int = ORACLE_LIMIT) -> Profile:
    """Dispatch by algorithm name; budgeted algorithms default to b = ceil(n^(2/3))."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r} (choose from {', '.join(ALGORITHMS)})")
    if algo == "brute":
        return profile_bruteforce(text, limit=oracle_limit)
    if algo == "oracle":
        return profile_linear(text, ledger)
    if algo == "cubic":
        return profile_cubic(text, ledger)
    if b is None:
        b = auto_budget(text.n)
    if algo == "blocked":
        return profile_blocked(text, b, ledger)
    if algo == "lce":
        return profile_lce(text, b, ledger)
    return profile_fast(text, b, ledger, seed=seed)


__all__ = [
    "ALGORITHMS", "BUDGETED", "ORACLE_LIMIT", "Profile", "auto_budget", "clamp_budget", "counts_fold",
    "delta_constant_space", "prefix_max", "profile_blocked", "profile_bruteforce", "profile_cubic",
    "profile_fast", "profile_lce", "profile_linear", "run_profile",
]
