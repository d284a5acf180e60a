"""Input texts, corpus generators and working-space accounting.

Texts are read-only sequences of integer letters in ``[1, sigma]`` with
1-based positions.  The raw letters live in ``TextSource.data`` (a 0-based
``int64`` array) so that compiled kernels can scan them directly; the
array itself is the input and is never charged to a ledger.
"""
from __future__ import annotations

import contextlib
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np


class TextSource:
    """Immutable random-access text over the integer alphabet ``[1, sigma]``."""

    def __init__(self, letters: Iterable[int], sigma: Optional[int] = None,
                 symbols: Optional[Sequence[str]] = None):
        data = np.ascontiguousarray(np.asarray(list(letters) if not isinstance(letters, np.ndarray) else letters,
                                               dtype=np.int64))
        if data.ndim != 1:
            raise ValueError("letters must be one-dimensional")
        if data.size and data.min() < 1:
            raise ValueError("letters must be positive integers")
        top = int(data.max()) if data.size else 1
        if sigma is None:
            sigma = top
        if top > sigma:
            raise ValueError(f"letter {top} outside alphabet [1, {sigma}]")
        data.setflags(write=False)
        self.data = data
        self.sigma = int(sigma)
        self.symbols = list(symbols) if symbols is not None else None
        self.reads = 0

    @property
    def n(self) -> int:
        return int(self.data.shape[0])

    def __len__(self) -> int:
        return self.n

    def access(self, i: int) -> int:
        """Letter at 1-based position ``i``."""
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} outside [1, {self.n}]")
        self.reads += 1
        return int(self.data[i - 1])

    def letters(self) -> list:
        return self.data.tolist()

    def distinct_letters(self) -> int:
        return int(np.unique(self.data).size)

    def render(self) -> str:
        if self.symbols is not None:
            return "".join(self.symbols[c - 1] for c in self.data.tolist())
        if self.sigma <= 26:
            return "".join(chr(ord("a") + c - 1) for c in self.data.tolist())
        return " ".join(str(c) for c in self.data.tolist())

    def __repr__(self) -> str:
        body = self.render()
        if len(body) > 40:
            body = body[:37] + "..."
        return f"TextSource(n={self.n}, sigma={self.sigma}, {body!r})"

    @classmethod
    def from_str(cls, s: str) -> "TextSource":
        """Rank the characters of ``s`` in sorted order ("ab" -> [1, 2])."""
        alphabet = sorted(set(s))
        rank = {ch: r + 1 for r, ch in enumerate(alphabet)}
        return cls([rank[ch] for ch in s], sigma=max(len(alphabet), 1), symbols=alphabet)

    @classmethod
    def from_bytes(cls, raw: bytes) -> "TextSource":
        alphabet = sorted(set(raw))
        rank = {v: r + 1 for r, v in enumerate(alphabet)}
        symbols = [chr(v) if 32 <= v < 127 else f"\\x{v:02x}" for v in alphabet]
        return cls([rank[v] for v in raw], sigma=max(len(alphabet), 1), symbols=symbols)

    @classmethod
    def from_ints(cls, values: Sequence[int]) -> "TextSource":
        """Rank arbitrary integers, preserving equality and order."""
        alphabet = sorted(set(values))
        rank = {v: r + 1 for r, v in enumerate(alphabet)}
        return cls([rank[v] for v in values], sigma=max(len(alphabet), 1))


@dataclass
class SpaceLedger:
    """Live and peak count of auxiliary machine words.

    Algorithms register every working buffer they hold; the read-only
    input and the write-only output are not charged.
    """

    budget: Optional[int] = None
    current: int = 0
    peak: int = 0
    events: int = field(default=0, repr=False)

    def alloc(self, words: int) -> int:
        words = int(words)
        if words < 0:
            raise ValueError("negative allocation")
        self.current += words
        self.events += 1
        if self.current > self.peak:
            self.peak = self.current
        return words

    def free(self, words: int) -> None:
        words = int(words)
        if words > self.current:
            raise RuntimeError(f"ledger underflow: freeing {words} of {self.current} words")
        self.current -= words

    @contextlib.contextmanager
    def hold(self, words: int):
        words = self.alloc(words)
        try:
            yield
        finally:
            self.free(words)

    @staticmethod
    def words(*arrays) -> int:
        """Word count of the given buffers (capacity, not just the used part)."""
        total = 0
        for a in arrays:
            total += int(a.size) if hasattr(a, "size") else len(a)
        return total


def fibonacci_string(index: int) -> str:
    if index < 1:
        raise ValueError("index must be >= 1")
    a, b = "1", "0"
    if index == 1:
        return a
    for _ in range(index - 2):
        a, b = b, b + a
    return b


def gen_fibonacci(index: int) -> TextSource:
    """Fibonacci string F(index): F(1)="1", F(2)="0", F(k)=F(k-1)F(k-2); '0'->1, '1'->2."""
    s = fibonacci_string(index)
    return TextSource([1 if ch == "0" else 2 for ch in s], sigma=2, symbols=["0", "1"])


def gen_thue_morse(order: int) -> TextSource:
    """Thue-Morse prefix of length 2**order over {0, 1} mapped to {1, 2}."""
    if order < 0:
        raise ValueError("order must be >= 0")
    bits = np.zeros(1, dtype=np.int64)
    for _ in range(order):
        bits = np.concatenate([bits, 1 - bits])
    return TextSource(bits + 1, sigma=2, symbols=["0", "1"])


def gen_random(n: int, sigma: int, seed: int) -> TextSource:
    if n < 0 or sigma < 1:
        raise ValueError("need n >= 0 and sigma >= 1")
    rng = np.random.default_rng(seed)
    return TextSource(rng.integers(1, sigma + 1, size=n, dtype=np.int64), sigma=sigma)


def gen_ed_string(values: Sequence[int]) -> TextSource:
    """A followed by m pairwise distinct sentinels m+1..2m.

    The array values are rank-reduced first so every value is at most m;
    equality between entries is all that matters.
    """
    m = len(values)
    if m < 1:
        raise ValueError("array must be non-empty")
    alphabet = sorted(set(values))
    rank = {v: r + 1 for r, v in enumerate(alphabet)}
    letters = [rank[v] for v in values] + list(range(m + 1, 2 * m + 1))
    return TextSource(letters, sigma=2 * m)


def load_text(path: str, mode: str = "bytes") -> TextSource:
    if mode == "bytes":
        with open(path, "rb") as fh:
            return TextSource.from_bytes(fh.read())
    if mode == "ints":
        with open(path) as fh:
            return TextSource.from_ints([int(tok) for tok in fh.read().split()])
    raise ValueError(f"unknown alphabet mode {mode!r}")


def from_spec(spec: str, seed: Optional[int] = None) -> TextSource:
    """Build a text from ``fib:K``, ``tm:R``, ``rand:N:SIGMA:SEED`` or ``ed:FILE``."""
    kind, _, rest = spec.partition(":")
    parts = rest.split(":") if rest else []
    try:
        if kind == "fib" and len(parts) == 1:
            return gen_fibonacci(int(parts[0]))
        if kind == "tm" and len(parts) == 1:
            return gen_thue_morse(int(parts[0]))
        if kind == "rand" and len(parts) in (2, 3):
            n, sigma = int(parts[0]), int(parts[1])
            s = int(parts[2]) if len(parts) == 3 else (seed if seed is not None else default_seed())
            return gen_random(n, sigma, s)
    except ValueError as exc:
        raise ValueError(f"bad generator spec {spec!r}: {exc}") from None
    if kind == "ed" and rest:
        with open(rest) as fh:
            return gen_ed_string([int(tok) for tok in fh.read().split()])
    raise ValueError(f"bad generator spec {spec!r}")


DEFAULT_SEED = 20240607


def default_seed() -> int:
    env = os.environ.get("DELTAMETER_SEED")
    return int(env) if env else DEFAULT_SEED
