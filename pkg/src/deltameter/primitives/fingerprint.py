"""Karp-Rabin fingerprints.

Phi(S) = (S[1] + S[2] x + ... + S[len] x^(len-1)) mod p.

The compiled kernels work modulo the Mersenne prime 2**61 - 1 with a
split 31/30-bit multiplication so every intermediate fits in a signed
64-bit word.  The pure-Python ``fingerprint`` accepts any prime.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

MERSENNE61 = (1 << 61) - 1
_M31 = (1 << 31) - 1
_M30 = (1 << 30) - 1


@njit(cache=True, inline="always")
def _reduce(v):
    v = (v >> 61) + (v & MERSENNE61)
    if v >= MERSENNE61:
        v -= MERSENNE61
    return v


@njit(cache=True, inline="always")
def mulmod(a, b):
    """a * b mod 2**61 - 1 for 0 <= a, b < 2**61 - 1."""
    au = a >> 31
    ad = a & _M31
    bu = b >> 31
    bd = b & _M31
    mid = ad * bu + au * bd
    hi = _reduce(au * bu * 2 + (mid >> 30))
    lo = _reduce(((mid & _M30) << 31) + ad * bd)
    return _reduce(hi + lo)


@njit(cache=True)
def powmod(x, e):
    r = 1
    while e > 0:
        if e & 1:
            r = mulmod(r, x)
        x = mulmod(x, x)
        e >>= 1
    return r


@njit(cache=True)
def fp_range(T, start, length, x):
    """Fingerprint of T[start:start+length] (0-based) by Horner's rule."""
    h = 0
    for t in range(start + length - 1, start - 1, -1):
        h = mulmod(h, x) + T[t]
        if h >= MERSENNE61:
            h -= MERSENNE61
    return h


@njit(cache=True, inline="always")
def roll(h, out_letter, in_letter, x_inv, x_top):
    """Slide a window one step right: drop ``out_letter``, append ``in_letter``."""
    h = h - out_letter
    if h < 0:
        h += MERSENNE61
    h = mulmod(h, x_inv) + mulmod(in_letter, x_top)
    if h >= MERSENNE61:
        h -= MERSENNE61
    return h


@dataclass(frozen=True)
class FingerprintConfig:
    p: int
    x: int
    c: int = 1
    seed: int = 0

    @classmethod
    def for_text(cls, n: int, sigma: int, seed: int = 0, c: int = 1) -> "FingerprintConfig":
        """Random evaluation point modulo 2**61 - 1.

        The collision bound needs ``p > max(sigma, n**(c+4))``; with the fixed
        61-bit prime this holds up to n ~ 4700 at c = 1.  Beyond that the
        kernels stay exact through letter verification (see ``bound_met``).
        """
        if c < 1:
            raise ValueError("c must be >= 1")
        if sigma >= MERSENNE61:
            raise ValueError("alphabet too large for the 61-bit modulus")
        rng = np.random.default_rng(seed)
        x = int(rng.integers(2, MERSENNE61 - 1))
        return cls(p=MERSENNE61, x=x, c=c, seed=seed)

    def bound_met(self, n: int, sigma: int) -> bool:
        return self.p > max(sigma, max(n, 1) ** (self.c + 4))

    @property
    def x_inv(self) -> int:
        return pow(self.x, self.p - 2, self.p)

    def reseeded(self) -> "FingerprintConfig":
        rng = np.random.default_rng(self.seed + 0x9E3779B9)
        return FingerprintConfig(p=self.p, x=int(rng.integers(2, self.p - 1)), c=self.c, seed=self.seed + 1)


@dataclass(frozen=True)
class Fingerprint:
    value: int
    length: int
    xpow: int

    def compose(self, other: "Fingerprint", p: int) -> "Fingerprint":
        """Fingerprint of the concatenation self . other."""
        return Fingerprint((self.value + self.xpow * other.value) % p,
                           self.length + other.length,
                           (self.xpow * other.xpow) % p)


def fingerprint(text, i: int, j: int, cfg: FingerprintConfig) -> Fingerprint:
    """Phi(T[i..j]) for 1-based inclusive bounds; ``i == j + 1`` is the empty fragment."""
    n = text.n
    if not (1 <= i <= j + 1 <= n + 1):
        raise ValueError(f"bad fragment [{i}, {j}] for n={n}")
    p, x = cfg.p, cfg.x
    h = 0
    for t in range(j, i - 1, -1):
        h = (h * x + int(text.data[t - 1])) % p
    return Fingerprint(h, j - i + 1, pow(x, j - i + 1, p))
