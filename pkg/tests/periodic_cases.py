"""Constructed texts with an earlier run Z and the anchor's own run Y of one period."""
import numpy as np

from deltameter.profilers.anchors import anchor_occurrences
from deltameter.text import TextSource

NOISE = (4, 5, 6)


def _primitive(root):
    p = len(root)
    return all(root != root[k:] + root[:k] for k in range(1, p))


def _noise(rng, k):
    return [int(v) for v in rng.choice(NOISE, size=k)]


def _residue_pick(rng, target, p, want_equal, lo, hi):
    """A value in [lo, hi] congruent (or not) to target mod p."""
    vals = [v for v in range(lo, hi + 1) if ((v - target) % p == 0) == want_equal]
    return int(rng.choice(vals)) if vals else int(rng.integers(lo, hi + 1))


def build_case(rng):
    """(text, b, alpha, anchor start 1-based) with runs Z and Y of a random primitive root."""
    b = int(rng.integers(4, 13))
    p = int(rng.integers(1, b // 2 + 1))
    while True:
        root = [int(v) for v in rng.integers(1, 4, size=p)]
        if _primitive(root):
            break
    alpha = int(rng.integers(2, 4))
    Lm = (alpha - 1) * b
    ell_true = int(rng.integers(0, b + 4))
    m_true = int(rng.integers(0, 2 * b + 4))
    ell, m = min(ell_true, b), min(m_true, 2 * b)
    ph = int(rng.integers(0, p))
    aph = (ph + ell_true) % p
    cls = int(rng.integers(0, 4))
    zl = _residue_pick(rng, ell, p, cls in (1, 3), 0, b + 4)
    zr = _residue_pick(rng, m, p, cls in (2, 3), 0, 2 * b + 4)
    Z = [root[(aph - zl + i) % p] for i in range(zl + Lm + zr)]
    Y = [root[(ph + i) % p] for i in range(ell_true + Lm + m_true)]
    before = _noise(rng, int(rng.integers(1, 4)))
    after = _noise(rng, int(rng.integers(1, 4)))
    head = (before if rng.random() < 0.5 else _noise(rng, len(before))) + Z
    head += after if rng.random() < 0.5 else _noise(rng, len(after))
    # place Y so that the anchor starts at a multiple of b, with fresh noise before it
    lead = _noise(rng, int(rng.integers(1, 3)))
    if rng.random() < 0.5:
        lead = before[-len(lead):] if len(before) >= len(lead) else lead
    y0 = len(head) + len(lead)
    a0 = y0 + ell_true
    pad = (-a0) % b
    a0 += pad
    filler = _noise(rng, pad)
    tail = [] if rng.random() < 0.2 else (after if rng.random() < 0.5 else _noise(rng, len(after)))
    letters = head + filler + lead + Y + tail
    return TextSource(letters, sigma=6), b, alpha, a0 + 1


def anchor_at(text, b, alpha, start):
    for a in anchor_occurrences(text, b, alpha):
        if a.start == start:
            return a
    raise LookupError("no anchor at that start")


def naive_occurrences_before(text, anchor):
    d = text.letters()
    a0, Lm = anchor.start - 1, anchor.length
    pat = d[a0:a0 + Lm]
    return [x + 1 for x in range(a0) if d[x:x + Lm] == pat]


def naive_ext(text, anchor, x):
    """(lle, lre) of occurrence x (1-based) by direct comparison."""
    d = text.letters()
    n, b = text.n, anchor.b
    a0, Lm, x0 = anchor.start - 1, anchor.length, x - 1
    lam = 0
    while lam < min(b, x0) and d[x0 - 1 - lam] == d[a0 - 1 - lam]:
        lam += 1
    rho = 0
    cap = min(2 * b, n - (a0 + Lm))
    while rho < cap and d[x0 + Lm + rho] == d[a0 + Lm + rho]:
        rho += 1
    return lam, rho


def end_array(points, b):
    end = [0] * b
    for lam, rho in points:
        if lam >= 1:
            end[b - lam] = max(end[b - lam], min(rho, 2 * b - 1) + 1)
    for i in range(1, b):
        end[i] = max(end[i], end[i - 1])
    return end
