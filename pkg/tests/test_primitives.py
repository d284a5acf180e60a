import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltameter.primitives.fingerprint import MERSENNE61, Fingerprint, FingerprintConfig, fingerprint
from deltameter.primitives.lce import build_lce_index
from deltameter.primitives.matching import find_occurrences, naive_occurrences
from deltameter.primitives.periodicity import Run, extend_run, make_run, period_of
from deltameter.text import SpaceLedger, TextSource, gen_fibonacci, gen_random

from conftest import texts


def naive_period(w):
    return next(p for p in range(1, len(w) + 1) if all(w[i] == w[i + p] for i in range(len(w) - p)))


def naive_lcp(a, b):
    k = 0
    while k < len(a) and k < len(b) and a[k] == b[k]:
        k += 1
    return k


# fingerprints

def test_fingerprint_examples():
    t = TextSource.from_str("ab")
    cfg = FingerprintConfig(p=101, x=3)
    assert fingerprint(t, 1, 2, cfg).value == 7
    empty = fingerprint(t, 2, 1, cfg)
    assert (empty.value, empty.length, empty.xpow) == (0, 0, 1)
    fa, fb = fingerprint(t, 1, 1, cfg), fingerprint(t, 2, 2, cfg)
    assert fa.compose(fb, 101).value == 7


@given(texts(min_size=1), st.data())
def test_fingerprint_composition(t, data):
    cfg = FingerprintConfig.for_text(t.n, t.sigma, seed=data.draw(st.integers(0, 99)))
    i = data.draw(st.integers(1, t.n))
    k = data.draw(st.integers(i - 1, t.n))
    j = data.draw(st.integers(k, t.n))
    whole = fingerprint(t, i, j, cfg)
    assert fingerprint(t, i, k, cfg).compose(fingerprint(t, k + 1, j, cfg), cfg.p) == whole
    assert whole.xpow == pow(cfg.x, j - i + 1, cfg.p)


@given(texts(min_size=2), st.data())
def test_equal_fragments_equal_fingerprints(t, data):
    cfg = FingerprintConfig.for_text(t.n, t.sigma)
    d = t.letters()
    k = data.draw(st.integers(1, t.n))
    seen = {}
    for i in range(t.n - k + 1):
        seen.setdefault(tuple(d[i:i + k]), set()).add(fingerprint(t, i + 1, i + k, cfg).value)
    assert all(len(v) == 1 for v in seen.values())


def _collisions(t, cfg):
    d = t.letters()
    n = t.n
    bad = 0
    for k in range(1, n + 1):
        h = 0
        for c in reversed(d[:k]):
            h = (h * cfg.x + c) % cfg.p
        top = pow(cfg.x, k - 1, cfg.p)
        inv = pow(cfg.x, cfg.p - 2, cfg.p)
        groups = {}
        for i in range(n - k + 1):
            groups.setdefault(h, set()).add(tuple(d[i:i + k]))
            if i + k < n:
                h = ((h - d[i]) * inv + d[i + k] * top) % cfg.p
        bad += sum(len(g) - 1 for g in groups.values())
    return bad


@pytest.mark.parametrize("text", [gen_random(256, 4, 3), gen_fibonacci(13)])
def test_fingerprint_collision_audit(text):
    cfg = FingerprintConfig.for_text(text.n, text.sigma, seed=11)
    assert cfg.p == MERSENNE61 and 2 <= cfg.x < cfg.p
    if _collisions(text, cfg):
        cfg = cfg.reseeded()
    assert _collisions(text, cfg) == 0


def test_fingerprint_bound_flag():
    cfg = FingerprintConfig.for_text(1000, 4)
    assert cfg.bound_met(1000, 4)
    assert not cfg.bound_met(10 ** 5, 4)


# matching

def test_find_occurrences_examples():
    t = TextSource.from_str("abaab")
    assert list(find_occurrences(t, 1, 2, 1, 5)) == [1, 4]
    assert list(find_occurrences(t, 3, 2, 1, 5)) == [3]
    assert list(find_occurrences(t, 1, 4, 2, 4)) == []


@given(texts(min_size=1, max_size=50, max_sigma=3), st.data())
def test_find_occurrences_matches_naive(t, data):
    s = data.draw(st.integers(1, t.n))
    m = data.draw(st.integers(1, t.n - s + 1))
    lo = data.draw(st.integers(1, t.n))
    hi = data.draw(st.integers(lo, t.n))
    assert list(find_occurrences(t, s, m, lo, hi)) == naive_occurrences(t, s, m, lo, hi)


# periods and runs

@pytest.mark.parametrize("w,p", [("abab", 2), ("aabaab", 3), ("abc", 3)])
def test_period_examples(w, p):
    t = TextSource.from_str(w)
    assert period_of(t, 1, t.n) == p


@given(texts(min_size=1), st.data())
def test_period_is_smallest(t, data):
    i = data.draw(st.integers(1, t.n))
    j = data.draw(st.integers(i, t.n))
    led = SpaceLedger()
    p = period_of(t, i, j, led)
    assert p == naive_period(t.letters()[i - 1:j])
    assert led.current == 0 and led.peak == j - i + 1


def test_extend_run_examples():
    t = TextSource.from_str("cbababd")
    r = extend_run(t, 2, 5, 2, 1, 7)
    assert (r.s, r.e, r.offset) == (2, 6, 2)
    assert "".join(t.symbols[c - 1] for c in r.root(t)) == "ab"
    assert r.gamma == 2 and r.beta == 1
    r = extend_run(t, 2, 5, 2, 3, 6)
    assert (r.s, r.e, r.offset) == (3, 6, 1)
    u = TextSource.from_str("aaaa")
    assert extend_run(u, 1, 2, 1, 1, 4) == Run(1, 4, 1, 1, 1)
    with pytest.raises(ValueError):
        extend_run(t, 1, 4, 2, 1, 7)


def _naive_lyndon(w):
    return min(w[i:] + w[:i] for i in range(len(w)))


@given(st.lists(st.integers(1, 3), min_size=1, max_size=5), st.integers(0, 10), st.integers(2, 30),
       st.integers(1, 3), st.integers(1, 3))
def test_run_structure(root, shift, length, lpad, rpad):
    if naive_period(root) != len(root):
        return
    p = len(root)
    body = [root[(shift + i) % p] for i in range(max(length, 2 * p))]
    letters = [4] * lpad + body + [5] * rpad
    t = TextSource(letters, sigma=5)
    s = lpad + 1
    r = extend_run(t, s, s + 2 * p - 1, p, 1, t.n)
    assert (r.s, r.e) == (s, s + len(body) - 1)
    assert r.root(t) == _naive_lyndon(body[:p])
    # T[s..e] = t[q..] t^beta t[1..gamma]
    lyn = r.root(t)
    q = r.offset
    rebuilt = lyn[q - 1:] + lyn * r.beta + lyn[:r.gamma]
    assert rebuilt == body
    assert 1 <= r.gamma <= p and r.beta >= 0


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.integers(0, 8), st.integers(0, 8),
       st.integers(8, 20))
def test_offsets_synchronize_with_start_congruence(root, a, c, length):
    if naive_period(root) != len(root):
        return
    p = len(root)
    letters = [root[i % p] for i in range(40)]
    t = TextSource(letters, sigma=3)
    r1 = make_run(t, 1 + a, a + length, p)
    r2 = make_run(t, 1 + c, c + length, p)
    assert r1.root(t) == r2.root(t)
    assert (r1.offset == r2.offset) == ((a - c) % p == 0)


# LCE

def test_lce_examples():
    t = TextSource.from_str("abaabab")
    idx = build_lce_index(t, 1, 5, 6, 2)
    assert idx.lcp_frag_ref(1, 1) == 2
    assert idx.lcp(3, 3) == 3
    idx.release()
    u = TextSource.from_str("xyzab")
    for mode in ("merged", "dictionary"):
        idx = build_lce_index(u, 1, 3, 4, 2, mode=mode)
        assert all(idx.lcp_frag_ref(i, j) == 0 for i in (1, 2, 3) for j in (1, 2))
        idx.release()


@given(texts(min_size=2, max_size=40, max_sigma=3), st.data(), st.sampled_from(["merged", "dictionary"]),
       st.booleans())
def test_lce_matches_naive(t, data, mode, reverse):
    n = t.n
    fl = data.draw(st.integers(1, n))
    fs = data.draw(st.integers(1, n - fl + 1))
    rl = data.draw(st.integers(1, n))
    rs = data.draw(st.integers(1, n - rl + 1))
    led = SpaceLedger()
    idx = build_lce_index(t, fs, fl, rs, rl, ledger=led, mode=mode, reverse=reverse)
    d = t.letters()[::-1] if reverse else t.letters()
    f, r = d[fs - 1:fs - 1 + fl], d[rs - 1:rs - 1 + rl]
    pieces = [(i, f[i - 1:]) for i in range(1, fl + 1)] + [(fl + j, r[j - 1:]) for j in range(1, rl + 1)]
    for i, a in pieces:
        for j, b in pieces:
            assert idx.lcp(i, j) == naive_lcp(a, b)
    assert led.peak <= 20 * (fl + rl + 2)
    idx.release()
    assert led.current == 0


def test_lce_large_alphabet():
    rng = np.random.default_rng(5)
    n = 300
    t = TextSource(rng.integers(1, n * n, size=n).tolist(), sigma=n * n)
    d = t.letters()
    d[200:210] = d[10:20]
    t = TextSource(d, sigma=n * n)
    idx = build_lce_index(t, 1, 40, 201, 20, mode="dictionary")
    assert idx.lcp_frag_ref(11, 1) == 10
    assert idx.lcp_frag_ref(12, 1) == 0
    idx.release()
