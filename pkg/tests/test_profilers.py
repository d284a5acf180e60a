from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltameter.analysis import repetition_index
from deltameter.profilers import (auto_budget, counts_fold, delta_constant_space, prefix_max, profile_blocked,
                                  profile_bruteforce, profile_cubic, profile_fast, profile_lce, profile_linear)
from deltameter.profilers.blocked import blocked_kernel
from deltameter.text import SpaceLedger, TextSource, gen_fibonacci, gen_random, gen_thue_morse

from conftest import naive_profile, texts

BUDGETED = [profile_blocked, profile_lce, profile_fast]


def check_invariants(text, prof):
    n = text.n
    v = prof.tolist()
    if n == 0:
        assert v == []
        return
    assert v[0] == text.distinct_letters()
    assert v[-1] == 1
    for k in range(1, n + 1):
        assert 1 <= v[k - 1] <= min(text.sigma ** min(k, 64), n - k + 1)
    r = repetition_index(prof)
    assert all(v[k] == v[k - 1] - 1 for k in range(r + 1, n))


# oracles

def test_bruteforce_examples():
    assert profile_bruteforce(TextSource.from_str("abaab")).tolist() == [2, 3, 3, 2, 1]
    assert profile_bruteforce(TextSource.from_str("aaaa")).tolist() == [1, 1, 1, 1]
    tm = profile_bruteforce(gen_thue_morse(3))
    assert (tm[1], tm[2]) == (2, 4)
    with pytest.raises(ValueError):
        profile_bruteforce(gen_random(50, 2, 1), limit=10)


def test_linear_examples():
    t = TextSource.from_str("abaab")
    assert profile_linear(t).tolist() == profile_bruteforce(t).tolist()
    assert profile_linear(gen_fibonacci(6)).delta() == (Fraction(2), 1)
    assert profile_linear(TextSource([])).tolist() == []


def test_constant_space_examples():
    assert delta_constant_space(TextSource.from_str("abaab")) == (Fraction(2), 1)
    assert delta_constant_space(TextSource.from_str("aaaa")) == (Fraction(1), 1)
    assert delta_constant_space(gen_thue_morse(4)) == (Fraction(5, 2), 4)
    led = SpaceLedger()
    profile_cubic(gen_random(40, 3, 2), led)
    assert led.peak <= 16


@given(texts(max_size=50))
def test_oracles_agree(t):
    want = naive_profile(t.letters())
    assert profile_bruteforce(t).tolist() == want
    assert profile_linear(t).tolist() == want
    assert profile_cubic(t).tolist() == want
    check_invariants(t, profile_linear(t))


# budgeted algorithms

@pytest.mark.parametrize("algo", BUDGETED)
def test_whole_text_block(algo):
    t = gen_random(60, 3, 9)
    assert algo(t, t.n).tolist() == profile_bruteforce(t).tolist()
    assert algo(t, 10 * t.n).tolist() == profile_bruteforce(t).tolist()


def test_blocked_anchor_example():
    # phase 2, b = 3: the block-2 anchor "aab" occurs earlier at 1 and 4
    t = TextSource.from_str("aabaabaab")
    assert profile_blocked(t, 3).tolist() == profile_bruteforce(t).tolist()


@given(texts(min_size=1, max_size=70, max_sigma=4), st.integers(1, 20))
def test_budgeted_exact(t, b):
    want = naive_profile(t.letters())
    for algo in BUDGETED:
        prof = algo(t, b)
        assert prof.tolist() == want, algo.__name__
        check_invariants(t, prof)
    assert profile_lce(t, b, mode="dictionary").tolist() == want
    assert profile_lce(t, b, mode="merged").tolist() == want


@pytest.mark.parametrize("sigma", [2, 4, 26])
@pytest.mark.parametrize("b", [4, 16, 64])
def test_lce_random_examples(sigma, b):
    rng = np.random.default_rng(sigma * 100 + b)
    for _ in range(3):
        n = int(rng.integers(b, 513))
        t = TextSource(rng.integers(1, sigma + 1, size=n).tolist(), sigma=sigma)
        assert profile_lce(t, b).tolist() == profile_bruteforce(t).tolist()


def test_large_alphabet():
    n = 200
    rng = np.random.default_rng(4)
    base = rng.integers(1, n * n, size=40)
    letters = np.concatenate([base, base[5:30], rng.integers(1, n * n, size=n - 65), base[:10]])
    t = TextSource(letters.tolist(), sigma=n * n)
    want = profile_bruteforce(t).tolist()
    for b in (4, 16, 64):
        assert profile_lce(t, b).tolist() == want
        assert profile_fast(t, b).tolist() == want


def test_phase_independence():
    t = gen_fibonacci(11)
    b = 7
    full = profile_lce(t, b).values
    for algo in BUDGETED:
        merged = np.zeros(t.n, dtype=np.int64)
        for alpha in reversed(range(1, t.n // b + 1)):
            part = algo(t, b, phases=[alpha]).values
            merged += part
        assert merged.tolist() == full.tolist()


@pytest.mark.parametrize("algo", [profile_blocked, profile_lce])
def test_space_linear_in_b(algo):
    for b in (4, 16, 64):
        peaks = []
        for n in (256, 1024, 4096):
            led = SpaceLedger()
            algo(gen_random(n, 4, 1), b, led)
            peaks.append(led.peak)
            assert led.current == 0
        assert peaks[0] == peaks[-1]
        assert peaks[0] <= 120 * b


def test_fast_space_bound():
    for n in (512, 2048, 8192):
        b = auto_budget(n)
        for t in (gen_random(n, 2, 3), gen_thue_morse(n.bit_length() - 1)):
            prof = profile_fast(t, b)
            assert prof.peak_words <= 24 * max(b, n * n // (b * b))
            assert prof.warnings == []
    assert profile_fast(gen_random(500, 2, 1), 8).warnings


# folding

def test_counts_fold_examples():
    assert counts_fold([1, 0], 1, 2, np.zeros(2, dtype=np.int64)).tolist() == [2, 2]
    assert counts_fold([4, 4], 1, 2, np.zeros(2, dtype=np.int64)).tolist() == [0, 0]
    assert counts_fold([0, 0, 0], 1, 3, np.zeros(3, dtype=np.int64)).tolist() == [3, 3, 3]


def test_prefix_max_example():
    assert prefix_max([3, 0, 1]) == [3, 3, 3]


@given(st.integers(1, 6), st.integers(0, 4), st.data())
def test_counts_fold_matches_direct(b, alpha, data):
    end = data.draw(st.lists(st.integers(0, 2 * b + alpha * b), min_size=b, max_size=b))
    got = counts_fold(end, alpha, b, np.zeros(b, dtype=np.int64)).tolist()
    want = [sum(1 for i in range(1, b + 1) if k > alpha * b - i + end[i - 1])
            for k in range(alpha * b + 1, alpha * b + b + 1)]
    assert got == want
