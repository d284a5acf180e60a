import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltameter.profilers import profile_bruteforce, profile_linear
from deltameter.text import (SpaceLedger, TextSource, fibonacci_string, from_spec, gen_ed_string,
                             gen_fibonacci, gen_random, gen_thue_morse, load_text)


@pytest.mark.parametrize("index,expected", [(1, "1"), (4, "010"), (5, "01001")])
def test_fibonacci_examples(index, expected):
    assert gen_fibonacci(index).render() == expected


@pytest.mark.parametrize("order,expected", [(0, "0"), (2, "0110"), (3, "01101001")])
def test_thue_morse_examples(order, expected):
    assert gen_thue_morse(order).render() == expected


def test_random_examples():
    assert gen_random(0, 2, 7).n == 0
    assert gen_random(5, 1, 0).letters() == [1] * 5
    assert gen_random(50, 4, 3).letters() == gen_random(50, 4, 3).letters()
    assert set(gen_random(500, 4, 1).letters()) == {1, 2, 3, 4}


@pytest.mark.parametrize("values,delta", [([1, 2, 1], 5), ([1, 2, 3], 6), ([5], 2)])
def test_ed_string_examples(values, delta):
    t = gen_ed_string(values)
    assert t.n == 2 * len(values)
    assert profile_bruteforce(t).delta()[0] == delta


@given(st.integers(1, 20))
def test_fibonacci_lengths(k):
    a, b = 1, 1
    for _ in range(k - 1):
        a, b = b, a + b
    assert gen_fibonacci(k).n == a


@given(st.integers(0, 10))
def test_thue_morse_doubling(r):
    small, big = gen_thue_morse(r).letters(), gen_thue_morse(r + 1).letters()
    assert big[:len(small)] == small
    assert big[len(small):] == [3 - c for c in small]


@given(st.lists(st.integers(0, 6), min_size=1, max_size=30))
def test_ed_string_detects_duplicates(values):
    delta = profile_linear(gen_ed_string(values)).delta()[0]
    assert (delta < 2 * len(values)) == (len(set(values)) < len(values))


@given(st.lists(st.integers(1, 9), max_size=30), st.data())
def test_access_is_pure_and_counted(letters, data):
    t = TextSource(letters, sigma=9)
    reads = 0
    for _ in range(5):
        if not letters:
            break
        i = data.draw(st.integers(1, len(letters)))
        assert t.access(i) == t.access(i) == letters[i - 1]
        assert 1 <= t.access(i) <= t.sigma
        assert t.reads >= reads
        reads = t.reads


def test_text_is_read_only():
    t = TextSource.from_str("abc")
    with pytest.raises(ValueError):
        t.data[0] = 5
    with pytest.raises(IndexError):
        t.access(4)


def test_ledger_balance():
    led = SpaceLedger()
    with led.hold(10):
        led.alloc(5)
        led.free(5)
        assert led.current == 10
    assert led.current == 0 and led.peak == 15
    with pytest.raises(RuntimeError):
        led.free(1)


def test_ledger_balanced_after_profilers():
    from deltameter.profilers import profile_blocked, profile_fast, profile_lce
    t = gen_random(200, 3, 1)
    for run in (lambda l: profile_blocked(t, 16, l), lambda l: profile_lce(t, 16, l),
                lambda l: profile_fast(t, 16, l), lambda l: profile_linear(t, l)):
        led = SpaceLedger()
        led.alloc(7)
        run(led)
        assert led.current == 7


def test_specs_and_files(tmp_path):
    assert from_spec("fib:5").render() == "01001"
    assert from_spec("tm:3").render() == "01101001"
    assert from_spec("rand:20:3:4").letters() == gen_random(20, 3, 4).letters()
    f = tmp_path / "a.txt"
    f.write_text("3 1 3 2")
    assert from_spec(f"ed:{f}").n == 8
    assert load_text(str(f), "ints").letters() == [3, 1, 3, 2]
    g = tmp_path / "b.bin"
    g.write_bytes(b"abaab")
    assert load_text(str(g)).render() == "abaab"
    with pytest.raises(ValueError):
        from_spec("nope:1")
    assert fibonacci_string(6) == "01001010"
