import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from deltameter.text import TextSource

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def texts(min_size=0, max_size=40, max_sigma=4):
    """Strategy: texts over a small alphabet, biased toward repetitive ones."""
    plain = st.lists(st.integers(1, max_sigma), min_size=min_size, max_size=max_size)

    @st.composite
    def periodic(draw):
        root = draw(st.lists(st.integers(1, max_sigma), min_size=1, max_size=5))
        n = draw(st.integers(max(min_size, 1), max(max_size, 1)))
        letters = [root[i % len(root)] for i in range(n)]
        for _ in range(draw(st.integers(0, 2))):
            i = draw(st.integers(0, n - 1))
            letters[i] = draw(st.integers(1, max_sigma))
        return letters

    return st.one_of(plain, periodic()).map(lambda xs: TextSource(xs, sigma=max_sigma))


def naive_profile(letters):
    n = len(letters)
    return [len({tuple(letters[i:i + k]) for i in range(n - k + 1)}) for k in range(1, n + 1)]


def random_text(rng, n, sigma):
    return TextSource(rng.integers(1, sigma + 1, size=n).tolist(), sigma=sigma)


def lcs_dp(x, y):
    best = 0
    prev = [0] * (len(y) + 1)
    for a in x:
        cur = [0] * (len(y) + 1)
        for j, c in enumerate(y, 1):
            if a == c:
                cur[j] = prev[j - 1] + 1
                best = max(best, cur[j])
        prev = cur
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
