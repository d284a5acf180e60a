import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from deltameter.multimatch import SearchBeforeQuery, ValidationInstance, multi_search_before, multi_validate
from deltameter.primitives.fingerprint import FingerprintConfig
from deltameter.text import SpaceLedger, TextSource

from conftest import texts


def cfg_for(t):
    return FingerprintConfig.for_text(max(t.n, 1), t.sigma, seed=3)


def naive_validate(t, inst):
    d = t.letters()
    ell = inst.ell
    return [[d[q - 1:q - 1 + ell] == d[p - 1:p - 1 + ell] for q in lst]
            for p, lst in zip(inst.patterns, inst.lists)]


def naive_search(t, q):
    d = t.letters()
    pat = d[q.pat_start - 1:q.pat_start - 1 + q.pat_len]
    return any(d[i:i + q.pat_len] == pat for i in range(0, q.bound - 1))


def test_validate_examples():
    t = TextSource.from_str("abaab")
    inst = ValidationInstance(2, [1, 3], [[1, 4], [2]])
    assert multi_validate(inst, t, cfg_for(t)) == [[True, True], [False]]
    assert multi_validate(ValidationInstance(2, [1], [[]]), t, cfg_for(t)) == [[]]


def test_search_examples():
    t = TextSource.from_str("abaab")
    qs = [SearchBeforeQuery(4, 2, 4), SearchBeforeQuery(3, 3, 3), SearchBeforeQuery(2, 2, 1)]
    assert multi_search_before(qs, t, cfg_for(t)) == [True, False, False]


@st.composite
def instances(draw):
    t = draw(texts(min_size=1, max_size=60, max_sigma=3))
    ell = draw(st.integers(1, t.n))
    starts = st.integers(1, t.n - ell + 1)
    s = draw(st.integers(1, 6))
    pats = draw(st.lists(starts, min_size=s, max_size=s))
    lists = [draw(st.lists(starts, max_size=8)) for _ in pats]
    return t, ValidationInstance(ell, pats, lists)


@given(instances(), st.booleans())
def test_validate_matches_naive(case, strict):
    t, inst = case
    out = multi_validate(inst, t, cfg_for(t), strict=strict)
    assert out == naive_validate(t, inst)


@given(instances())
def test_grouping_leaves_flags_unchanged(case):
    t, inst = case
    g = inst.grouped(t)
    d = t.letters()
    flags = {}
    for p, lst, res in zip(inst.patterns, inst.lists, multi_validate(inst, t, cfg_for(t))):
        for q, f in zip(lst, res):
            flags[(tuple(d[p - 1:p - 1 + inst.ell]), q)] = f
    for p, lst, res in zip(g.patterns, g.lists, multi_validate(g, t, cfg_for(t))):
        for q, f in zip(lst, res):
            assert flags[(tuple(d[p - 1:p - 1 + inst.ell]), q)] == f
    keys = [tuple(d[p - 1:p - 1 + g.ell]) for p in g.patterns]
    assert len(keys) == len(set(keys))


@given(instances())
def test_validate_space_linear(case):
    t, inst = case
    led = SpaceLedger()
    multi_validate(inst, t, cfg_for(t), ledger=led)
    assert led.peak <= 8 * (inst.ell + inst.N) + 16
    assert led.current == 0


@st.composite
def queries(draw):
    t = draw(texts(min_size=1, max_size=60, max_sigma=3))
    out = []
    for _ in range(draw(st.integers(1, 10))):
        s = draw(st.integers(1, t.n))
        m = draw(st.integers(1, t.n - s + 1))
        out.append(SearchBeforeQuery(s, m, draw(st.integers(1, s))))
    return t, out


@given(queries(), st.booleans())
def test_search_matches_naive(case, strict):
    t, qs = case
    assert multi_search_before(qs, t, cfg_for(t), strict=strict) == [naive_search(t, q) for q in qs]


@given(queries())
def test_search_prefix_monotone(case):
    t, qs = case
    prefixes = [SearchBeforeQuery(q.pat_start, k, q.bound) for q in qs for k in range(1, q.pat_len + 1)]
    ans = multi_search_before(prefixes, t, cfg_for(t))
    e = 0
    for q in qs:
        row = ans[e:e + q.pat_len]
        e += q.pat_len
        # true for a pattern implies true for every shorter prefix
        assert all(row[i] or not row[i + 1] for i in range(len(row) - 1))
