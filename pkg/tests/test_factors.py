import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from morphext import (
    DEFAULT_CAPS,
    ResourceError,
    DomainError,
    ExtremalQuery,
    Morphism,
    MorphicSource,
    SampleSource,
    TotalOrder,
    build_factors,
    fixed_point,
    greedy_extremal,
    is_recurrent_sample,
    mirror_identities_check,
)
from morphext.casestudies import fixture
from morphext.factors import closure_factors

import oracles
from conftest import orders


def rules_of(m):
    return {t: list(m.target.decode(img)) for t, img in zip(m.source, m.images)}


def decoded(A, words):
    return {tuple(A.decode(w)) for w in words}


def test_period_doubling_short_extremals(pd):
    rho, bar = orders(pd)
    src = MorphicSource(pd, "0")
    A = pd.source
    assert A.format(greedy_extremal(src, "0", rho, 6), "") == "000100"
    assert A.format(greedy_extremal(src, ExtremalQuery("0", bar, 8)), "") == "01010100"


def test_rudin_shapiro_least_word_is_u(rs):
    src = MorphicSource(rs, "0")
    got = greedy_extremal(src, "0", TotalOrder.natural(rs.source), 16)
    assert rs.source.format(got, "") == "0102013101023202"


def test_absent_letter_is_domain_error():
    m = Morphism.from_rules({"0": "01", "1": "1", "2": "2"}, "012")
    with pytest.raises(DomainError):
        greedy_extremal(MorphicSource(m, "0"), "2", TotalOrder.natural(m.source), 4)


def test_erasing_morphism_rejected():
    m = Morphism.from_rules({"0": "01", "1": []}, "01")
    with pytest.raises(DomainError):
        MorphicSource(m, "0")


@pytest.mark.parametrize("name", ["period-doubling", "chacon", "fibonacci", "rudin-shapiro", "krieger"])
@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_factor_sets_match_brute_closure(name, n):
    m, seed = fixture(name)
    fs = build_factors(m, seed, n)
    want = oracles.closure(rules_of(m), seed, n)
    assert decoded(m.source, fs.words(n)) == want


def test_closure_factors_matches_oracle(chacon):
    x = fixed_point(chacon, "0")
    got = closure_factors(chacon, x.prefix(7), 7)
    assert decoded(chacon.source, got) == oracles.closure(rules_of(chacon), "0", 7)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32).map(random.Random), st.integers(1, 7))
def test_random_prolongable_factor_sets(rng, n):
    rules, seed = oracles.random_prolongable_binary(rng)
    m = Morphism.from_rules(rules, "01")
    fs = build_factors(m, seed, n)
    assert decoded(m.source, fs.words(n)) == oracles.closure(rules, seed, n)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32).map(random.Random), st.integers(1, 9))
def test_greedy_equals_brute_min(rng, n):
    rules, seed = oracles.random_prolongable_binary(rng)
    m = Morphism.from_rules(rules, "01")
    A = m.source
    fs = build_factors(m, seed, n)
    facs = oracles.closure(rules, seed, n)
    for perm in oracles.all_orders("01"):
        order = TotalOrder.from_tokens(A, perm)
        key = {t: i for i, t in enumerate(perm)}
        for b in "01":
            if not any(w[0] == b for w in facs):
                continue
            want = oracles.brute_min(facs, b, key)
            assert tuple(A.decode(fs.greedy(A.code(b), order, n))) == tuple(want)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32).map(random.Random), st.integers(1, 40), st.integers(1, 40))
def test_greedy_is_monotone_in_length(rng, a, b):
    rules, seed = oracles.random_prolongable_binary(rng)
    m = Morphism.from_rules(rules, "01")
    order = TotalOrder.from_tokens(m.source, rng.sample(["0", "1"], 2))
    lo, hi = sorted((a, b))
    # long runs of a bounded letter can push F_n far beyond any prefix we can hold
    caps = DEFAULT_CAPS.with_(symbols=200_000)
    try:
        long = greedy_extremal(MorphicSource(m, seed, caps=caps), seed, order, hi)
    except ResourceError:
        assume(False)
    short = greedy_extremal(MorphicSource(m, seed, caps=caps), seed, order, lo)
    assert long.startswith(short)


def test_unreachable_factor_length_is_resource_error():
    # runs of 0 grow by one per level, so 0^40 first appears near 2^40
    m = Morphism.from_rules({"0": "0", "1": "1010"}, "01")
    with pytest.raises(ResourceError):
        MorphicSource(m, "1", caps=DEFAULT_CAPS.with_(symbols=100_000)).oracle(40)


@pytest.mark.parametrize("name", ["period-doubling", "fibonacci", "rudin-shapiro"])
def test_prefix_factors_stabilize_to_the_closure(name):
    m, seed = fixture(name)
    n = 6
    fs = build_factors(m, seed, n)
    x = fixed_point(m, seed)
    h = 64
    while True:
        text = x.prefix(h)
        seen = {text[i:i + n] for i in range(h - n + 1)}
        assert seen <= fs.words(n)
        if seen == fs.words(n):
            break
        h *= 2
        assert h <= 1 << 16


def test_fibonacci_sturmian_extremals(fib):
    src = MorphicSource(fib, "0")
    c = src.word().prefix(2000)
    rho = TotalOrder.natural(fib.source)
    zero, one = fib.source.code("0"), fib.source.code("1")
    assert greedy_extremal(src, "0", rho, 2000) == (zero + c)[:2000]
    assert greedy_extremal(src, "1", rho, 2000) == (one + zero + c)[:2000]


def test_minimal_absent_words(pd):
    fs = build_factors(pd, "0", 4)
    A = pd.source
    got = {A.format(w, "") for w in fs.minimal_absent(4)}
    # 11 never occurs; 000 and 1001 are forbidden as well
    assert "11" in got
    for w in got:
        enc = A.encode(w)
        assert enc not in fs
        assert len(w) == 1 or (enc[1:] in fs and enc[:-1] in fs)


def test_sample_source_is_uncertified(pd):
    x = fixed_point(pd, "0")
    s = SampleSource(x, 256)
    fs = s.oracle(8)
    assert not fs.certified
    assert fs.words(8) <= build_factors(pd, "0", 8).words(8)


def test_recurrence_sample_examples(pd):
    assert is_recurrent_sample(MorphicSource(pd, "0"), 4096)
    m = Morphism.from_rules({"0": "01", "1": "1"}, "01")
    assert not is_recurrent_sample(MorphicSource(m, "0"), 64)


def test_recurrence_sample_rudin_shapiro_is_false_at_quarter(rs):
    # long factors of u recur later than a quarter of the horizon
    assert not is_recurrent_sample(MorphicSource(rs, "0"), 4096)
    assert is_recurrent_sample(MorphicSource(rs, "0"), 4096, window=64)


@pytest.mark.parametrize("name", ["period-doubling", "chacon", "fibonacci"])
def test_mirror_identities(name):
    m, seed = fixture(name)
    assert mirror_identities_check(m, seed, 1000)


def test_mirror_identities_preconditions(rs):
    with pytest.raises(DomainError):
        mirror_identities_check(rs, "0", 100)
    m = Morphism.from_rules({"0": "01", "1": "1"}, "01")
    with pytest.raises(DomainError, match="recurrence"):
        mirror_identities_check(m, "0", 100)
    m = Morphism.from_rules({"0": "00", "1": "1"}, "01")
    with pytest.raises(DomainError, match="do not occur"):
        mirror_identities_check(m, "0", 100)


def test_coded_source_factors(rs, rs_g):
    src = MorphicSource(rs, "0", coding=rs_g)
    fs = src.oracle(6)
    w = src.word().prefix(1 << 14)
    seen = {w[i:i + 6] for i in range(len(w) - 5)}
    assert seen == fs.words(6)
