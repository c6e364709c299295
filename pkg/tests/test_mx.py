import random

import pytest
from hypothesis import given, settings, strategies as st

from morphext import DomainError, Morphism, MorphicSource, Verdict, binary_mx_witnesses, check_mx
from morphext.casestudies import fixture
from morphext.mx import cone_prefix

import oracles


def fmt(m, w):
    return m.target.format(w, "")


def test_krieger_example_in_mx():
    m, seed = fixture("krieger")
    r = check_mx(m, (m, seed))
    assert r.verdict is Verdict.IN_MX
    assert {t: fmt(m, w) for t, w in r.witnesses.items()} == {"0": "021", "1": "020", "2": "1"}


def test_nested_cones_not_in_mx():
    m, seed = fixture("nested-cones")
    r = check_mx(m, (m, seed))
    assert r.verdict is Verdict.NOT_IN_MX
    assert r.violation == ("1", "2")


def test_period_doubling_in_mx(pd):
    assert check_mx(pd).in_mx


def test_erasing_is_never_in_mx():
    m = Morphism.from_rules({"0": "01", "1": []}, "01")
    r = check_mx(m)
    assert r.verdict is Verdict.NOT_IN_MX and "erasing" in r.note


def test_unknown_at_small_horizon():
    # both cone prefixes are runs of 1 that never separate on 0 1 1 1 ...
    inner = Morphism.from_rules({"0": "01", "1": "1"}, "01")
    m = Morphism.from_rules({"0": "1", "1": "1"}, "01")
    r = check_mx(m, (inner, "0"), horizon_cap=32)
    assert r.verdict is Verdict.UNKNOWN
    assert not r.cones["1"].finalized


@pytest.mark.parametrize("name,want", [
    ("period-doubling", {"0": "01", "1": "00"}),
    ("chacon", {"0": "0", "1": "1"}),
    ("fibonacci", {"0": "01", "1": "00"}),
])
def test_binary_witness_hand_traces(name, want):
    m, _ = fixture(name)
    got = binary_mx_witnesses(m)
    assert {t: fmt(m, w) for t, w in got.items()} == want


def test_binary_witness_case_two():
    # u = v x with v = x y: u = 0 1 0, v = 0 1 -> x = 0, y = 1
    m = Morphism.from_rules({"0": "010", "1": "01"}, "01")
    w = binary_mx_witnesses(m)
    a, b = w["0"], w["1"]
    k = min(len(a), len(b))
    assert a[:k] != b[:k]
    assert fmt(m, a) == "0100" and fmt(m, b) == "0101"


def test_binary_witness_rejects_commuting_images():
    m = Morphism.from_rules({"0": "0101", "1": "01"}, "01")
    with pytest.raises(DomainError):
        binary_mx_witnesses(m)


def _incomparable(ws):
    ws = list(ws)
    for i, a in enumerate(ws):
        for b in ws[i + 1:]:
            k = min(len(a), len(b))
            if a[:k] == b[:k]:
                return False
    return True


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32).map(random.Random))
def test_in_mx_witnesses_are_sound(rng):
    rules, seed = oracles.random_prolongable_binary(rng)
    m = Morphism.from_rules(rules, "01")
    r = check_mx(m, (m, seed))
    assert r.verdict is not Verdict.NOT_IN_MX
    if not r.in_mx:
        return
    assert _incomparable(r.witnesses.values())
    words = MorphicSource(m, seed).oracle(r.horizon_used).words(r.horizon_used)
    for w in words:
        p = r.witnesses[m.source.token(w[0])]
        img = m.apply(w)
        if len(img) >= len(p):
            assert img.startswith(p)
        assert r.cones[m.source.token(w[0])].q == img[:len(r.cones[m.source.token(w[0])].q)]


@pytest.mark.parametrize("name", ["period-doubling", "chacon", "fibonacci", "krieger", "rudin-shapiro"])
def test_cone_lower_bound_grows_with_horizon(name):
    m, seed = fixture(name)
    src = MorphicSource(m, seed)
    prev = {}
    for h in range(1, 40):
        words = src.oracle(h).words(h)
        for b in {w[0] for w in words}:
            q, _ = cone_prefix(m, words, b)
            if b in prev:
                assert q.startswith(prev[b])
            prev[b] = q


def test_random_binary_agreement():
    rng = random.Random(2024)
    for _ in range(200):
        rules, seed = oracles.random_prolongable_binary(rng)
        m = Morphism.from_rules(rules, "01")
        r = check_mx(m, (m, seed))
        assert r.verdict is not Verdict.NOT_IN_MX, rules
        w = binary_mx_witnesses(m)
        assert _incomparable(w.values())
        if r.in_mx:
            for t, q in r.cones.items():
                if q.finalized:
                    assert q.q.startswith(w[t]) or w[t].startswith(q.q)


def test_inner_word_differs_from_morphism(pd):
    # period-doubling morphism tested against the Fibonacci word
    fib, _ = fixture("fibonacci")
    r = check_mx(pd, (fib, "0"))
    assert r.verdict is Verdict.IN_MX
