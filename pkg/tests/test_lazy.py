import threading

import pytest
from hypothesis import given, settings, strategies as st

from morphext import (
    DomainError,
    FiniteWordError,
    Morphism,
    NotProlongableError,
    ResourceError,
    code,
    fixed_point,
    is_prolongable,
)
from morphext.casestudies import chacon_tau_g
from morphext.lazy import drop, from_word, periodic, prepend

import oracles


def test_fixed_point_prefixes(rs, pd, chacon):
    assert rs.source.format(fixed_point(rs, "0").prefix(16)) == "0102013101023202"
    assert pd.source.format(fixed_point(pd, "0").prefix(4)) == "0100"
    assert chacon.source.format(fixed_point(chacon, "0").prefix(4)) == "0010"


def test_fixed_point_matches_iteration_oracle(rs):
    rules = {t: list(rs.target.format(rs.image(t))) for t in rs.source}
    want = "".join(oracles.fixed_prefix(rules, "0", 3000))
    assert rs.source.format(fixed_point(rs, "0").prefix(3000)) == want


def test_is_prolongable(pd):
    assert is_prolongable(pd, "0")
    assert not is_prolongable(pd, "1")
    assert not is_prolongable(Morphism.from_rules({"a": "a"}), "a")
    ex2 = Morphism.from_rules({"0": "010", "1": "21", "2": "211"})
    assert is_prolongable(ex2, "0")


def test_not_prolongable_errors():
    with pytest.raises(NotProlongableError, match="empty"):
        fixed_point(Morphism.from_rules({"a": "a"}), "a")
    mortal_tail = Morphism.from_rules({"a": "ab", "b": []}, "ab")
    with pytest.raises(NotProlongableError, match="mortal"):
        fixed_point(mortal_tail, "a")
    with pytest.raises(NotProlongableError):
        fixed_point(Morphism.from_rules({"0": "10", "1": "1"}), "0")


def test_prefix_is_append_only_and_deterministic(pd):
    x = fixed_point(pd, "0")
    a = x.prefix(10)
    b = x.prefix(1000)
    assert b.startswith(a)
    assert x.prefix(10) == a
    assert x[3] == a[3] and x[2:7] == a[2:7]


def test_symbol_cap(pd):
    x = fixed_point(pd, "0", cap=1000)
    x.prefix(1000)
    with pytest.raises(ResourceError):
        x.prefix(1001)


def test_finite_word_error():
    w = from_word("\x00\x01")
    assert w.prefix(2) == "\x00\x01"
    with pytest.raises(FiniteWordError):
        w.prefix(3)


def test_code_examples(rs, rs_g, pd):
    w = code(rs_g, fixed_point(rs, "0"))
    assert rs_g.target.format(w.prefix(16)) == "0001001000011101"
    x = fixed_point(pd, "0")
    assert code(Morphism.identity(pd.source), x).prefix(500) == x.prefix(500)


def test_tau_on_fresh_letter():
    g, tau, b = chacon_tau_g()
    word = g.source.encode([b, "0", "1"])
    assert tau.target.format(tau.apply(word)) == "101"


def test_code_rejects_erasing(pd):
    erase = Morphism(pd.source, pd.source, ("\x00", ""))
    with pytest.raises(DomainError):
        code(erase, fixed_point(pd, "0"))


def test_prepend_drop_periodic(pd):
    x = fixed_point(pd, "0")
    assert prepend("\x01\x01", x).prefix(10) == "\x01\x01" + x.prefix(8)
    assert drop(x, 3).prefix(10) == x.prefix(13)[3:]
    assert periodic("\x01", "\x00\x01").prefix(7) == "\x01" + "\x00\x01" * 3


def test_threads_see_one_consistent_word(rs):
    x = fixed_point(rs, "0")
    out = []

    def work(n):
        out.append(x.prefix(n))

    ts = [threading.Thread(target=work, args=(n,)) for n in (10, 50000, 3000, 120000, 7)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    longest = max(out, key=len)
    assert all(longest.startswith(w) for w in out)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4000))
def test_fixed_point_self_consistency(n):
    m = Morphism.from_rules({"0": "0121", "1": "2", "2": "10"})
    p = fixed_point(m, "0").prefix(n)
    assert m.apply(p).startswith(p)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2000))
def test_code_prefix_depends_on_equal_prefix(n):
    m = Morphism.from_rules({"0": "01", "1": "02", "2": "31", "3": "32"})
    g = Morphism.from_rules({"0": "0", "1": "10", "2": "1", "3": "11"}, "0123", "01")
    x = fixed_point(m, "0")
    assert code(g, x).prefix(n) == g.apply(x.prefix(n))[:n]
