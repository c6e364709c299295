import pytest
from hypothesis import given, settings, strategies as st

from morphext import (
    DomainError,
    FactorizationError,
    MorphicSource,
    SampleSource,
    TotalOrder,
    derive,
    derived_word_census,
    fixed_point,
    induced_order,
    return_words,
)
from morphext.casestudies import fixture
from morphext.lazy import from_word

from conftest import extremal_transport, orders

H = 8192


def test_fibonacci_returns_of_zero(fib):
    x = fixed_point(fib, "0")
    rs = return_words(x, fib.source.encode("0"), 200)
    assert [fib.source.format(r, "") for r in rs.returns] == ["01", "0"]
    assert rs.stable


def test_fibonacci_derived_prefix(fib):
    x = fixed_point(fib, "0")
    u = fib.source.encode("0")
    rs = return_words(x, u, 200)
    d = derive(x, x, u, rs, 5)
    # 01 0 01 01 0 ...
    assert rs.alphabet.format(d, "") == "12112"
    assert derive(x, x, u, rs, 0) == ""


def test_period_doubling_returns_of_00(pd):
    x = fixed_point(pd, "0")
    rs = return_words(x, pd.source.encode("00"), 512)
    got = sorted(pd.source.format(r, "") for r in rs.returns)
    text = x.prefix(512)
    occ = [i for i in range(len(text)) if text.startswith(pd.source.encode("00"), i)]
    want = sorted({pd.source.format(text[p:q], "") for p, q in zip(occ, occ[1:])})
    assert got == want
    assert rs.stable


def test_absent_or_single_occurrence_is_error(fib):
    x = fixed_point(fib, "0")
    with pytest.raises(DomainError):
        return_words(x, fib.source.encode("11"), 500)
    with pytest.raises(DomainError):
        return_words(x, x.prefix(60), 100)
    with pytest.raises(DomainError):
        return_words(x, "", 100)


def test_incomplete_return_set_fails_factorization(fib):
    x = fixed_point(fib, "0")
    u = fib.source.encode("0")
    rs = return_words(x, u, 3)  # sees only 0 1 0: one return word
    with pytest.raises(FactorizationError) as e:
        derive(x, x, u, rs, 10)
    assert e.value.position > 0


def test_fibonacci_induced_order(fib):
    x = fixed_point(fib, "0")
    rs = return_words(x, fib.source.encode("0"), 200)
    rho = TotalOrder.natural(fib.source)
    o = induced_order(rs, rho)
    # 0·0 < 01·0, and "0" is return 2
    assert str(o) == "2<1"


def test_single_return_order(pd):
    x = from_word(pd.source.encode("0" * 40), pd.source)
    rs = return_words(x, pd.source.encode("0"), 40)
    assert len(rs.returns) == 1
    assert str(induced_order(rs, TotalOrder.natural(pd.source))) == "1"


@pytest.mark.parametrize("name", ["fibonacci", "period-doubling", "chacon"])
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_reconstruction(name, k):
    m, seed = fixture(name)
    x = fixed_point(m, seed)
    u = x.prefix(k)
    rs = return_words(x, u, H)
    d = derive(x, x, u, rs, 200)
    rebuilt = rs.image(d)
    assert rebuilt == x.prefix(len(rebuilt))
    for i, a in enumerate(rs.returns):
        for b in rs.returns[i + 1:]:
            assert not (a + u).startswith(b + u) and not (b + u).startswith(a + u)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.sampled_from(["fibonacci", "period-doubling"]))
def test_reconstruction_from_extremal(k, name):
    m, seed = fixture(name)
    src = MorphicSource(m, seed)
    rho, _ = orders(m)
    y = src.greedy(m.source.code("0"), rho, 4000)
    u = y[:k]
    rs = return_words(src.word(), u, H)
    d = derive(src.word(), y, u, rs, 100)
    rebuilt = rs.image(d)
    assert rebuilt == y[:len(rebuilt)]


@pytest.mark.parametrize("name", ["fibonacci", "period-doubling"])
@pytest.mark.parametrize("b,i", [("0", 0), ("1", 0), ("0", 1), ("1", 1)])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_extremal_transport(name, b, i, k):
    dy, want = extremal_transport(name, b, i, k)
    assert dy == want


def test_fibonacci_census_plateau(fib):
    x = fixed_point(fib, "0")
    c = derived_word_census(x, x, range(1, 9), H)
    assert c.trajectory == [1] * 8


def test_period_doubling_extremal_census(pd):
    src = MorphicSource(pd, "0")
    y = from_word(src.greedy(pd.source.code("0"), TotalOrder.natural(pd.source), 20000), pd.source)
    c = derived_word_census(src.word(), y, range(1, 9), H)
    assert c.trajectory == [1, 2, 2, 2, 2, 2, 2, 2]
    assert [r.returns for r in c.rows] == [2, 3, 2, 2, 2, 3, 3, 3]


def test_empty_census(fib):
    assert derived_word_census(fixed_point(fib, "0"), fixed_point(fib, "0"), [], 100).rows == ()
