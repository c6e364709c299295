import pytest

from morphext import Morphism, MorphicSource, SampleSource, TotalOrder, derive, induced_order, return_words
from morphext.casestudies import fixture


@pytest.fixture(scope="session")
def pd():
    return fixture("period-doubling")[0]


@pytest.fixture(scope="session")
def chacon():
    return fixture("chacon")[0]


@pytest.fixture(scope="session")
def fib():
    return fixture("fibonacci")[0]


@pytest.fixture(scope="session")
def rs():
    return fixture("rudin-shapiro")[0]


@pytest.fixture(scope="session")
def rs_g():
    return fixture("rudin-shapiro-g")[0]


@pytest.fixture(scope="session")
def rs_h():
    return fixture("rudin-shapiro-h")[0]


@pytest.fixture(scope="session")
def sources(pd, chacon, fib, rs):
    return {name: MorphicSource(m, "0") for name, m in
            [("pd", pd), ("chacon", chacon), ("fib", fib), ("rs", rs)]}


def orders(m: Morphism):
    rho = TotalOrder.natural(m.source)
    return rho, rho.reversed()


def extremal_transport(name, b, order_index, k, n=50, horizon=8192):
    """``(D_u(l), least word of the derived subshift)`` for ``u`` the length-``k`` prefix of ``l = l_{b,order}``.

    The derived subshift is sampled from ``D_u`` of the fixed point read from
    the first occurrence of ``u`` within ``horizon`` symbols.
    """
    m, seed = fixture(name)
    src = MorphicSource(m, seed)
    order = orders(m)[order_index]
    y = src.greedy(m.source.code(b), order, 20000)
    u = y[:k]
    x = src.word()
    rs = return_words(x, u, horizon)
    dy = derive(x, y, u, rs, n)
    text = x.prefix(horizon)
    xu = text[text.find(u):]
    dx = derive(x, xu, u, rs, len(xu) // max(map(len, rs.returns)) - 1)
    sample = SampleSource(dx, len(dx), rs.alphabet)
    want = sample.greedy(dy[0], induced_order(rs, order), n)
    return dy, want
