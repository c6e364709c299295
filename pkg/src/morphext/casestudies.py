"""Named case studies: extremal-word identities checked greedy-versus-construction."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from .config import DEFAULT_CAPS, Caps
from .errors import MorphicError
from .factors import MorphicSource
from .lazy import code, drop, fixed_point
from .synth import expand, synthesize, synthesize_coded
from .textformat import parse_morphism
from .words import Morphism, TotalOrder

CONTEXT = 16


def fixture_text(name: str) -> str:
    return resources.files("morphext").joinpath("fixtures").joinpath(f"{name}.txt").read_text()


def fixture(name: str):
    """``(morphism, seed)`` of a bundled fixture file."""
    f = parse_morphism(fixture_text(name))
    return f.morphism, f.seed


@dataclass(frozen=True)
class Check:
    description: str
    run: Callable[[int], tuple[str, str]]  # N -> (greedy, construction), both encoded
    format: Callable[[str], str] = str


@dataclass(frozen=True)
class CaseStudy:
    name: str
    title: str
    checks: tuple[Check, ...]


@dataclass
class CheckResult:
    description: str
    passed: bool
    symbols: int
    seconds: float
    mismatch: int | None = None
    context: tuple[str, str] | None = None
    error: str | None = None


@dataclass
class RunReport:
    name: str
    length: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 3

    def lines(self, porcelain: bool = False) -> list[str]:
        out = []
        for r in self.results:
            tag = "PASS" if r.passed else "FAIL"
            if porcelain:
                out.append(f"{tag}\t{self.name}\t{r.symbols}\t{r.description}")
            else:
                out.append(f"{tag}  {r.description}  [{r.symbols} symbols, {r.seconds:.2f}s]")
            if r.error:
                out.append(f"    error: {r.error}")
            elif not r.passed:
                out.append(f"    first mismatch at index {r.mismatch}")
                out.append(f"    greedy:       {r.context[0]}")
                out.append(f"    construction: {r.context[1]}")
        summary = f"{self.name}: {sum(r.passed for r in self.results)}/{len(self.results)} checks passed"
        out.append(summary)
        return out


def _compare(check: Check, n: int) -> CheckResult:
    t0 = time.perf_counter()
    try:
        got, want = check.run(n)
    except MorphicError as e:
        return CheckResult(check.description, False, n, time.perf_counter() - t0,
                           error=f"{type(e).__name__}: {e}")
    dt = time.perf_counter() - t0
    got, want = got[:n], want[:n]
    if got == want:
        return CheckResult(check.description, True, len(want), dt)
    i = next((i for i in range(min(len(got), len(want))) if got[i] != want[i]), min(len(got), len(want)))
    lo, hi = max(0, i - CONTEXT), i + CONTEXT + 1
    ctx = (check.format(got[lo:hi]), check.format(want[lo:hi]))
    return CheckResult(check.description, False, len(want), dt, mismatch=i, context=ctx)


# Builders ------------------------------------------------------------------

def _greedy(src, tok, order):
    c = src.alphabet.code(tok)
    return lambda n: src.greedy(c, order, n)


def _synth_check(m, src, tok, order, caps):
    def run(n):
        rep = synthesize(m, src, tok, order, caps.with_(final_verify=n))
        return src.greedy(src.alphabet.code(tok), order, n), expand(rep).prefix(n)
    return Check(f"synthesized l_{{{tok},{order}}} expands to the extremal word", run, src.alphabet.format)


def period_doubling(caps: Caps = DEFAULT_CAPS) -> CaseStudy:
    f, seed = fixture("period-doubling")
    g, _ = fixture("period-doubling-g")
    src = MorphicSource(f, seed, caps=caps)
    A = f.source
    rho = TotalOrder.natural(A)
    bar = rho.reversed()
    z = fixed_point(g, "0")
    fz = code(f, z)
    zero, one = A.code("0"), A.code("1")
    l00, l10, l11, l01 = (_greedy(src, b, o) for b, o in (("0", rho), ("1", rho), ("1", bar), ("0", bar)))
    fmt = A.format
    checks = [
        Check("s_{0,0<1} begins 00100", lambda n: (l00(6)[1:], A.encode("00100")), fmt),
        Check("s_{0,1<0} begins 1010100", lambda n: (l01(8)[1:], A.encode("1010100")), fmt),
        Check("l_{0,0<1} = z with z = g^ω(0), g: 0->0001, 1->0101", lambda n: (l00(n), z.prefix(n)), fmt),
        Check("l_{1,0<1} = 1 z", lambda n: (l10(n), one + z.prefix(n - 1)), fmt),
        Check("l_{1,1<0} = 0^-1 f(z)", lambda n: (l11(n), drop(fz, 1).prefix(n)), fmt),
        Check("l_{0,1<0} = f(z)", lambda n: (l01(n), fz.prefix(n)), fmt),
        Check("0 1 g(w) = f^2(w) 0 1 on a prefix of z",
              lambda n: ((zero + one + g.apply(z.prefix(n)))[:n], (f.power(2).apply(z.prefix(n)) + zero + one)[:n]),
              fmt),
    ]
    for b in "01":
        for o in (rho, bar):
            checks.append(_synth_check(f, src, b, o, caps))
    return CaseStudy("period-doubling", "period-doubling word d = f^ω(0), f: 0->01, 1->00", tuple(checks))


def chacon_tau_g() -> tuple[Morphism, Morphism, str]:
    """``g(b) = b 0 1``, ``g(0) = 0010``, ``g(1) = 1`` and ``τ(b) = 1``, with ``b`` a fresh letter."""
    f, _ = fixture("chacon")
    A = f.source
    b = A.fresh()
    g = f.extend(b, chr(A.size) + A.encode("01"))
    tau = Morphism(g.source, A, (A.code("0"), A.code("1"), A.code("1")))
    return g, tau, b


def chacon(caps: Caps = DEFAULT_CAPS) -> CaseStudy:
    f, seed = fixture("chacon")
    src = MorphicSource(f, seed, caps=caps)
    A = f.source
    rho = TotalOrder.natural(A)
    bar = rho.reversed()
    c = src.word()
    zero, one = A.code("0"), A.code("1")
    g, tau, b = chacon_tau_g()
    tg = code(tau, fixed_point(g, b))
    l00, l10, l11, l01 = (_greedy(src, t, o) for t, o in (("0", rho), ("1", rho), ("1", bar), ("0", bar)))
    fmt = A.format
    checks = [
        Check("c begins 0010", lambda n: (c.prefix(4), A.encode("0010")), fmt),
        Check("l_{0,0<1} = 0 c", lambda n: (l00(n), zero + c.prefix(n - 1)), fmt),
        Check("l_{1,0<1} = 1 0 c", lambda n: (l10(n), one + zero + c.prefix(n - 2)), fmt),
        Check("l_{1,1<0} = τ g^ω(b)", lambda n: (l11(n), tg.prefix(n)), fmt),
        Check("l_{0,1<0} = 0 τ g^ω(b)", lambda n: (l01(n), zero + tg.prefix(n - 1)), fmt),
        Check("s_{1,1<0} = 01 f(s_{1,1<0})",
              lambda n: (l11(n + 1)[1:], (A.encode("01") + f.apply(l11(n + 1)[1:]))[:n]), fmt),
    ]
    for t in "01":
        for o in (rho, bar):
            checks.append(_synth_check(f, src, t, o, caps))
    return CaseStudy("chacon", "Chacon word c = f^ω(0), f: 0->0010, 1->1", tuple(checks))


def rudin_shapiro(caps: Caps = DEFAULT_CAPS) -> CaseStudy:
    f, seed = fixture("rudin-shapiro")
    g, _ = fixture("rudin-shapiro-g")
    h, _ = fixture("rudin-shapiro-h")
    usrc = MorphicSource(f, seed, caps=caps)
    wsrc = MorphicSource(f, seed, coding=g, caps=caps)
    A, B = f.source, g.target
    rho4 = TotalOrder.natural(A)
    rho2 = TotalOrder.natural(B)
    u = usrc.word()
    w = wsrc.word()
    zero = B.code("0")
    lu = _greedy(usrc, "0", rho4)
    lw = _greedy(wsrc, "0", rho2)

    def synth(n):
        rep = synthesize_coded(f, h, usrc, "0", rho2, caps.with_(final_verify=n))
        return lw(n), expand(rep).prefix(n)

    checks = [
        Check("u begins 0102013101023202", lambda n: (u.prefix(16), A.encode("0102013101023202")), A.format),
        Check("w = g(u) begins 0001001000011101", lambda n: (w.prefix(16), B.encode("0001001000011101")), B.format),
        Check("l_{0,0<1<2<3,u} = u", lambda n: (lu(n), u.prefix(n)), A.format),
        Check("l_{0,0<1,w} = 0 w", lambda n: (lw(n), zero + w.prefix(n - 1)), B.format),
        Check("h(u) = g(u) with h = g∘f", lambda n: (code(h, u).prefix(n), w.prefix(n)), B.format),
        Check("synthesized l_{0,0<1,w} through h expands to the extremal word", synth, B.format),
    ]
    return CaseStudy("rudin-shapiro", "Rudin-Shapiro word w = g(u), u = f^ω(0)", tuple(checks))


def fibonacci(caps: Caps = DEFAULT_CAPS) -> CaseStudy:
    f, seed = fixture("fibonacci")
    src = MorphicSource(f, seed, caps=caps)
    A = f.source
    rho = TotalOrder.natural(A)
    bar = rho.reversed()
    c = src.word()
    zero, one = A.code("0"), A.code("1")
    l00, l10, l11, l01 = (_greedy(src, t, o) for t, o in (("0", rho), ("1", rho), ("1", bar), ("0", bar)))
    fmt = A.format
    checks = [
        Check("l_{0,0<1} = 0 c", lambda n: (l00(n), zero + c.prefix(n - 1)), fmt),
        Check("l_{1,0<1} = 1 0 c", lambda n: (l10(n), one + zero + c.prefix(n - 2)), fmt),
        Check("l_{1,1<0} = 1 c", lambda n: (l11(n), one + c.prefix(n - 1)), fmt),
        Check("l_{0,1<0} = 0 1 c", lambda n: (l01(n), zero + one + c.prefix(n - 2)), fmt),
    ]
    for t in "01":
        for o in (rho, bar):
            checks.append(_synth_check(f, src, t, o, caps))
    return CaseStudy("fibonacci", "Fibonacci word c = f^ω(0), f: 0->01, 1->0", tuple(checks))


CASES = {
    "period-doubling": period_doubling,
    "chacon": chacon,
    "rudin-shapiro": rudin_shapiro,
    "fibonacci": fibonacci,
}


def run_casestudy(name: str, n: int = 5000, caps: Caps = DEFAULT_CAPS) -> RunReport:
    if name not in CASES:
        raise KeyError(f"unknown case study {name!r}; choose from {', '.join(CASES)}")
    if n < 64:
        raise ValueError("case studies need at least 64 symbols")
    study = CASES[name](caps)
    report = RunReport(name, n)
    for check in study.checks:
        report.results.append(_compare(check, n))
    return report
