"""Finite morphic representations of extremal words.

The chain is: pull the order back through the witnesses, desubstitute one
step (``s_{b,ρ} = v f(s_{a,σ})``), iterate until a (letter, order) state
repeats, then build a generator for either the limit form
``x̂ F(x̂) F²(x̂) ⋯`` or a fixed point of ``F = f^m``.  Every identity is
checked against the greedy oracle before it is used.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_CAPS, Caps
from .errors import (
    AmbiguityError,
    DomainError,
    InconsistencyError,
    NotInMxError,
    PeriodDetectionError,
    VerificationError,
)
from .factors import MorphicSource
from .lazy import LazyWord, code, drop, fixed_point, prepend
from .letters import CaseA, CaseB, classify_fixed_point_form
from .mx import check_mx
from .words import Alphabet, Morphism, TotalOrder, power_apply

FIXED_POINT = "FixedPointCase"
LIMIT = "LimitCase"
PERIODIC = "UltimatelyPeriodic"

State = tuple  # (letter token, TotalOrder)


@dataclass(frozen=True)
class TransportStep:
    source: State
    target: State
    v: str
    verified: int

    def __str__(self):
        (b, rho), (a, sigma) = self.source, self.target
        return f"({b}, {rho}) -> ({a}, {sigma}) via v of length {len(self.v)}"


@dataclass(frozen=True)
class CycleDecomposition:
    steps: tuple[TransportStep, ...]
    k: int
    m: int
    u: str
    v: str

    @property
    def anchor(self) -> State:
        return self.steps[self.k].source


@dataclass(frozen=True)
class MorphicRep:
    """``prepend · coding(drop_d(generator^ω(seed)))``."""

    prepend: str
    drop: int
    seed: str
    generator: Morphism
    coding: Morphism
    note: str

    @property
    def alphabet(self) -> Alphabet:
        return self.coding.target


def expand(rep: MorphicRep, cap: int | None = None) -> LazyWord:
    w = fixed_point(rep.generator, rep.seed, cap=cap)
    w = code(rep.coding, drop(w, rep.drop))
    return prepend(rep.prepend, w) if rep.prepend else w


def _as_source(x_source, caps) -> MorphicSource:
    if isinstance(x_source, MorphicSource):
        return x_source
    m, seed = x_source
    return MorphicSource(m, seed, caps=caps)


def occurring_letters(src: MorphicSource) -> list[str]:
    text = src.oracle(1).text
    return [t for t in src.alphabet if src.alphabet.code(t) in text]


def pullback_order(witnesses: dict[str, str], rho: TotalOrder, alphabet: Alphabet) -> TotalOrder:
    """``a <_σ c`` iff ``p_a <_ρ p_c``; letters without a witness go last in alphabet order."""
    ranked = sorted(witnesses, key=lambda t: rho.key(witnesses[t]))
    keys = [rho.key(witnesses[t]) for t in ranked]
    for x, y in zip(keys, keys[1:]):
        if y.startswith(x):
            raise DomainError("witnesses are prefix-comparable; the pullback order is undefined")
    rest = [t for t in alphabet if t not in witnesses]
    return TotalOrder.from_tokens(alphabet, ranked + rest)


def _witnesses(m: Morphism, src: MorphicSource) -> dict[str, str]:
    report = check_mx(m, src, caps=src.caps)
    if not report.in_mx:
        raise NotInMxError(f"{m} is not in M_x ({report.verdict}: {report.note})")
    return report.witnesses


def transport(m: Morphism, x_source, state: State, witnesses: dict[str, str] | None = None,
              caps: Caps = DEFAULT_CAPS, target: MorphicSource | None = None) -> TransportStep:
    """One desubstitution step ``l_{b,ρ,m(x)} = b v m(s_{a,σ,x})``.

    ``target`` is the source of ``m(x)``; it defaults to ``x`` itself, which
    is the case ``m(x) = x``.
    """
    inner = _as_source(x_source, caps)
    if target is None:
        target = inner
    if witnesses is None:
        witnesses = _witnesses(m, inner)
    b, rho = state
    sigma = pullback_order(witnesses, rho, m.source)
    bc = target.alphabet.code(b)
    cands = []
    for a in occurring_letters(inner):
        img = m.image(a)
        for i, c in enumerate(img):
            if c == bc:
                cands.append((a, img[i + 1:]))
    L = caps.verify_start
    while True:
        lb = target.greedy(bc, rho, L)
        surv = []
        for a, v in cands:
            la = inner.greedy(inner.alphabet.code(a), sigma, L)
            if (bc + v + m.apply(la[1:]))[:L] == lb:
                surv.append((a, v))
        cands = surv
        if not cands:
            raise InconsistencyError(f"no desubstitution candidate for ({b}, {rho}) at length {L}")
        if len(cands) == 1:
            a, v = cands[0]
            return TransportStep((b, rho), (a, sigma), v, L)
        if L >= caps.verify_cap:
            fmt = m.target.format
            raise AmbiguityError(f"{len(cands)} candidates survive at length {L} for ({b}, {rho})",
                                 survivors=[(a, fmt(v)) for a, v in cands])
        L = min(L * caps.verify_factor, caps.verify_cap)


def find_cycle(m: Morphism, x_source, start: State, witnesses: dict[str, str] | None = None,
               caps: Caps = DEFAULT_CAPS) -> CycleDecomposition:
    src = _as_source(x_source, caps)
    if witnesses is None:
        witnesses = _witnesses(m, src)
    steps: list[TransportStep] = []
    seen: dict[State, int] = {}
    state = start
    while state not in seen:
        seen[state] = len(steps)
        step = transport(m, src, state, witnesses, caps)
        steps.append(step)
        state = step.target
    k = seen[state]
    period = len(steps) - k
    u = "".join(power_apply(m, s.v, i) for i, s in enumerate(steps[:k]))
    v = "".join(power_apply(m, s.v, i) for i, s in enumerate(steps[k:]))
    return CycleDecomposition(tuple(steps), k, period, u, v)


# Period detection ----------------------------------------------------------

def _min_preperiod(s: str, q: int) -> int:
    """Least ``p`` with ``s[i] == s[i+q]`` for all ``i >= p``."""
    n = len(s)
    lo, hi = 0, n - q
    while lo < hi:
        mid = (lo + hi) // 2
        if s[mid:n - q] == s[mid + q:]:
            hi = mid
        else:
            lo = mid + 1
    return lo


def detect_period(s: str) -> tuple[int, int] | None:
    """Smallest ``(preperiod, period)`` (by ``p + q``, then ``q``) with ``p + 2q <= len(s)``."""
    best = None
    n = len(s)
    for q in range(1, n // 2 + 1):
        if best is not None and q > best[0] + best[1]:
            break
        p = _min_preperiod(s, q)
        if p + 2 * q <= n and (best is None or (p + q, q) < (best[0] + best[1], best[1])):
            best = (p, q)
    return best


def _periodic_rep(alpha: Alphabet, u: str, v: str, fresh: str) -> MorphicRep:
    ident = Morphism.identity(alpha)
    gen = ident.extend(fresh, chr(alpha.size) + v)
    coding = Morphism(gen.source, alpha, ident.images + (v[0],))
    return MorphicRep(u, 1, fresh, gen, coding, PERIODIC)


def ultimately_periodic_rep(src, b: str, rho: TotalOrder, caps: Caps = DEFAULT_CAPS) -> MorphicRep:
    alpha = src.alphabet
    bc = alpha.code(b)
    L = caps.verify_start
    while True:
        s = src.greedy(bc, rho, L)
        pq = detect_period(s)
        if pq is not None:
            p, q = pq
            check = src.greedy(bc, rho, 3 * L)
            u, v = check[:p], check[p:p + q]
            reps = -(-(3 * L - p) // q)
            if (u + v * reps)[:3 * L] == check:
                return _periodic_rep(alpha, u, v, alpha.fresh(caps.fresh_prefix))
        if L >= caps.form_depth_cap:
            raise PeriodDetectionError(f"no ultimate period found for ({b}, {rho}) up to {L} symbols")
        L *= 4


# Synthesis -----------------------------------------------------------------

def _fresh_generator(F: Morphism, fresh: str, tail: str) -> Morphism:
    return F.extend(fresh, chr(F.source.size) + tail)


def _coding_for(gen: Morphism, alpha: Alphabet, fresh_image: str) -> Morphism:
    return Morphism(gen.source, alpha, tuple(chr(i) for i in range(alpha.size)) + (fresh_image,))


def verify_rep(rep: MorphicRep, src, b: str, rho: TotalOrder, n: int) -> None:
    bc = src.alphabet.code(b)
    want = src.greedy(bc, rho, n)
    got = expand(rep).prefix(n)
    if got != want:
        i = next(i for i in range(n) if got[i] != want[i])
        raise VerificationError(f"synthesized word differs from the extremal word at index {i}")


def synthesize(m: Morphism, x_source, b: str, rho: TotalOrder, caps: Caps = DEFAULT_CAPS) -> MorphicRep:
    """A verified :class:`MorphicRep` for ``l_{b,ρ,x}`` where ``x = m^ω(seed)``."""
    src = _as_source(x_source, caps)
    if src.coding is not None:
        raise DomainError("use synthesize_coded for coded sources")
    witnesses = _witnesses(m, src)
    cyc = find_cycle(m, src, (b, rho), witnesses, caps)
    alpha = m.source
    bc = alpha.code(b)
    w = bc + cyc.u
    F = m.power(cyc.m)
    xhat = power_apply(m, cyc.v, cyc.k)
    fresh = alpha.fresh(caps.fresh_prefix)
    if xhat:
        gen = _fresh_generator(F, fresh, xhat)
        rep = MorphicRep(w, 1, fresh, gen, _coding_for(gen, alpha, bc), LIMIT)
    else:
        rep = _fixed_point_rep(m, src, cyc, F, w, fresh, caps)
        if rep is None:
            rep = ultimately_periodic_rep(src, b, rho, caps)
    verify_rep(rep, src, b, rho, caps.final_verify)
    return rep


def _fixed_point_rep(m, src, cyc, F, w, fresh, caps):
    a, sigma = cyc.anchor
    alpha = m.source
    depth = caps.verify_start
    while True:
        s = src.greedy(alpha.code(a), sigma, depth + 1)[1:]
        t = power_apply(m, s, cyc.k)[:depth]
        form = classify_fixed_point_form(F, t, depth)
        if isinstance(form, CaseB):
            a2 = alpha.code(form.anchor)
            if not form.prefix and not form.mortal_prefix and not form.x:
                ident = Morphism.identity(alpha)
                return MorphicRep(w, 0, form.anchor, F, ident, FIXED_POINT)
            gen = _fresh_generator(F, fresh, form.y)
            head = w + form.prefix + form.mortal_prefix + a2
            return MorphicRep(head, 1, fresh, gen, _coding_for(gen, alpha, a2), FIXED_POINT)
        if isinstance(form, CaseA):
            return None
        if depth >= caps.form_depth_cap:
            raise PeriodDetectionError(f"fixed point form undetermined up to depth {depth}")
        depth *= 4


def synthesize_coded(m: Morphism, g: Morphism, x_source, b: str, rho: TotalOrder,
                     caps: Caps = DEFAULT_CAPS) -> MorphicRep:
    """A verified representation of ``l_{b,ρ,g(x)}``; ``g`` must be non-erasing and in ``M_x``."""
    inner = _as_source(x_source, caps)
    if g.source != m.source:
        raise DomainError("coding source must be the morphism's alphabet")
    if g.is_erasing:
        raise DomainError("the outer morphism must be non-erasing")
    _witnesses(m, inner)
    gw = _witnesses(g, inner)
    target = MorphicSource(m, inner.seed, coding=g, caps=caps)
    step = transport(g, inner, (b, rho), gw, caps, target=target)
    a, sigma = step.target
    rep = synthesize(m, inner, a, sigma, caps)
    rest, d = (rep.prepend[1:], rep.drop) if rep.prepend else ("", rep.drop + 1)
    bc = g.target.code(b)
    out = MorphicRep(bc + step.v + g.apply(rest), d, rep.seed, rep.generator, g.compose(rep.coding),
                     rep.note)
    verify_rep(out, target, b, rho, caps.final_verify)
    return out
