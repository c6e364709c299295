"""Semi-decision of the prefix-witness condition and the binary witness construction.

For each letter ``b`` occurring in ``x`` the cone prefix ``q_b`` is the
longest common prefix of ``f(y)`` over subshift words ``y`` starting with
``b``.  At a finite horizon ``h`` the lcp over length-``h`` factors is a
lower bound for ``q_b`` (a prefix of it); it is exact, and marked
finalized, once two images both extend past it with different letters.
The condition holds iff the ``q_b`` are pairwise prefix-incomparable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .config import DEFAULT_CAPS, Caps
from .errors import DomainError
from .factors import MorphicSource
from .words import Morphism, common_prefix_length


class Verdict(enum.Enum):
    IN_MX = "InMx"
    NOT_IN_MX = "NotInMx"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ConePrefix:
    letter: str  # token
    q: str  # encoded over the morphism's target
    finalized: bool


@dataclass
class MxReport:
    verdict: Verdict
    witnesses: dict[str, str] = field(default_factory=dict)  # token -> encoded word
    violation: tuple[str, str] | None = None
    note: str = ""
    horizon_used: int = 0
    cones: dict[str, ConePrefix] = field(default_factory=dict)

    @property
    def in_mx(self) -> bool:
        return self.verdict is Verdict.IN_MX


def _as_source(x_source, caps) -> MorphicSource:
    if isinstance(x_source, MorphicSource):
        return x_source
    m, seed = x_source
    return MorphicSource(m, seed, caps=caps)


def cone_prefix(m: Morphism, factors: set[str], b: str) -> tuple[str, bool]:
    """Lower bound for ``q_b`` from the images of ``factors`` starting with ``b``.

    The lcp of a set of strings is the lcp of its least and greatest
    members; the bound is final when both extend past it.
    """
    table = m._table
    lo = hi = None
    for w in factors:
        if w[0] != b:
            continue
        img = w.translate(table)
        if lo is None or img < lo:
            lo = img
        if hi is None or img > hi:
            hi = img
    if lo is None:
        raise DomainError("letter does not occur")
    k = common_prefix_length(lo, hi)
    return lo[:k], k < len(lo) and k < len(hi)


def _diverge(u: str, v: str) -> int | None:
    k = common_prefix_length(u, v)
    return k if k < len(u) and k < len(v) else None


def check_mx(m: Morphism, x_source=None, horizon_cap: int | None = None, caps: Caps = DEFAULT_CAPS) -> MxReport:
    """Decide ``m ∈ M_x`` up to a horizon; ``x_source`` defaults to ``m`` itself from its first letter.

    ``x_source`` is a :class:`MorphicSource` or a ``(morphism, seed)`` pair.
    """
    if horizon_cap is None:
        horizon_cap = caps.mx_horizon
    if m.is_erasing:
        return MxReport(Verdict.NOT_IN_MX, note="erasing morphisms are never in M_x")
    if x_source is None:
        x_source = (m, m.source.letters[0])
    src = _as_source(x_source, caps)
    if src.alphabet != m.source:
        raise DomainError("morphism source alphabet differs from the word's alphabet")
    alpha = m.source
    h = min(caps.mx_start, horizon_cap)
    while True:
        fs = src.oracle(h)
        words = fs.words(h)
        occurring = sorted({w[0] for w in words})
        cones = {}
        for b in occurring:
            q, fin = cone_prefix(m, words, b)
            cones[alpha.token(b)] = ConePrefix(alpha.token(b), q, fin)
        report = _decide(cones, alpha, h)
        if report is not None:
            return report
        if h >= horizon_cap:
            return MxReport(Verdict.UNKNOWN, note="some cone prefixes never separated", horizon_used=h,
                            cones=cones)
        h = min(2 * h, horizon_cap)


def _decide(cones: dict[str, ConePrefix], alpha, h) -> MxReport | None:
    toks = list(cones)
    div: dict[tuple[str, str], int] = {}
    undecided = False
    for i, a in enumerate(toks):
        for c in toks[i + 1:]:
            qa, qc = cones[a], cones[c]
            d = _diverge(qa.q, qc.q)
            if d is not None:
                div[a, c] = div[c, a] = d
                continue
            # comparable lower bounds: a finalized shorter side is exact and a prefix of the other
            short, long_ = (qa, qc) if len(qa.q) <= len(qc.q) else (qc, qa)
            if short.finalized:
                pair = tuple(sorted((a, c), key=alpha.index))
                return MxReport(Verdict.NOT_IN_MX, violation=pair, horizon_used=h, cones=cones,
                                note=f"q_{short.letter} is exact and a prefix of q_{long_.letter}")
            undecided = True
    if undecided:
        return None
    witnesses = {}
    for a in toks:
        cut = max((div[a, c] for c in toks if c != a), default=0) + 1
        witnesses[a] = cones[a].q[:cut]
    return MxReport(Verdict.IN_MX, witnesses=witnesses, horizon_used=h, cones=cones)


def binary_mx_witnesses(m: Morphism) -> dict[str, str]:
    """Witnesses ``p_0, p_1`` for a binary ``m`` with ``m(01) != m(10)``, valid for every ``x``."""
    if m.source.size != 2:
        raise DomainError("binary witness construction needs a two-letter alphabet")
    zero, one = m.source.letters
    u, v = m.images
    if u + v == v + u:
        raise DomainError("m(01) = m(10): the condition fails and images are powers of a common word")
    if not v:
        # v empty would make u+v == v+u; unreachable
        raise DomainError("empty image")
    # Case 1: u is not a prefix of v^ω
    i = 0
    while i < len(u) and u[i] == v[i % len(v)]:
        i += 1
    if i < len(u):
        n, r = divmod(i, len(v))
        p = v[:r]
        return {zero: v * n + p + u[i], one: v * n + p + v[r]}
    # Case 2: u = v^n x with x a proper prefix of v, v = x y
    n, r = divmod(len(u), len(v))
    x, y = v[:r], v[r:]
    xy, yx = x + y, y + x
    k = common_prefix_length(xy, yx)
    if k == len(xy):
        raise DomainError("xy = yx contradicts m(01) != m(10)")
    p = xy[:k]
    base = xy * n + x + p
    return {zero: base + xy[k], one: base + yx[k]}
