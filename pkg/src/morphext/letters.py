"""Mortal, bounded and growing letters; finite fixed points; Head–Lando forms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import DomainError, InconsistencyError, NotFixedPointError
from .words import Morphism


@dataclass(frozen=True)
class LetterClasses:
    mortal: frozenset[str]
    bounded: frozenset[str]
    growing: frozenset[str]
    mortality_exponent: int


def _require_endo(m: Morphism):
    if not m.is_endomorphism:
        raise DomainError("letter classification needs an endomorphism")


def mortal_indices(m: Morphism) -> set[int]:
    """Least fixpoint of ``M = {a : m(a) ∈ M*}``."""
    _require_endo(m)
    mortal = {i for i, img in enumerate(m.images) if not img}
    changed = True
    while changed:
        changed = False
        for i, img in enumerate(m.images):
            if i not in mortal and all(ord(c) in mortal for c in img):
                mortal.add(i)
                changed = True
    return mortal


def _mortality_exponent(m: Morphism, mortal: set[int]) -> int:
    t = 0
    for i in mortal:
        w, steps = chr(i), 0
        while w:
            w = m.apply(w)
            steps += 1
        t = max(t, steps)
    return t


def growing_indices(m: Morphism, mortal: set[int] | None = None) -> set[int]:
    if mortal is None:
        mortal = mortal_indices(m)
    n = m.source.size
    immortal = [i for i in range(n) if i not in mortal]
    succ = {i: {ord(c) for c in m.images[i] if ord(c) not in mortal} for i in immortal}

    def reach(start):
        seen, stack = set(), list(succ[start])
        while stack:
            j = stack.pop()
            if j not in seen:
                seen.add(j)
                stack.extend(succ[j])
        return seen

    expanding = set()
    for d in immortal:
        load = sum(1 for c in m.images[d] if ord(c) not in mortal)
        if load >= 2 and d in reach(d):
            expanding.add(d)
    return {a for a in immortal if a in expanding or reach(a) & expanding}


def classify(m: Morphism) -> LetterClasses:
    """Split the alphabet into mortal ⊆ bounded and growing letters.

    A letter grows iff it reaches, through immortal letters of the occurrence
    graph, a letter on a cycle whose image holds at least two immortal letters.
    """
    mortal = mortal_indices(m)
    growing = growing_indices(m, mortal)
    toks = m.source.letters
    return LetterClasses(
        mortal=frozenset(toks[i] for i in mortal),
        bounded=frozenset(toks[i] for i in range(len(toks)) if i not in growing),
        growing=frozenset(toks[i] for i in growing),
        mortality_exponent=_mortality_exponent(m, mortal),
    )


@dataclass(frozen=True)
class FiniteFixedPoints:
    entries: tuple[tuple[str, str], ...]  # (anchor token, encoded word f^t(a))

    @property
    def words(self) -> list[str]:
        return [w for _, w in self.entries]


def _anchor_split(m: Morphism, i: int, mortal: set[int]):
    """For ``m(a) = x a y`` with ``x ∈ M*`` return ``(x, y)``, else None."""
    img = m.images[i]
    for k, c in enumerate(img):
        if ord(c) not in mortal:
            return (img[:k], img[k + 1:]) if ord(c) == i else None
    return None


def finite_fixed_points(m: Morphism, classes: LetterClasses | None = None) -> FiniteFixedPoints:
    if classes is None:
        classes = classify(m)
    mortal = {m.source.index(t) for t in classes.mortal}
    t = classes.mortality_exponent
    entries = []
    for i in range(m.source.size):
        if i in mortal:
            continue
        split = _anchor_split(m, i, mortal)
        if split is None:
            continue
        x, y = split
        if any(ord(c) not in mortal for c in y):
            continue
        w = chr(i)
        for _ in range(t):
            w = m.apply(w)
        if m.apply(w) != w:
            raise InconsistencyError(f"G_f word for {m.source.token(i)} is not a fixed point")
        entries.append((m.source.token(i), w))
    return FiniteFixedPoints(tuple(entries))


@dataclass(frozen=True)
class CaseA:
    """Prefix parses as a concatenation of finite fixed points."""
    parse: tuple[str, ...]
    depth: int


@dataclass(frozen=True)
class CaseB:
    """``t = w · F^{t-1}(x)⋯x · a · y F(y) F²(y)⋯`` with ``w`` a product of finite fixed points."""
    prefix: str
    anchor: str
    position: int
    x: str
    y: str
    mortal_prefix: str
    depth: int


@dataclass(frozen=True)
class Undetermined:
    depth: int


HeadLandoForm = Union[CaseA, CaseB, Undetermined]


def _prefix_of(t, depth: int) -> str:
    return t.prefix(depth) if hasattr(t, "prefix") else t[:depth]


def anchors(m: Morphism, classes: LetterClasses | None = None):
    """Letters ``a`` with ``m(a) = x a y``, ``x ∈ M*`` and ``y ∉ M*``; yields ``(token, x, y)``."""
    if classes is None:
        classes = classify(m)
    mortal = {m.source.index(t) for t in classes.mortal}
    for i in range(m.source.size):
        if i in mortal:
            continue
        split = _anchor_split(m, i, mortal)
        if split is None:
            continue
        x, y = split
        if any(ord(c) not in mortal for c in y):
            yield m.source.token(i), x, y


def anchored_word(m: Morphism, x: str, a: str, y: str, t: int, length: int) -> str:
    """Prefix of ``m^{t-1}(x)⋯m(x) x a y m(y) m²(y)⋯`` of the given length."""
    out = [_mortal_prefix(m, x, t), a]
    total = len(out[0]) + 1
    cur = y
    while total < length:
        out.append(cur)
        total += len(cur)
        cur = m.apply(cur)
        if not cur:
            raise DomainError("anchored tail is mortal")
    return "".join(out)[:length]


def _parse_fixed_points(prefix: str, words: list[str]):
    """Greedy longest-match parse with backtracking; the last piece may be truncated."""
    words = sorted(set(words), key=len, reverse=True)
    n = len(prefix)
    dead = set()
    stack = [(0, ())]
    while stack:
        pos, parse = stack.pop()
        if pos == n:
            return parse
        if pos in dead:
            continue
        dead.add(pos)
        rest = prefix[pos:]
        for w in words:
            if len(rest) < len(w) and w.startswith(rest):
                return parse + (w,)
        for w in reversed(words):
            if prefix.startswith(w, pos):
                stack.append((pos + len(w), parse + (w,)))
    return None


def classify_fixed_point_form(m: Morphism, t, depth: int, classes: LetterClasses | None = None) -> HeadLandoForm:
    """Head–Lando form of a fixed point ``t = m(t)`` read to ``depth`` symbols.

    ``t`` is a lazy word or a plain encoded string holding at least ``depth``
    symbols.  CaseB is tried first because it needs an exact construction
    match; CaseA only certifies a parse of the inspected prefix.
    """
    if not m.is_endomorphism:
        raise DomainError("fixed point forms need an endomorphism")
    if classes is None:
        classes = classify(m)
    p = _prefix_of(t, depth)
    fp = m.apply(p)
    k = min(len(fp), len(p))
    if fp[:k] != p[:k]:
        bad = next(i for i in range(k) if fp[i] != p[i])
        raise NotFixedPointError(f"m(t) differs from t at index {bad}")
    fixed = finite_fixed_points(m, classes).words
    reachable = [0]
    seen = {0}
    for pos in reachable:
        for w in fixed:
            if p.startswith(w, pos) and pos + len(w) not in seen and pos + len(w) <= len(p):
                seen.add(pos + len(w))
                reachable.append(pos + len(w))
    te = classes.mortality_exponent
    for pos in sorted(reachable):
        if pos >= len(p):
            continue
        for a, x, y in anchors(m, classes):
            z = anchored_word(m, x, m.source.code(a), y, te, len(p) - pos)
            if p.startswith(z, pos) and len(z) == len(p) - pos:
                mortal_prefix = _mortal_prefix(m, x, te)
                return CaseB(prefix=p[:pos], anchor=a, position=pos + len(mortal_prefix),
                             x=x, y=y, mortal_prefix=mortal_prefix, depth=len(p))
    if fixed:
        parse = _parse_fixed_points(p, fixed)
        if parse is not None:
            return CaseA(parse=parse, depth=len(p))
    return Undetermined(len(p))


def _mortal_prefix(m: Morphism, x: str, t: int) -> str:
    parts = []
    cur = x
    for _ in range(max(t, 0)):
        if not cur:
            break
        parts.append(cur)
        cur = m.apply(cur)
    return "".join(reversed(parts))
