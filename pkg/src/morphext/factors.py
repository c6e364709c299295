"""Factor sets of pure morphic words and greedy extremal prefixes.

A :class:`FactorSet` is backed by a witness text: a prefix of the word long
enough that every factor of length at most ``max_length`` occurs in it.  For
a fixed point ``x = f^ω(a)`` of a non-erasing ``f`` the length is certified
as follows.  Let ``r`` bound the runs of bounded letters in ``x`` and take
``j`` with ``|f^j(c)| >= n`` for every growing letter ``c``.  A length-``n``
factor of ``x = f^j(x)`` overlaps the images of at most ``r + 2``
consecutive letters (interior ones are bounded), so it occurs in
``f^j(x[:P])`` where ``x[:P]`` already holds every factor of length
``r + 2``.  The small factor sets involved come from the exact closure
``F_k = Fac_k(f(F_k))`` seeded with ``x[:k]``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .config import DEFAULT_CAPS, Caps
from .errors import DomainError, ResourceError
from .lazy import LazyWord, code, fixed_point
from .letters import classify
from .words import SEPARATOR, Alphabet, Morphism, TotalOrder

_BLOCK = 64


@dataclass(frozen=True)
class ExtremalQuery:
    letter: str
    order: TotalOrder
    length: int


@dataclass(eq=False)
class FactorSet:
    """All factors of length ``<= max_length`` of a subshift language.

    ``text`` contains every such factor as a substring; segments separated
    by :data:`SEPARATOR` never straddle.  ``certified`` is False for sets
    sampled from an arbitrary word prefix.
    """

    alphabet: Alphabet
    max_length: int
    text: str
    certified: bool = True
    source: object = None

    def contains(self, w: str) -> bool:
        if len(w) > self.max_length:
            raise DomainError(f"factor length {len(w)} exceeds the set's max length {self.max_length}")
        return w in self.text

    __contains__ = contains

    def words(self, k: int) -> set[str]:
        if k > self.max_length:
            raise DomainError(f"length {k} exceeds max length {self.max_length}")
        t = self.text
        out = set()
        for i in range(len(t) - k + 1):
            w = t[i:i + k]
            if SEPARATOR not in w:
                out.add(w)
        return out

    def letters(self) -> set[str]:
        return set(self.text) - {SEPARATOR}

    def successors(self, w: str) -> set[str]:
        """Letters ``c`` with ``w·c`` in the set."""
        if len(w) + 1 > self.max_length:
            raise DomainError("successor query exceeds max length")
        t, out, start = self.text, set(), 0
        while True:
            i = t.find(w, start)
            if i < 0 or i + len(w) >= len(t):
                break
            c = t[i + len(w)]
            if c != SEPARATOR:
                out.add(c)
            start = i + 1
        return out

    def minimal_absent(self, k: int) -> list[str]:
        """Minimal absent words of length ``<= k``: not factors, but both maximal proper factors are."""
        out = []
        size = self.alphabet.size
        for c in range(size):
            if chr(c) not in self.text:
                out.append(chr(c))
        prev = self.words(1)
        for n in range(2, k + 1):
            cur = self.words(n)
            for w in prev:
                for c in range(size):
                    cand = w + chr(c)
                    if cand[1:] in prev and cand not in cur:
                        out.append(cand)
            prev = cur
        return out

    def greedy(self, letter: str, order: TotalOrder, n: int) -> str:
        """Least factor of length ``n`` beginning with the encoded ``letter``."""
        if n > self.max_length:
            raise DomainError(f"greedy length {n} exceeds max length {self.max_length}")
        if n == 0:
            return ""
        t = self.text
        key = order.key(t)
        rank_letter = order.key(letter)
        L = len(t)
        cands = []
        i = key.find(rank_letter)
        while i >= 0:
            cands.append(i)
            i = key.find(rank_letter, i + 1)
        if not cands:
            raise DomainError(f"letter {self.alphabet.token(letter)} does not occur")
        done = 1
        while done < n:
            blk = min(_BLOCK, n - done)
            best = None
            keep = []
            for p in cands:
                s = p + done
                if s + blk > L:
                    continue
                piece = key[s:s + blk]
                if best is None or piece < best:
                    best, keep = piece, [p]
                elif piece == best:
                    keep.append(p)
            if best is None or SEPARATOR in best:
                raise DomainError("witness text too short for the requested greedy length")
            cands = keep
            done += blk
        p = cands[0]
        return t[p:p + n]


# Closure -------------------------------------------------------------------

def closure_factors(m: Morphism, seed_prefix: str, k: int, budget: int = DEFAULT_CAPS.work) -> set[str]:
    """Exact ``F_k(x)`` for ``x = m^ω(a)`` with ``m`` non-erasing.

    ``seed_prefix`` must hold at least ``k`` symbols of ``x``.  Every
    length-``k`` factor first occurring at ``p > 0`` lies in ``m(v)`` for a
    length-``k`` factor ``v`` occurring strictly earlier, hence the least
    fixpoint from ``x[:k]`` is all of ``F_k``.
    """
    if m.is_erasing:
        raise DomainError("factor closure needs a non-erasing morphism")
    if len(seed_prefix) < k:
        raise DomainError("seed prefix shorter than k")
    table = m._table
    start = seed_prefix[:k]
    seen = {start}
    frontier = [start]
    work = 0
    while frontier:
        nxt = []
        for w in frontier:
            img = w.translate(table)
            span = len(img) - k + 1
            work += span
            if work > budget:
                raise ResourceError(f"factor closure at length {k} exceeded the work budget {budget}")
            for i in range(span):
                v = img[i:i + k]
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def _bounded_run(m, x: LazyWord, bounded: set[int], budget: int, closures: dict, limit: int = 32):
    """Longest run of bounded letters in ``x``, or None when not found up to ``limit``."""
    if not bounded:
        return 0
    for k in range(1, limit + 1):
        fk = closures.get(k)
        if fk is None:
            fk = closures[k] = closure_factors(m, x.prefix(k), k, budget)
        if not any(all(ord(c) in bounded for c in w) for w in fk):
            return k - 1
    return None


def _first_occurrence_end(x: LazyWord, words, start: int = 64) -> int:
    need = set(words)
    n = start
    while True:
        t = x.prefix(n)
        found = {w: t.find(w) for w in need}
        if all(i >= 0 for i in found.values()):
            return max(i + len(w) for w, i in found.items())
        n *= 2


def certified_length(m: Morphism, x: LazyWord, n: int, caps: Caps = DEFAULT_CAPS, closures=None) -> int | None:
    """Prefix length of ``x = m^ω(a)`` that contains all factors of length ``n``; None if no bound was found."""
    if closures is None:
        closures = {}
    cls = classify(m)
    growing = [m.source.index(t) for t in cls.growing]
    bounded = {m.source.index(t) for t in cls.bounded}
    r = _bounded_run(m, x, bounded, caps.work, closures)
    if r is None:
        return None
    k = r + 2
    fk = closures.get(k)
    if fk is None:
        fk = closures[k] = closure_factors(m, x.prefix(k), k, caps.work)
    P = _first_occurrence_end(x, fk)
    lengths = [1] * m.source.size
    j = 0
    while min(lengths[c] for c in growing) < n:
        lengths = [sum(lengths[ord(d)] for d in img) for img in m.images]
        j += 1
        if j > 4 * caps.symbols:
            return None
    head = x.prefix(P)
    H = sum(lengths[ord(c)] for c in head)
    if H > caps.symbols:
        return None
    return max(H, n)


def _window_count(text: str, n: int) -> int:
    return len({hash(text[i:i + n]) for i in range(len(text) - n + 1)})


def closed_prefix_length(m: Morphism, x: LazyWord, n: int, caps: Caps = DEFAULT_CAPS) -> int:
    """Prefix length ``L`` whose length-``n`` factors are closed under ``m``.

    With ``L' = |m(x[:L])|`` every length-``n`` factor of an image of a
    factor of ``x[:L]`` lies in ``x[:L']``.  When ``x[:L']`` has no
    length-``n`` factor missing from ``x[:L]`` the factor set of ``x[:L]``
    is closed and contains ``x[:n]``, so it is all of ``F_n(x)``.  Used
    when the bounded-run bound is unavailable (unbounded runs of bounded
    letters).  Window identity is compared by string hash.
    """
    L = n
    lengths = [len(img) for img in m.images]
    while True:
        head = x.prefix(L)
        L2 = sum(lengths[ord(c)] for c in head)
        if L2 > caps.symbols:
            raise ResourceError(f"factor closure at length {n} needs more than {caps.symbols} symbols")
        if _window_count(x.prefix(L2), n) == _window_count(head, n):
            return L
        L = max(L2, 2 * L)


# Sources -------------------------------------------------------------------

@dataclass(eq=False)
class MorphicSource:
    """``coding(morphism^ω(seed))`` with cached prefixes, factor sets and greedy results."""

    morphism: Morphism
    seed: str
    coding: Morphism | None = None
    caps: Caps = DEFAULT_CAPS
    _word: LazyWord | None = field(default=None, init=False, repr=False)
    _oracle: FactorSet | None = field(default=None, init=False, repr=False)
    _greedy: dict = field(default_factory=dict, init=False, repr=False)
    _closures: dict = field(default_factory=dict, init=False, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, init=False, repr=False)

    def __post_init__(self):
        if self.morphism.is_erasing:
            raise DomainError("factor oracle sources need a non-erasing morphism")
        if self.coding is not None:
            if self.coding.source != self.morphism.source:
                raise DomainError("coding source must be the morphism's alphabet")
            if self.coding.is_erasing:
                raise DomainError("coding must be non-erasing")

    @property
    def alphabet(self) -> Alphabet:
        return self.coding.target if self.coding is not None else self.morphism.source

    @property
    def base(self) -> "MorphicSource":
        """The uncoded fixed point source."""
        if self.coding is None:
            return self
        return MorphicSource(self.morphism, self.seed, caps=self.caps)

    def fixed_word(self) -> LazyWord:
        with self._lock:
            if self._word is None:
                self._fixed = fixed_point(self.morphism, self.seed, cap=self.caps.symbols)
                self._word = self._fixed if self.coding is None else code(self.coding, self._fixed)
            return self._fixed

    def word(self) -> LazyWord:
        self.fixed_word()
        return self._word

    def _build(self, n: int) -> FactorSet:
        x = self.fixed_word()
        H = certified_length(self.morphism, x, n, self.caps, self._closures)
        if H is None:
            H = closed_prefix_length(self.morphism, x, n, self.caps)
        text = x.prefix(H)
        if self.coding is not None:
            text = text.translate(self.coding._table)
        return FactorSet(self.alphabet, n, text, certified=True, source=self)

    def oracle(self, n: int) -> FactorSet:
        """A factor set with ``max_length >= n``; rebuilt (at least doubling) on demand."""
        with self._lock:
            if self._oracle is None or self._oracle.max_length < n:
                cur = self._oracle.max_length if self._oracle is not None else 0
                self._oracle = self._build(max(n, 2 * cur))
            return self._oracle

    def greedy(self, letter: str, order: TotalOrder, n: int) -> str:
        """Length-``n`` prefix of ``l_{letter,order}`` (encoded letter)."""
        k = (letter, order.ranks)
        with self._lock:
            got = self._greedy.get(k)
            if got is not None and len(got) >= n:
                return got[:n]
            fs = self.oracle(n)
            res = fs.greedy(letter, order, fs.max_length)
            self._greedy[k] = res
            return res[:n]


@dataclass(eq=False)
class SampleSource:
    """Factor sets sampled from a prefix of an arbitrary word; not certified."""

    word: LazyWord | str
    horizon: int
    alphabet: Alphabet = None
    _greedy: dict = field(default_factory=dict, init=False, repr=False)

    def text(self) -> str:
        w = self.word
        return w.prefix(self.horizon) if hasattr(w, "prefix") else w[:self.horizon]

    def oracle(self, n: int) -> FactorSet:
        if n > self.horizon:
            raise DomainError("sample factor length exceeds the horizon")
        alpha = self.alphabet or getattr(self.word, "alphabet", None)
        return FactorSet(alpha, n, self.text(), certified=False, source=self)

    def greedy(self, letter: str, order: TotalOrder, n: int) -> str:
        k = (letter, order.ranks, n)
        if k not in self._greedy:
            self._greedy[k] = self.oracle(n).greedy(letter, order, n)
        return self._greedy[k]


def build_factors(m: Morphism, seed: str, n: int, caps: Caps = DEFAULT_CAPS) -> FactorSet:
    """Exactly the factors of length ``<= n`` of ``m^ω(seed)``."""
    src = MorphicSource(m, seed, caps=caps)
    fs = src._build(n)
    src._oracle = fs
    return fs


def _source_of(fs):
    if isinstance(fs, (MorphicSource, SampleSource, FactorSet)):
        return fs
    raise DomainError(f"not a factor source: {fs!r}")


def greedy_extremal(fs, q: ExtremalQuery | str, order: TotalOrder | None = None, length: int | None = None) -> str:
    """Prefix of the least word of the subshift starting with a letter.

    ``fs`` is a :class:`MorphicSource`, :class:`SampleSource` or a
    :class:`FactorSet`.  The letter is a token; the result is encoded.
    Called as ``greedy_extremal(fs, ExtremalQuery(...))`` or
    ``greedy_extremal(fs, letter, order, length)``.
    """
    if not isinstance(q, ExtremalQuery):
        q = ExtremalQuery(q, order, length)
    src = _source_of(fs)
    alpha = src.alphabet if not isinstance(src, SampleSource) else (src.alphabet or src.word.alphabet)
    c = alpha.code(q.letter)
    return src.greedy(c, q.order, q.length)


def is_recurrent_sample(fs, horizon: int, window: int | None = None) -> bool:
    """Heuristic: every factor of length ``<= horizon // 4`` of the horizon prefix occurs twice in it.

    Checking the windows of length exactly ``K = horizon // 4`` suffices,
    since any shorter factor extends to a ``K``-window on one side.
    ``window`` overrides ``K``.
    """
    if isinstance(fs, FactorSet):
        text = fs.text.split(SEPARATOR)[0]
    elif isinstance(fs, MorphicSource):
        text = fs.word().prefix(horizon)
    elif isinstance(fs, SampleSource):
        text = fs.text()
    elif hasattr(fs, "prefix"):
        text = fs.prefix(horizon)
    else:
        text = fs
    text = text[:horizon]
    K = horizon // 4 if window is None else window
    if K == 0:
        return True
    if len(text) < horizon:
        return False
    seen: dict[str, int] = {}
    for i in range(len(text) - K + 1):
        w = text[i:i + K]
        seen[w] = seen.get(w, 0) + 1
    return all(c >= 2 for c in seen.values())


def mirror_identities_check(m: Morphism, seed: str, n: int, horizon: int = 4096, window: int = 256,
                            caps: Caps = DEFAULT_CAPS) -> bool:
    """Binary recurrent words: ``l_{1,0<1} = 1 l_{0,0<1}`` and ``l_{0,1<0} = 0 l_{1,1<0}``.

    The recurrence precondition uses ``window``-length factors of the
    horizon prefix; a quarter of the horizon is too strict for Chacon-like
    words, whose long blocks recur only after about three block lengths.
    """
    if m.source.size != 2:
        raise DomainError("mirror identities need a binary alphabet")
    src = MorphicSource(m, seed, caps=caps)
    x = src.word()
    head = x.prefix(max(horizon, 64))
    missing = [t for t in m.source if m.source.code(t) not in head]
    if missing:
        raise DomainError(f"letters {missing} do not occur")
    if not is_recurrent_sample(src, horizon, window):
        raise DomainError(f"recurrence sample check failed: {window}-factors of the {horizon}-prefix")
    zero, one = m.source.letters
    rho = TotalOrder.from_tokens(m.source, [zero, one])
    bar = rho.reversed()
    z, o = m.source.code(zero), m.source.code(one)
    ok1 = src.greedy(o, rho, n) == (o + src.greedy(z, rho, n))[:n]
    ok2 = src.greedy(z, bar, n) == (z + src.greedy(o, bar, n))[:n]
    return ok1 and ok2
