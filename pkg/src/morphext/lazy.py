"""Prefix-on-demand infinite words with an append-only memo."""

from __future__ import annotations

import threading
from typing import Callable, Iterator

from .config import DEFAULT_CAPS
from .errors import DomainError, FiniteWordError, NotProlongableError, ResourceError
from .letters import mortal_indices
from .words import Alphabet, Morphism

_BLOCK = 1 << 16


class LazyWord:
    """An infinite word given by a chunk generator.

    ``prefix(n)`` is deterministic and the memo only ever grows, so
    ``prefix(n)`` is a prefix of ``prefix(m)`` for ``n <= m``.  Growth is
    serialized by a lock; reads of an already materialized prefix are cheap.
    """

    def __init__(self, chunks: Iterator[str], alphabet: Alphabet | None = None, *,
                 cap: int | None = None, name: str = ""):
        self._chunks = chunks
        self._buf = ""
        self._lock = threading.Lock()
        self.alphabet = alphabet
        self.cap = DEFAULT_CAPS.symbols if cap is None else cap
        self.name = name
        self.exhausted = False

    @classmethod
    def from_function(cls, make: Callable[[], Iterator[str]], alphabet=None, **kw) -> "LazyWord":
        return cls(make(), alphabet, **kw)

    @property
    def materialized(self) -> int:
        return len(self._buf)

    def _grow(self, n: int):
        with self._lock:
            if len(self._buf) >= n:
                return
            target = min(max(n, 2 * len(self._buf)), self.cap)
            parts = [self._buf]
            have = len(self._buf)
            while have < target:
                try:
                    chunk = next(self._chunks)
                except StopIteration:
                    self.exhausted = True
                    break
                parts.append(chunk)
                have += len(chunk)
            self._buf = "".join(parts)
        if len(self._buf) < n:
            raise FiniteWordError(f"{self.name or 'word'} is finite (length {len(self._buf)})")

    def prefix(self, n: int) -> str:
        if n < 0:
            raise DomainError("negative prefix length")
        if n > self.cap:
            raise ResourceError(f"requested {n} symbols of {self.name or 'lazy word'}; cap is {self.cap}")
        if len(self._buf) < n:
            self._grow(n)
        return self._buf[:n]

    def __getitem__(self, key):
        if isinstance(key, slice):
            if key.stop is None:
                raise DomainError("open-ended slice of an infinite word")
            return self.prefix(key.stop)[key]
        if key < 0:
            raise DomainError("negative index into an infinite word")
        return self.prefix(key + 1)[key]

    def __repr__(self):
        return f"LazyWord({self.name or '?'}, materialized={len(self._buf)})"


def is_prolongable(m: Morphism, a: str) -> bool:
    """``m(a) = a·x`` with ``x`` non-empty and not entirely mortal."""
    if not m.is_endomorphism:
        return False
    i = m.source.index(a)
    img = m.images[i]
    if len(img) < 2 or img[0] != chr(i):
        return False
    mortal = mortal_indices(m)
    return any(ord(c) not in mortal for c in img[1:])


def _check_prolongable(m: Morphism, a: str):
    if not m.is_endomorphism:
        raise NotProlongableError("fixed points need an endomorphism")
    i = m.source.index(a)
    img = m.images[i]
    if not img or img[0] != chr(i):
        raise NotProlongableError(f"m({a}) does not begin with {a}")
    if len(img) < 2:
        raise NotProlongableError(f"m({a}) = {a}: the tail x is empty")
    mortal = mortal_indices(m)
    if all(ord(c) in mortal for c in img[1:]):
        tail = m.target.format(img[1:])
        raise NotProlongableError(f"m({a}) = {a}·{tail} but the tail {tail} is mortal; the fixed point is finite")


def _fixed_point_chunks(m: Morphism, i: int) -> Iterator[str]:
    table = m._table
    text = m.images[i]
    yield text
    done = 1
    while done < len(text):
        stop = min(len(text), done + _BLOCK)
        chunk = text[done:stop].translate(table)
        done = stop
        if chunk:
            text += chunk
            yield chunk


def fixed_point(m: Morphism, a: str, *, cap: int | None = None) -> LazyWord:
    """``lim m^k(a)``; every letter of the output is expanded exactly once."""
    _check_prolongable(m, a)
    return LazyWord(_fixed_point_chunks(m, m.source.index(a)), m.source, cap=cap, name=f"fixed point at {a}")


def _coded_chunks(m: Morphism, w: LazyWord) -> Iterator[str]:
    table = m._table
    pos, block = 0, 64
    while True:
        try:
            piece = w.prefix(pos + block)[pos:]
        except FiniteWordError:
            piece = w.prefix(w.materialized)[pos:]
            if not piece:
                return
        pos += len(piece)
        yield piece.translate(table)
        block = min(block * 2, _BLOCK)


def code(m: Morphism, w: LazyWord, *, cap: int | None = None) -> LazyWord:
    """Lazy image ``m(w)`` under a non-erasing morphism."""
    if m.is_erasing:
        raise DomainError("coding an infinite word needs a non-erasing morphism")
    if w.alphabet is not None and w.alphabet != m.source:
        raise DomainError("morphism source does not match the word's alphabet")
    return LazyWord(_coded_chunks(m, w), m.target, cap=cap if cap is not None else w.cap,
                    name=f"image of {w.name}")


def prepend(u: str, w: LazyWord) -> LazyWord:
    def chunks():
        if u:
            yield u
        yield from _tail_chunks(w, 0)
    return LazyWord(chunks(), w.alphabet, cap=w.cap, name=f"prefixed {w.name}")


def drop(w: LazyWord, k: int) -> LazyWord:
    if k < 0:
        raise DomainError("negative drop")
    if k == 0:
        return w
    return LazyWord(_tail_chunks(w, k), w.alphabet, cap=w.cap, name=f"{w.name} minus {k}")


def _tail_chunks(w: LazyWord, start: int) -> Iterator[str]:
    pos, block = start, 256
    while True:
        try:
            piece = w.prefix(pos + block)[pos:]
        except FiniteWordError:
            piece = w.prefix(w.materialized)[pos:]
            if piece:
                yield piece
            return
        pos += len(piece)
        yield piece
        block = min(block * 2, _BLOCK)


def periodic(u: str, v: str, alphabet: Alphabet | None = None) -> LazyWord:
    """``u v v v ⋯``."""
    if not v:
        raise DomainError("empty period")

    def chunks():
        if u:
            yield u
        rep = v * max(1, 4096 // len(v))
        while True:
            yield rep
    return LazyWord(chunks(), alphabet, name="periodic")


def from_word(w: str, alphabet: Alphabet | None = None) -> LazyWord:
    """Finite word as a LazyWord (exhausted after ``len(w)`` symbols)."""
    return LazyWord(iter([w]), alphabet, name="finite")
