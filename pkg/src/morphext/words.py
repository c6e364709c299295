"""Alphabets, finite words, total orders and morphisms.

A finite word over an :class:`Alphabet` is stored as a Python ``str`` whose
code points are letter indices: the letter with index ``i`` is ``chr(i)``.
That keeps concatenation, slicing, substring search and morphism
application (``str.translate``) in C.  Use :meth:`Alphabet.encode` and
:meth:`Alphabet.decode` at the boundaries.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, ParseError

# Separator for multi-segment witness texts; never a letter index.
SEPARATOR = "\uffff"
MAX_ALPHABET = 0xFFFF


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise DomainError("alphabet must contain at least one letter")
        if len(letters) >= MAX_ALPHABET:
            raise DomainError("alphabet too large")
        index = {}
        for i, tok in enumerate(letters):
            if not isinstance(tok, str) or not tok or any(ch.isspace() for ch in tok):
                raise DomainError(f"invalid letter token {tok!r}")
            if tok in index:
                raise DomainError(f"duplicate letter token {tok!r}")
            index[tok] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, spec: str | Iterable[str]) -> "Alphabet":
        """``Alphabet.of("01")`` or ``Alphabet.of("0 1 @b")`` or a token list."""
        if isinstance(spec, str):
            toks = spec.split() if any(c.isspace() for c in spec) else list(spec)
            return cls(tuple(toks))
        return cls(tuple(spec))

    @property
    def size(self) -> int:
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, tok):
        return tok in self._index

    def index(self, tok: str) -> int:
        try:
            return self._index[tok]
        except KeyError:
            raise DomainError(f"letter {tok!r} not in alphabet {self}") from None

    def code(self, tok: str) -> str:
        """Encoded one-letter word for ``tok``."""
        return chr(self.index(tok))

    def token(self, ch: str | int) -> str:
        i = ord(ch) if isinstance(ch, str) else ch
        if not 0 <= i < len(self.letters):
            raise DomainError(f"letter index {i} outside alphabet of size {self.size}")
        return self.letters[i]

    @property
    def single_char(self) -> bool:
        return all(len(t) == 1 for t in self.letters)

    def encode(self, word: str | Sequence[str]) -> str:
        """Encode a word given as a token sequence or a string.

        Strings containing whitespace are split on it; otherwise, for
        alphabets of one-character tokens, every character is a letter.
        """
        if isinstance(word, str):
            toks = self.split(word)
        else:
            toks = word
        return "".join(chr(self.index(t)) for t in toks)

    def split(self, text: str) -> list[str]:
        if any(c.isspace() for c in text):
            return text.split()
        if not text:
            return []
        if self.single_char:
            return list(text)
        if text in self._index:
            return [text]
        raise ParseError(f"cannot split {text!r} into tokens; separate tokens with spaces")

    def decode(self, word: str) -> list[str]:
        return [self.token(ch) for ch in word]

    def format(self, word: str, sep: str | None = None) -> str:
        if sep is None:
            sep = "" if self.single_char else " "
        return sep.join(self.token(ch) for ch in word)

    def check(self, word: str) -> str:
        if word and max(map(ord, word)) >= self.size:
            bad = max(map(ord, word))
            raise DomainError(f"letter index {bad} outside alphabet of size {self.size}")
        return word

    def extend(self, tok: str) -> "Alphabet":
        return Alphabet(self.letters + (tok,))

    def fresh(self, prefix: str = "@", stem: str = "seed") -> str:
        """A token starting with ``prefix`` that is not yet in the alphabet."""
        cand = prefix + stem
        i = 1
        while cand in self._index:
            cand = f"{prefix}{stem}{i}"
            i += 1
        return cand

    def __str__(self):
        return "{" + ",".join(self.letters) + "}"


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    PREFIX = 2  # one word is a proper prefix of the other

    @property
    def is_order(self):
        return self is not Ordering.PREFIX


@dataclass(frozen=True)
class TotalOrder:
    """Total order on an alphabet; ``ranks[i]`` is the rank of letter ``i``."""

    alphabet: Alphabet
    ranks: tuple[int, ...]
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        ranks = tuple(self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if sorted(ranks) != list(range(self.alphabet.size)):
            raise DomainError("order ranks must be a permutation of the alphabet")
        object.__setattr__(self, "_table", {i: chr(r) for i, r in enumerate(ranks)})

    @classmethod
    def natural(cls, alphabet: Alphabet) -> "TotalOrder":
        return cls(alphabet, tuple(range(alphabet.size)))

    @classmethod
    def from_tokens(cls, alphabet: Alphabet, toks: Sequence[str]) -> "TotalOrder":
        """Order listing ``toks`` from least to greatest."""
        ranks = [None] * alphabet.size
        for r, t in enumerate(toks):
            ranks[alphabet.index(t)] = r
        if None in ranks or len(toks) != alphabet.size:
            raise DomainError("order must list every letter exactly once")
        return cls(alphabet, tuple(ranks))

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "TotalOrder":
        return parse_order(text, alphabet)

    def key(self, word: str) -> str:
        """Rank-encoded word; plain ``str`` comparison of keys is lexicographic under this order."""
        return word.translate(self._table)

    def rank(self, letter: str) -> int:
        return self.ranks[ord(letter)]

    def least(self, letters: Iterable[str]) -> str:
        return min(letters, key=lambda c: self.ranks[ord(c)])

    def tokens(self) -> list[str]:
        return sorted(self.alphabet.letters, key=lambda t: self.ranks[self.alphabet.index(t)])

    def reversed(self) -> "TotalOrder":
        n = self.alphabet.size
        return TotalOrder(self.alphabet, tuple(n - 1 - r for r in self.ranks))

    def less(self, a: str, b: str) -> bool:
        return self.ranks[ord(a)] < self.ranks[ord(b)]

    def __str__(self):
        return "<".join(self.tokens())


def parse_order(text: str, alphabet: Alphabet) -> TotalOrder:
    """Parse ``"1<0"``-style order strings; the leftmost token is least."""
    parts = [p.strip() for p in text.split("<")]
    seen = {}
    pos = 0
    for i, tok in enumerate(parts):
        if not tok:
            raise ParseError(f"empty token in order {text!r}", position=pos)
        if tok not in alphabet:
            raise ParseError(f"unknown letter {tok!r} in order", position=pos)
        if tok in seen:
            raise ParseError(f"duplicate letter {tok!r} in order", position=pos)
        seen[tok] = i
        pos += len(tok) + 1
    missing = [t for t in alphabet if t not in seen]
    if missing:
        raise ParseError(f"order misses letters {missing}", position=len(text))
    return TotalOrder.from_tokens(alphabet, parts)


def compare(order: TotalOrder, x, y, bound: int | None = None) -> Ordering:
    """Lexicographic comparison of finite words or lazy-word prefixes.

    Lazy words (anything with ``prefix``) are compared on their first
    ``bound`` symbols; two infinite words equal up to ``bound`` compare EQUAL.
    """
    if hasattr(x, "prefix") or hasattr(y, "prefix"):
        if bound is None:
            raise DomainError("comparing infinite words needs a bound")
        x = x.prefix(bound) if hasattr(x, "prefix") else x[:bound]
        y = y.prefix(bound) if hasattr(y, "prefix") else y[:bound]
    kx, ky = order.key(x), order.key(y)
    n = min(len(kx), len(ky))
    if kx[:n] == ky[:n]:
        if len(kx) == len(ky):
            return Ordering.EQUAL
        return Ordering.PREFIX
    return Ordering.LESS if kx < ky else Ordering.GREATER


def is_prefix(u: str, w: str) -> bool:
    return w.startswith(u)


def common_prefix_length(u: str, w: str) -> int:
    lo, hi = 0, min(len(u), len(w))
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if u[lo:mid] == w[lo:mid]:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass(frozen=True)
class Morphism:
    source: Alphabet
    target: Alphabet
    images: tuple[str, ...]
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source.size:
            raise DomainError("every letter needs exactly one image")
        for img in images:
            self.target.check(img)
        object.__setattr__(self, "_table", {i: img for i, img in enumerate(images)})

    @classmethod
    def from_rules(cls, rules: Mapping[str, str | Sequence[str]], alphabet: Alphabet | str | None = None,
                   target: Alphabet | str | None = None) -> "Morphism":
        """``Morphism.from_rules({"0": "01", "1": "00"})``.

        Images may be strings (split like :meth:`Alphabet.encode`) or token lists.
        """
        if alphabet is None:
            alphabet = Alphabet(tuple(rules))
        elif not isinstance(alphabet, Alphabet):
            alphabet = Alphabet.of(alphabet)
        if target is None:
            target = alphabet
        elif not isinstance(target, Alphabet):
            target = Alphabet.of(target)
        if set(rules) != set(alphabet.letters):
            raise DomainError("rules must cover exactly the source alphabet")
        return cls(alphabet, target, tuple(target.encode(rules[t]) for t in alphabet))

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Morphism":
        return cls(alphabet, alphabet, tuple(chr(i) for i in range(alphabet.size)))

    def __call__(self, word: str) -> str:
        return self.apply(word)

    def apply(self, word: str) -> str:
        self.source.check(word)
        return word.translate(self._table)

    def image(self, tok: str) -> str:
        return self.images[self.source.index(tok)]

    @property
    def is_endomorphism(self) -> bool:
        return self.source == self.target

    @property
    def is_erasing(self) -> bool:
        return any(not img for img in self.images)

    @property
    def is_coding(self) -> bool:
        return all(len(img) == 1 for img in self.images)

    @property
    def is_identity(self) -> bool:
        return self.is_endomorphism and all(img == chr(i) for i, img in enumerate(self.images))

    @property
    def max_image_length(self) -> int:
        return max(len(img) for img in self.images)

    def compose(self, inner: "Morphism") -> "Morphism":
        """``self ∘ inner``."""
        if inner.target != self.source:
            raise DomainError("composition needs inner target == outer source")
        return Morphism(inner.source, self.target, tuple(self.apply(img) for img in inner.images))

    def power(self, n: int) -> "Morphism":
        if not self.is_endomorphism:
            raise DomainError("powers need an endomorphism")
        if n < 0:
            raise DomainError("negative power")
        result = Morphism.identity(self.source)
        base = self
        while n:
            if n & 1:
                result = base.compose(result)
            base = base.compose(base)
            n >>= 1
        return result

    def extend(self, tok: str, image: str, target_tok: str | None = None) -> "Morphism":
        """Add a fresh source letter ``tok`` with (encoded) ``image``.

        For endomorphisms the target gains the same letter.
        """
        src = self.source.extend(tok)
        tgt = self.target.extend(tok) if self.is_endomorphism else self.target
        return Morphism(src, tgt, self.images + (image,))

    def rules(self) -> dict[str, list[str]]:
        return {t: self.target.decode(img) for t, img in zip(self.source, self.images)}

    def __str__(self):
        fmt = self.target.format
        return ", ".join(f"{t}->{fmt(img) or 'ε'}" for t, img in zip(self.source, self.images))


def apply(m: Morphism, w: str) -> str:
    return m.apply(w)


def power_apply(m: Morphism, w: str, n: int) -> str:
    if not m.is_endomorphism:
        raise DomainError("power_apply needs an endomorphism")
    if n < 0:
        raise DomainError("negative power")
    for _ in range(n):
        w = m.apply(w)
    return w
