"""Return words, derived words and the induced order on return indices."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, FactorizationError, FiniteWordError
from .words import Alphabet, TotalOrder


@dataclass(frozen=True)
class ReturnSystem:
    u: str
    returns: tuple[str, ...]  # index i (0-based) is derived letter str(i + 1)
    horizon: int
    occurrences: int
    stable: bool
    primitive: bool = False

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(tuple(str(i + 1) for i in range(len(self.returns))))

    @property
    def possibly_incomplete(self) -> bool:
        return not (self.primitive and self.stable)

    def image(self, derived: str) -> str:
        """``σ_u`` applied to an encoded derived word."""
        return "".join(self.returns[ord(c)] for c in derived)


def _text(x, n: int) -> str:
    if hasattr(x, "prefix"):
        try:
            return x.prefix(n)
        except FiniteWordError:
            return x.prefix(x.materialized)
    return x[:n]


def return_words(x, u: str, horizon: int, primitive: bool = False) -> ReturnSystem:
    """Gap words between consecutive occurrences of ``u`` in ``x[:horizon]``.

    Returns are indexed in order of first appearance.  The set is flagged
    stable when no new return word completes in the second half of the scan.
    """
    if not u:
        raise DomainError("return words of the empty word are undefined")
    text = _text(x, horizon)
    occ = []
    i = text.find(u)
    while i >= 0:
        occ.append(i)
        i = text.find(u, i + 1)
    if not occ:
        raise DomainError(f"factor does not occur in the first {horizon} symbols")
    if len(occ) < 2:
        raise DomainError(f"factor occurs only once in the first {horizon} symbols; no return word")
    seen: dict[str, int] = {}
    last_new = 0
    for p, q in zip(occ, occ[1:]):
        r = text[p:q]
        if r not in seen:
            seen[r] = len(seen)
            last_new = q + len(u)
    stable = last_new <= len(text) // 2
    return ReturnSystem(u, tuple(seen), horizon, len(occ), stable, primitive)


def derive(x, y, u: str, rs: ReturnSystem, n: int) -> str:
    """First ``n`` letters of ``D_u(y)``, encoded over ``rs.alphabet``.

    ``x`` is the ambient word the return system came from; only ``y`` is
    read.  Complete returns ``r·u`` are prefix-incomparable, so at each
    position at most one of them matches.
    """
    if rs.u != u:
        raise DomainError("return system belongs to a different factor")
    ax, ay = getattr(x, "alphabet", None), getattr(y, "alphabet", None)
    if ax is not None and ay is not None and ax != ay:
        raise DomainError("x and y are over different alphabets")
    if n == 0:
        return ""
    complete = [r + u for r in rs.returns]
    longest = max(map(len, complete))
    need = 4 * longest * max(n, 8)
    text = _text(y, need)
    if not text.startswith(u):
        raise DomainError("y does not start with u")
    out = []
    pos = 0
    while len(out) < n:
        if pos + longest > len(text):
            text = _text(y, max(2 * len(text), pos + longest))
        hit = None
        for i, c in enumerate(complete):
            if text.startswith(c, pos):
                hit = i
                break
        if hit is None:
            raise FactorizationError(f"no complete return matches at position {pos}", position=pos)
        out.append(chr(hit))
        pos += len(rs.returns[hit])
    return "".join(out)


def induced_order(rs: ReturnSystem, base: TotalOrder) -> TotalOrder:
    """``i ≤_u j`` iff ``σ_u(i) u ≤ σ_u(j) u`` under ``base``."""
    complete = [base.key(r + rs.u) for r in rs.returns]
    ranked = sorted(range(len(complete)), key=complete.__getitem__)
    for i, j in zip(ranked, ranked[1:]):
        if complete[j].startswith(complete[i]):
            raise DomainError(f"complete returns {i + 1} and {j + 1} are prefix-comparable")
    alpha = rs.alphabet
    return TotalOrder.from_tokens(alpha, [alpha.token(i) for i in ranked])


@dataclass(frozen=True)
class CensusRow:
    length: int
    u: str
    returns: int
    derived: str
    distinct: int  # distinct derived words seen up to this row


@dataclass(frozen=True)
class Census:
    rows: tuple[CensusRow, ...]

    @property
    def trajectory(self) -> list[int]:
        return [r.distinct for r in self.rows]


def derived_word_census(x, y, prefix_lengths, horizon: int, out_len: int = 50) -> Census:
    """Distinct ``D_u(y)`` (first ``out_len`` letters) over prefixes ``u`` of ``y``."""
    rows = []
    seen = set()
    for k in prefix_lengths:
        u = _text(y, k)
        if len(u) < k:
            raise DomainError(f"y is shorter than {k}")
        rs = return_words(x, u, horizon)
        d = derive(x, y, u, rs, out_len)
        seen.add(d)
        rows.append(CensusRow(k, u, len(rs.returns), d, len(seen)))
    return Census(tuple(rows))
