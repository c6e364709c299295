"""Reading and writing morphism and representation files.

Format::

    # comment
    alphabet: 0 1
    target: 0 1            (optional; defaults to the alphabet)
    rule 0 -> 0 1
    rule 1 -> 0 0
    seed: 0                (optional)

Representation files add ``prepend:``, ``drop:``, ``note:`` and one
``coding: <tok> -> <tok> ...`` line per generator letter.  Tokens starting
with the fresh-letter prefix are reserved for generated letters and only
accepted in representation files.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import MorphicError, ParseError
from .words import Alphabet, Morphism


@dataclass(frozen=True)
class MorphismFile:
    morphism: Morphism
    seed: str | None = None


def _split_rule(body: str, lineno: int):
    if "->" not in body:
        raise ParseError("rule needs '->'", line=lineno)
    lhs, rhs = body.split("->", 1)
    lhs = lhs.split()
    if len(lhs) != 1:
        raise ParseError("rule must map exactly one letter", line=lineno)
    return lhs[0], rhs.split()


def _parse_lines(text: str, *, allow_erasing: bool, reserved: str | None, rep: bool):
    fields: dict[str, object] = {}
    rules: dict[str, list[str]] = {}
    coding: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("rule ") or line == "rule":
            lhs, rhs = _split_rule(line[4:], lineno)
            if lhs in rules:
                raise ParseError(f"duplicate rule for {lhs!r}", line=lineno)
            if not rhs and not allow_erasing:
                raise ParseError(f"empty image for {lhs!r}; pass --allow-erasing to permit", line=lineno)
            rules[lhs] = rhs
            continue
        if ":" not in line:
            raise ParseError(f"unrecognized line {line!r}", line=lineno)
        key, val = line.split(":", 1)
        key = key.strip()
        if key == "coding" and rep:
            lhs, rhs = _split_rule(val, lineno)
            if lhs in coding:
                raise ParseError(f"duplicate coding for {lhs!r}", line=lineno)
            coding[lhs] = rhs
            continue
        allowed = {"alphabet", "target", "seed"} | ({"prepend", "drop", "note"} if rep else set())
        if key not in allowed:
            raise ParseError(f"unknown field {key!r}", line=lineno)
        if key in fields:
            raise ParseError(f"duplicate field {key!r}", line=lineno)
        fields[key] = (val.split(), lineno)
    if "alphabet" not in fields:
        raise ParseError("missing 'alphabet:' line")
    toks, lineno = fields["alphabet"]
    if reserved and not rep:
        for t in toks:
            if t.startswith(reserved):
                raise ParseError(f"token {t!r} uses the reserved prefix {reserved!r}", line=lineno)
    try:
        alpha = Alphabet(tuple(toks))
    except MorphicError as e:
        raise ParseError(str(e), line=lineno) from None
    target = alpha
    if "target" in fields and not rep:
        ttoks, tline = fields["target"]
        try:
            target = Alphabet(tuple(ttoks))
        except MorphicError as e:
            raise ParseError(str(e), line=tline) from None
    missing = [t for t in alpha if t not in rules]
    if missing:
        raise ParseError(f"no rule for letters {missing}")
    extra = [t for t in rules if t not in alpha]
    if extra:
        raise ParseError(f"rules for letters outside the alphabet: {extra}")
    try:
        m = Morphism(alpha, target, tuple(target.encode(rules[t]) for t in alpha))
    except MorphicError as e:
        raise ParseError(str(e)) from None
    seed = None
    if "seed" in fields:
        stoks, sline = fields["seed"]
        if len(stoks) != 1 or stoks[0] not in alpha:
            raise ParseError("seed must be one alphabet letter", line=sline)
        seed = stoks[0]
    return m, seed, fields, coding


def parse_morphism(text: str, *, allow_erasing: bool = False, reserved: str | None = "@") -> MorphismFile:
    m, seed, _, _ = _parse_lines(text, allow_erasing=allow_erasing, reserved=reserved, rep=False)
    return MorphismFile(m, seed)


def load_morphism(path, **kw) -> MorphismFile:
    return parse_morphism(Path(path).read_text(), **kw)


def format_morphism(m: Morphism, seed: str | None = None) -> str:
    lines = [f"alphabet: {' '.join(m.source)}"]
    if not m.is_endomorphism:
        lines.append(f"target: {' '.join(m.target)}")
    for t, img in zip(m.source, m.images):
        rhs = " ".join(m.target.decode(img))
        lines.append(f"rule {t} -> {rhs}".rstrip())
    if seed is not None:
        lines.append(f"seed: {seed}")
    return "\n".join(lines) + "\n"


def format_rep(rep) -> str:
    gen, cod = rep.generator, rep.coding
    out = [format_morphism(gen, rep.seed).rstrip("\n")]
    out.append(f"target: {' '.join(cod.target)}")
    out.append(f"prepend: {' '.join(cod.target.decode(rep.prepend))}".rstrip())
    out.append(f"drop: {rep.drop}")
    for t, img in zip(cod.source, cod.images):
        out.append(f"coding: {t} -> {' '.join(cod.target.decode(img))}")
    out.append(f"note: {rep.note}")
    return "\n".join(out) + "\n"


def parse_rep(text: str):
    from .synth import MorphicRep

    gen, seed, fields, coding = _parse_lines(text, allow_erasing=True, reserved=None, rep=True)
    if seed is None:
        raise ParseError("representation needs a seed")
    # in representation files 'target:' names the coding's target alphabet
    tgt = Alphabet(tuple(fields["target"][0])) if "target" in fields else gen.source
    if set(coding) != set(gen.source):
        raise ParseError("coding lines must cover the generator alphabet")
    cod = Morphism(gen.source, tgt, tuple(tgt.encode(coding[t]) for t in gen.source))
    pre = tgt.encode(fields["prepend"][0]) if "prepend" in fields else ""
    try:
        d = int(fields["drop"][0][0]) if "drop" in fields else 0
    except (ValueError, IndexError):
        raise ParseError("drop must be an integer", line=fields["drop"][1]) from None
    note = " ".join(fields["note"][0]) if "note" in fields else ""
    return MorphicRep(pre, d, seed, gen, cod, note)
