"""Command-line interface: ``morphext <command> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .casestudies import CASES, run_casestudy
from .config import DEFAULT_CAPS
from .errors import MorphicError, ParseError
from .factors import MorphicSource
from .lazy import fixed_point
from .letters import classify, finite_fixed_points
from .mx import Verdict, check_mx
from .returns import derive, derived_word_census, return_words
from .synth import expand, synthesize, synthesize_coded
from .textformat import format_rep, parse_morphism
from .words import TotalOrder, parse_order

SHOW = 72


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _caps(args):
    return DEFAULT_CAPS.with_(symbols=args.cap_symbols, work=args.cap_work, fresh_prefix=args.seed_token_prefix)


def _load(path, args, allow_erasing=False):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return parse_morphism(text, allow_erasing=allow_erasing, reserved=args.seed_token_prefix)


def _seed(mf, args):
    seed = getattr(args, "seed", None) or mf.seed
    if seed is None:
        raise UsageError("no seed letter: add 'seed:' to the file or pass --seed")
    return seed


def _order(text, alphabet):
    if text is None:
        return TotalOrder.natural(alphabet)
    return parse_order(text, alphabet)


def _letter(tok, alphabet):
    if tok not in alphabet:
        raise UsageError(f"letter {tok!r} is not in the alphabet {alphabet}")
    return tok


def _fmt_set(alphabet, toks):
    return "{" + ", ".join(sorted(toks, key=alphabet.index)) + "}"


# Commands ------------------------------------------------------------------

def cmd_expand(args):
    mf = _load(args.file, args, allow_erasing=args.allow_erasing)
    x = fixed_point(mf.morphism, _seed(mf, args), cap=args.cap_symbols)
    print(mf.morphism.source.format(x.prefix(args.length)))
    return 0


def cmd_classify(args):
    mf = _load(args.file, args, allow_erasing=args.allow_erasing)
    cls = classify(mf.morphism)
    A = mf.morphism.source
    print(f"mortal: {_fmt_set(A, cls.mortal)}")
    print(f"bounded: {_fmt_set(A, cls.bounded)}")
    print(f"growing: {_fmt_set(A, cls.growing)}")
    print(f"mortality exponent: {cls.mortality_exponent}")
    return 0


def cmd_fixedpoints(args):
    mf = _load(args.file, args, allow_erasing=args.allow_erasing)
    fp = finite_fixed_points(mf.morphism)
    A = mf.morphism.source
    if not fp.entries:
        print("no finite fixed points")
    for a, w in fp.entries:
        print(f"{a}: {A.format(w)}")
    return 0


def cmd_factors(args):
    mf = _load(args.file, args)
    src = MorphicSource(mf.morphism, _seed(mf, args), caps=_caps(args))
    fs = src.oracle(args.length)
    A = mf.morphism.source
    if args.absent:
        for w in sorted(fs.minimal_absent(args.length), key=lambda w: (len(w), w)):
            print(A.format(w))
    else:
        for w in sorted(fs.words(args.length)):
            print(A.format(w))
    return 0


def _source(args, caps):
    mf = _load(args.file, args)
    seed = _seed(mf, args)
    coding = None
    if getattr(args, "coding", None):
        coding = _load(args.coding, args).morphism
    return mf.morphism, seed, coding, MorphicSource(mf.morphism, seed, coding=coding, caps=caps)


def cmd_extremal(args):
    caps = _caps(args)
    m, seed, coding, src = _source(args, caps)
    A = src.alphabet
    order = _order(args.order, A)
    w = src.greedy(A.code(_letter(args.letter, A)), order, args.length)
    print(A.format(w))
    return 0


def cmd_check_mx(args):
    caps = _caps(args)
    mf = _load(args.file, args)
    m = mf.morphism
    if args.inner:
        inner = _load(args.inner, args)
        x = (inner.morphism, _seed(inner, args))
    else:
        x = (m, _seed(mf, args))
    report = check_mx(m, x, caps=caps)
    fmt = m.target.format
    print(f"verdict: {report.verdict}")
    if report.verdict is Verdict.IN_MX:
        for t in m.source:
            if t in report.witnesses:
                print(f"p_{t} = {fmt(report.witnesses[t])}")
    elif report.violation:
        a, b = report.violation
        print(f"violating pair: {a} {b}")
    if report.note:
        print(f"note: {report.note}")
    if report.verdict is Verdict.UNKNOWN:
        for t, cone in report.cones.items():
            state = "final" if cone.finalized else "partial"
            print(f"q_{t} = {fmt(cone.q)} ({state})")
    print(f"horizon: {report.horizon_used}")
    return {Verdict.IN_MX: 0, Verdict.NOT_IN_MX: 1, Verdict.UNKNOWN: 2}[report.verdict]


def cmd_synthesize(args):
    caps = _caps(args)
    if args.verify:
        caps = caps.with_(final_verify=args.verify)
    mf = _load(args.file, args)
    m, seed = mf.morphism, _seed(mf, args)
    base = MorphicSource(m, seed, caps=caps)
    if args.coding:
        g = _load(args.coding, args).morphism
        A = g.target
        rep = synthesize_coded(m, g, base, _letter(args.letter, A), _order(args.order, A), caps)
    else:
        A = m.source
        rep = synthesize(m, base, _letter(args.letter, A), _order(args.order, A), caps)
    text = format_rep(rep)
    print(text, end="")
    print(f"expansion: {rep.alphabet.format(expand(rep).prefix(SHOW))}")
    print(f"verified: {caps.final_verify} symbols")
    if args.emit:
        Path(args.emit).write_text(text)
    return 0


def cmd_returns(args):
    mf = _load(args.file, args)
    m, seed = mf.morphism, _seed(mf, args)
    A = m.source
    x = fixed_point(m, seed, cap=args.cap_symbols)
    if args.census:
        lengths = [int(k) for k in args.census.split(",") if k.strip()]
        census = derived_word_census(x, x, lengths, args.horizon)
        for row in census.rows:
            print(f"|u|={row.length} u={A.format(row.u)} returns={row.returns} distinct={row.distinct}")
        print("trajectory: " + " ".join(map(str, census.trajectory)))
        return 0
    if args.factor is None:
        raise UsageError("--factor is required unless --census is given")
    u = A.encode(args.factor)
    rs = return_words(x, u, args.horizon)
    for i, r in enumerate(rs.returns):
        print(f"{i + 1}: {A.format(r)}")
    print(f"occurrences: {rs.occurrences}")
    print(f"stable: {'yes' if rs.stable else 'no'}")
    if args.derive:
        text = x.prefix(args.horizon)
        start = text.find(u)
        y = text[start:]
        d = derive(x, y, u, rs, args.derive)
        print(f"derived: {rs.alphabet.format(d, ' ')}")
    return 0


def cmd_casestudy(args):
    report = run_casestudy(args.name, args.length, _caps(args))
    for line in report.lines(porcelain=args.porcelain):
        print(line)
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    p = Parser(prog="morphext", description="Morphic words and extremal words in their subshifts.")
    p.add_argument("--cap-symbols", type=int, default=DEFAULT_CAPS.symbols, help="max symbols of any prefix")
    p.add_argument("--cap-work", type=int, default=DEFAULT_CAPS.work, help="factor closure work budget")
    p.add_argument("--seed-token-prefix", default=DEFAULT_CAPS.fresh_prefix,
                   help="prefix reserved for generated letters")
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)

    def with_file(name, help_, erasing=False):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("--seed", help="seed letter (overrides the file)")
        if erasing:
            s.add_argument("--allow-erasing", action="store_true")
        return s

    s = with_file("expand", "print a prefix of the fixed point", erasing=True)
    s.add_argument("--length", type=int, default=SHOW)
    s.set_defaults(fn=cmd_expand)

    s = with_file("classify", "mortal, bounded and growing letters", erasing=True)
    s.set_defaults(fn=cmd_classify)

    s = with_file("fixedpoints", "finite fixed points", erasing=True)
    s.set_defaults(fn=cmd_fixedpoints)

    s = with_file("factors", "factors of a given length")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--absent", action="store_true", help="print minimal absent words up to the length")
    s.set_defaults(fn=cmd_factors)

    s = with_file("extremal", "prefix of the least word starting with a letter")
    s.add_argument("--letter", required=True)
    s.add_argument("--order", help="e.g. '1<0'; defaults to the alphabet order")
    s.add_argument("--length", type=int, default=SHOW)
    s.add_argument("--coding", help="morphism file applied to the fixed point")
    s.set_defaults(fn=cmd_extremal)

    s = with_file("check-mx", "decide the prefix-witness condition")
    s.add_argument("--inner", help="morphism file generating x (defaults to the file itself)")
    s.set_defaults(fn=cmd_check_mx)

    s = with_file("synthesize", "verified morphic representation of an extremal word")
    s.add_argument("--letter", required=True)
    s.add_argument("--order")
    s.add_argument("--coding", help="non-erasing morphism applied to the fixed point")
    s.add_argument("--verify", type=int, help="verification length")
    s.add_argument("--emit", help="write the representation to this path")
    s.set_defaults(fn=cmd_synthesize)

    s = with_file("returns", "return words and derived words")
    s.add_argument("--factor")
    s.add_argument("--horizon", type=int, default=4096)
    s.add_argument("--derive", type=int, metavar="N", help="print N derived letters")
    s.add_argument("--census", help="comma-separated prefix lengths")
    s.set_defaults(fn=cmd_returns)

    s = sub.add_parser("casestudy", help="run a named case study")
    s.add_argument("name", choices=sorted(CASES))
    s.add_argument("--length", type=int, default=5000)
    s.add_argument("--porcelain", action="store_true", help="stable tab-separated output")
    s.set_defaults(fn=cmd_casestudy)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, ParseError) as e:
        print(f"morphext: error: {e}", file=sys.stderr)
        return 1
    except (MorphicError, ValueError, KeyError) as e:
        print(f"morphext: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
