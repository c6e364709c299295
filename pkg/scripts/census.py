"""Derived-word census: distinct D_u(y) over prefixes u of y.

y is either the fixed point itself or one of its extremal words.
"""

import argparse

from morphext import MorphicSource, TotalOrder, derived_word_census
from morphext.casestudies import fixture
from morphext.lazy import from_word


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("name", help="fixture name, e.g. fibonacci")
    p.add_argument("--max-length", type=int, default=8)
    p.add_argument("--horizon", type=int, default=8192)
    p.add_argument("--letter", help="use the extremal word starting with this letter")
    p.add_argument("--order", help="order for --letter, e.g. 1<0")
    args = p.parse_args()
    m, seed = fixture(args.name)
    src = MorphicSource(m, seed)
    A = m.source
    x = src.word()
    y = x
    if args.letter:
        order = TotalOrder.natural(A) if args.order is None else TotalOrder.parse(args.order, A)
        y = from_word(src.greedy(A.code(args.letter), order, 4 * args.horizon), A)
    census = derived_word_census(x, y, range(1, args.max_length + 1), args.horizon)
    for row in census.rows:
        print(f"{row.length}\t{A.format(row.u, '')}\treturns={row.returns}\tdistinct={row.distinct}")
    print("trajectory:", " ".join(map(str, census.trajectory)))


if __name__ == "__main__":
    main()
