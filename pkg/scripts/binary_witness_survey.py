"""Random binary morphisms: binary witnesses against check_mx verdicts."""

import argparse
import random
from collections import Counter

from morphext import Morphism, Verdict, binary_mx_witnesses, check_mx


def random_binary(rng, max_len):
    while True:
        rules = {a: [rng.choice("01") for _ in range(rng.randint(1, max_len))] for a in "01"}
        if rules["0"] + rules["1"] == rules["1"] + rules["0"]:
            continue
        seeds = [a for a in "01" if len(rules[a]) >= 2 and rules[a][0] == a]
        if seeds:
            return rules, seeds[0]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = random.Random(args.seed)
    verdicts = Counter()
    agree = 0
    for _ in range(args.count):
        rules, seed = random_binary(rng, args.max_len)
        m = Morphism.from_rules(rules, "01")
        w = binary_mx_witnesses(m)
        r = check_mx(m, (m, seed))
        verdicts[str(r.verdict)] += 1
        if r.verdict is Verdict.IN_MX:
            agree += all(r.cones[t].q.startswith(w[t]) or w[t].startswith(r.cones[t].q) for t in r.cones)
    print(f"verdicts: {dict(verdicts)}")
    print(f"InMx runs whose cone prefixes extend the binary witnesses: {agree}/{verdicts['InMx']}")


if __name__ == "__main__":
    main()
