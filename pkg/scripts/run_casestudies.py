"""Run every named case study at a given length and print the reports."""

import argparse
import sys

from morphext.casestudies import CASES, run_casestudy


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--length", type=int, default=5000)
    p.add_argument("--porcelain", action="store_true")
    p.add_argument("names", nargs="*", default=list(CASES))
    args = p.parse_args()
    code = 0
    for name in args.names:
        report = run_casestudy(name, args.length)
        print("\n".join(report.lines(porcelain=args.porcelain)))
        code = max(code, report.exit_code)
    return code


if __name__ == "__main__":
    sys.exit(main())
