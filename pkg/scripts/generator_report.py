"""Tabulate generator strategies, attempt counts and ring-four hit rates.

Usage: python3 scripts/generator_report.py [--seeds 50] [--dims 2,3,4]
"""

import argparse
from collections import Counter, defaultdict

from ginv.cline import Family
from ginv.generate import GenSpec, generate


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=50)
    parser.add_argument("--dims", default="2,3,4")
    args = parser.parse_args()
    dims = [int(x) for x in args.dims.split(",")]

    for family in Family:
        strategies = Counter()
        attempts = defaultdict(list)
        ring_four = 0
        total = 0
        for dim in dims:
            for seed in range(args.seeds):
                g = generate(GenSpec(family, dim, seed))
                strategies[g.strategy] += 1
                attempts[g.strategy].append(g.attempts)
                ring_four += g.ring_four
                total += 1
        print(f"{family.value}: {total} instances, ring-four holds on {ring_four} ({100 * ring_four / total:.0f}%)")
        for name, count in sorted(strategies.items()):
            tries = attempts[name]
            print(f"    {name:<20} {count:>5}   mean attempts {sum(tries) / len(tries):7.1f}   max {max(tries)}")


if __name__ == "__main__":
    main()
