"""Compare the bar-complex HH oracle with the Koszul closed form for random polynomial algebras."""

import argparse
import random

from thhtate.fpgca import GeneratorSpec, make_presentation
from thhtate.hochschild import bar_hh_oracle, hh_closed_form_table
from thhtate.tatess import compare_tables


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--max-degree", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    failures = 0
    for _ in range(args.trials):
        p = rng.choice([2, 3, 5])
        degrees = sorted(rng.choice([2, 4, 6]) for _ in range(rng.randint(1, 3)))
        gens = [GeneratorSpec.polynomial(f"x{i}", (0, d)) for i, d in enumerate(degrees, 1)]
        A = make_presentation(p, gens)
        bad = compare_tables(bar_hh_oracle(A, args.max_degree), hh_closed_form_table(A, args.max_degree))
        failures += bool(bad)
        print(f"p={p} degrees={degrees} mismatches={len(bad)}")
    print(f"{failures} of {args.trials} algebras disagree")


if __name__ == "__main__":
    main()
