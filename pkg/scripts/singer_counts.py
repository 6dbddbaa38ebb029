"""Print source and target basis counts per total degree for the Singer comparison."""

import argparse

from thhtate.presets import Preset
from thhtate.singer import verify_bijection


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", default="X2")
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--max-degree", type=int, default=40)
    args = ap.parse_args()
    rep = verify_bijection(Preset.parse(args.preset), args.p, args.max_degree)
    print(f"s-range {rep.s_range}, bijective={rep.bijective}, ok={rep.ok}")
    for d, (src, tgt) in sorted(rep.counts.items()):
        print(f"{d:>4} {src:>6} {tgt:>6}")


if __name__ == "__main__":
    main()
