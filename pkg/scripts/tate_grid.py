"""Run the E2 -> E3 computation over a grid of presets and primes and print timings."""

import argparse
import time

from thhtate.fpgca import Window, poincare_table
from thhtate.presets import Preset
from thhtate.tatess import compare_tables, compute_page, einfty_closed_form, preset_e2, standard_d2


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--presets", nargs="+", default=["X1", "X2", "X3", "T1", "T2"])
    ap.add_argument("--primes", nargs="+", type=int, default=[2, 3, 5])
    ap.add_argument("--s", default="-12:0")
    ap.add_argument("--t", default="0:60")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    window = Window.parse(args.s, args.t)
    print(f"{'preset':>6} {'p':>3} {'safe':>6} {'E2':>8} {'E3':>8} {'mism':>5} {'sec':>6}")
    for label in args.presets:
        preset = Preset.parse(label)
        for p in args.primes:
            start = time.perf_counter()
            page = compute_page(preset_e2(preset, p), standard_d2(preset, p), window, args.threads)
            einf = poincare_table(einfty_closed_form(preset, p), page.safe)
            bad = compare_tables(page.dims, einf)
            elapsed = time.perf_counter() - start
            e2_total = page.e2.restrict(page.safe).total()
            print(
                f"{label:>6} {p:>3} {len(page.safe):>6} {e2_total:>8} "
                f"{page.dims.total():>8} {len(bad):>5} {elapsed:>6.2f}"
            )


if __name__ == "__main__":
    main()
