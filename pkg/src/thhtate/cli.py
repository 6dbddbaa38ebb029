"""Command-line front end.

Exit codes: 0 when every verdict passes, 1 on a failed verdict, 2 on a usage
or validation error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import AlgebraError
from .fpgca import Window
from .pipelines import DEFAULT_WINDOW, cmd_hh, cmd_report, cmd_singer, cmd_tate
from .presets import Preset
from .singer import singer_index

_RANGE_FLAGS = ("--s", "--t")


def _glue_ranges(argv: list[str]) -> list[str]:
    # argparse would read "-12:0" as an option flag
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _RANGE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _nk(text: str) -> tuple[int, int]:
    try:
        k, d = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("--nk expects k,d") from None
    return k, d


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thhtate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, preset_required=True):
        p.add_argument("--preset", required=preset_required, help="X<n>, T<n>, MU@<k> or BP@<k>")
        p.add_argument("--p", type=int, required=True, help="the prime")
        p.add_argument("--json", type=Path, help="write the JSON report here instead of stdout")
        p.add_argument("--csv", type=Path, help="also export every table as CSV")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=_u64, default=0, help="seed for randomized checks")

    def window_args(p):
        p.add_argument("--s", default=f"{DEFAULT_WINDOW.s_min}:{DEFAULT_WINDOW.s_max}", help="inclusive s range a:b")
        p.add_argument("--t", default=f"{DEFAULT_WINDOW.t_min}:{DEFAULT_WINDOW.t_max}", help="inclusive t range c:d")
        p.add_argument("--samples", type=int, default=500, help="random Leibniz splits")

    hh = sub.add_parser("hh", help="Hochschild homology / Bokstedt E2")
    common(hh)
    hh.add_argument("--max-degree", type=int, default=12)
    hh.add_argument("--oracle", action="store_true", help="cross-check with the bar complex")

    tate = sub.add_parser("tate", help="C_p-Tate spectral sequence E2 -> E3")
    common(tate)
    window_args(tate)

    singer = sub.add_parser("singer", help="Singer construction bijection")
    common(singer, preset_required=False)
    singer.add_argument("--max-degree", type=int, default=20)
    singer.add_argument("--nk", type=_nk, help="print N(k,d) = p(k-d)+d for k,d")

    report = sub.add_parser("report", help="all pipelines in one report")
    common(report)
    window_args(report)
    report.add_argument("--max-degree", type=int, default=12)
    return parser


def run(args: argparse.Namespace) -> int:
    if args.command == "singer" and args.nk is not None:
        k, d = args.nk
        print(f"N={singer_index(k, d, args.p)}")
        if args.preset is None:
            return 0
    if args.preset is None:
        raise AlgebraError("--preset is required")
    preset = Preset.parse(args.preset)
    if args.threads < 1:
        raise AlgebraError("--threads must be positive")
    if getattr(args, "max_degree", 0) < 0:
        raise AlgebraError("--max-degree must be non-negative")

    if args.command == "hh":
        rep = cmd_hh(preset, args.p, args.max_degree, oracle=args.oracle)
    elif args.command == "tate":
        window = Window.parse(args.s, args.t)
        rep = cmd_tate(preset, args.p, window, args.threads, args.seed, args.samples)
    elif args.command == "singer":
        rep = cmd_singer(preset, args.p, args.max_degree, args.seed)
    else:
        window = Window.parse(args.s, args.t)
        rep = cmd_report(preset, args.p, args.max_degree, window, args.threads, args.seed, args.samples)

    if args.json is not None:
        args.json.write_text(rep.to_json())
        print(rep.summary())
    else:
        sys.stdout.write(rep.to_json())
    if args.csv is not None:
        args.csv.write_text(rep.to_csv())
    return 0 if rep.passed else 1


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_glue_ranges(argv))
    try:
        return run(args)
    except (AlgebraError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
