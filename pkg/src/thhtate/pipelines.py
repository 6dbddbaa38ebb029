"""Verification pipelines behind the command-line front end.

Each ``cmd_*`` function builds a :class:`~thhtate.report.Report` and never
prints; the CLI decides what to do with it.
"""

from __future__ import annotations

import logging
import random
from itertools import combinations

from . import __version__
from .fpgca import BigradedDimTable, Element, Window, basis_dense, poincare_table
from .hochschild import (
    bar_hh_oracle,
    bokstedt_e2,
    boundary_squares,
    hh_closed_form_table,
    hochschild_complex,
    sigma_name,
)
from .presets import Preset
from .report import Report, Verdict, Witness
from .singer import (
    s_shift,
    singer_index,
    singer_presentation,
    smash_name,
    verify_bijection,
)
from .tatess import (
    apply_differential,
    closed_regions,
    compare_tables,
    compute_page,
    d_squared_failures,
    einfty_closed_form,
    einfty_representatives,
    euler_characteristic,
    leibniz_split_failures,
    standard_d2,
    periodicity_failures,
    preset_e2,
    tate_period,
)

log = logging.getLogger(__name__)

DEFAULT_WINDOW = Window(-10, 0, 0, 40)


def _meta(command: str, preset: Preset, p: int, **extra) -> dict:
    meta = {"command": command, "preset": preset.label, "p": p, "version": __version__}
    meta.update(extra)
    return meta


def _table_verdict(name: str, left: BigradedDimTable, right: BigradedDimTable, detail: str) -> Verdict:
    mismatches = compare_tables(left, right)
    if not mismatches:
        return Verdict(name, True, detail)
    m = mismatches[0]
    return Verdict(name, False, f"{detail}; {len(mismatches)} mismatches", Witness(m.bidegree, m.left, m.right))


def cmd_hh(preset: Preset, p: int, max_degree: int, oracle: bool = False) -> Report:
    H = preset.homology(p)
    report = Report(_meta("hh", preset, p, max_degree=max_degree, oracle=oracle))
    closed = hh_closed_form_table(H, max_degree)
    report.add_table("hh_closed_form", closed)
    page = bokstedt_e2(H)
    report.add_table(
        "bokstedt_e2", poincare_table(page.algebra, Window(0, max(1, preset.n), 0, max_degree))
    )
    top = max(g.s for g in page.algebra.generators) if page.algebra.generators else 0
    report.add(
        Verdict(
            "bokstedt_collapses",
            page.collapses,
            page.reason,
            None if page.collapses else Witness((top, 0), top, 1),
        )
    )
    if oracle:
        bar = bar_hh_oracle(H, max_degree)
        report.add_table("hh_bar_oracle", bar)
        report.add(_table_verdict("oracle_matches_closed_form", bar, closed, "bar complex vs Koszul closed form"))
        bad = boundary_squares(hochschild_complex(H, max_degree))
        report.add(
            Verdict(
                "bar_boundary_squares_zero",
                not bad,
                f"{len(bad)} chain groups with b o b != 0",
                Witness(bad[0], 1, 0) if bad else None,
            )
        )
    return report


def _warn_large(E2, window: Window, threshold: int) -> None:
    for b in window:
        n = len(basis_dense(E2, b))
        if n > threshold:
            log.warning("basis at %s has %d monomials (threshold %d)", b, n, threshold)
            return


def cmd_tate(
    preset: Preset,
    p: int,
    window: Window = DEFAULT_WINDOW,
    threads: int = 1,
    seed: int = 0,
    samples: int = 500,
    basis_warning: int = 20_000,
) -> Report:
    E2 = preset_e2(preset, p)
    spec = standard_d2(preset, p)
    _warn_large(E2, window, basis_warning)
    page = compute_page(E2, spec, window, threads=threads)
    einf = poincare_table(einfty_closed_form(preset, p), page.safe)
    report = Report(
        _meta(
            "tate",
            preset,
            p,
            window=window.as_dict(),
            safe_window=page.safe.as_dict(),
            seed=seed,
            samples=samples,
        )
    )
    report.add_table("e2", page.e2)
    report.add_table("e3", page.dims)
    report.add_table("einfty", einf)

    bad = d_squared_failures(page)
    report.add(
        Verdict(
            "d2_squared_zero",
            not bad,
            f"checked {len(page.matrices)} composable bidegrees",
            Witness(bad[0][0], bad[0][1], 0) if bad else None,
        )
    )

    checked, failures = leibniz_split_failures(spec, E2, window, samples, seed)
    report.add(
        Verdict(
            "leibniz_factorization",
            not failures,
            f"{checked} random splits, {len(failures)} failures",
            Witness(failures[0], len(failures), 0) if failures else None,
        )
    )

    regions = closed_regions(page)
    euler_bad = None
    for region in regions:
        before = euler_characteristic(page.e2, region.bidegrees)
        after = euler_characteristic(page.dims, region.bidegrees)
        if before != after:
            euler_bad = Witness((region.t_min, region.t_max), before, after)
            break
    if not regions:
        euler_bad = Witness((page.safe.s_min, page.safe.t_min), 0, 1)
    report.add(
        Verdict(
            "euler_characteristic",
            euler_bad is None,
            f"{len(regions)} closed regions, largest spans t <= "
            f"{max((r.t_max for r in regions), default=None)}",
            euler_bad,
        )
    )

    period = tate_period(p)
    per = periodicity_failures(page.e2, period) + periodicity_failures(page.dims, period)
    report.add(
        Verdict(
            "t_periodicity",
            not per,
            f"period {period} in s on E2 and E3",
            Witness(per[0].bidegree, per[0].left, per[0].right) if per else None,
        )
    )

    report.add(_table_verdict("e3_equals_einfty", page.dims, einf, "E3 vs closed-form E-infinity on safe window"))

    reps = einfty_representatives(preset, p)
    non_cycles = [
        name for name, m in reps.items() if apply_differential(spec, Element.monomial(m, p), E2)
    ]
    report.add(
        Verdict(
            "einfty_generators_are_cycles",
            not non_cycles,
            ", ".join(non_cycles) or f"{len(reps)} representatives",
            Witness(E2.bidegree(reps[non_cycles[0]]), 1, 0) if non_cycles else None,
        )
    )
    return report


def formula_self_tests(preset: Preset, p: int, seed: int, trials: int = 100) -> list[Verdict]:
    rng = random.Random(seed)
    out = []

    bad = None
    for _ in range(trials):
        r = rng.randint(0, 6)
        L = sorted(rng.sample(range(1, 30), r))
        expected = 0
        for ell in L:
            expected -= (p - 1) * (2 * ell + 1)
        got = s_shift(L, p)
        if got != expected:
            bad = Witness((len(L), sum(L)), got, expected)
            break
    out.append(Verdict("s_shift_formula", bad is None, f"{trials} random sequences", bad))

    bad = None
    for _ in range(trials):
        k = rng.randint(-200, 200)
        d = rng.randint(-200, 200)
        got = singer_index(k, d, p)
        expected = k + (p - 1) * (k - d)
        if got != expected or singer_index(d, d, p) != d:
            bad = Witness((k, d), got, expected)
            break
    out.append(Verdict("singer_index_formula", bad is None, f"{trials} random (k, d)", bad))

    if preset.family == "X" and preset.n:
        # s_L is minus the internal degree gained by smashing each sigma b_l up p times
        target = singer_presentation(preset, p).algebra
        H = preset.homology(p)
        bad = None
        for r in range(preset.n + 1):
            for L in _subsets(preset.n, r):
                gap = 0
                for ell in L:
                    name = f"b{ell}"
                    gap += H.generator(name).t + 1 - target.generator(smash_name(sigma_name(name), p)).t
                if gap != s_shift(L, p):
                    bad = Witness((r, sum(L)), s_shift(L, p), gap)
        out.append(Verdict("s_shift_matches_degree_gap", bad is None, "all L within 1..n", bad))
    return out


def _subsets(n: int, r: int):
    return combinations(range(1, n + 1), r)


def cmd_singer(
    preset: Preset,
    p: int,
    max_degree: int,
    seed: int = 0,
    s_range: tuple[int, int] | None = None,
) -> Report:
    rep = verify_bijection(preset, p, max_degree, s_range)
    report = Report(
        _meta("singer", preset, p, max_degree=max_degree, s_range=list(rep.s_range), seed=seed)
    )
    window = Window(0, 0, 0, max_degree)
    report.add_table("source_counts", BigradedDimTable(window, {(0, d): c[0] for d, c in rep.counts.items()}))
    report.add_table("target_counts", BigradedDimTable(window, {(0, d): c[1] for d, c in rep.counts.items()}))
    diff = [(d, c) for d, c in rep.counts.items() if c[0] != c[1]]
    w = Witness((0, diff[0][0]), *diff[0][1]) if diff else None
    if not rep.bijective and w is None:
        w = Witness((0, 0), len(rep.failures), 0)
    report.add(Verdict("bijection", rep.bijective, f"{len(rep.failures)} failures", w))
    report.add(
        Verdict(
            "total_degree_preserved",
            rep.degree_preserving,
            "phi keeps s + t",
            None if rep.degree_preserving else Witness((0, 0), 1, 0),
        )
    )
    report.add(
        Verdict(
            "filtration_shift_per_exterior_factor",
            rep.shift_uniform,
            f"each exterior factor shifts s by {-(p - 1)}",
            None if rep.shift_uniform else Witness((0, 0), 1, 0),
        )
    )
    for v in formula_self_tests(preset, p, seed):
        report.add(v)
    return report


def cmd_report(
    preset: Preset,
    p: int,
    max_degree: int,
    window: Window = DEFAULT_WINDOW,
    threads: int = 1,
    seed: int = 0,
    samples: int = 500,
) -> Report:
    report = Report(
        _meta("report", preset, p, max_degree=max_degree, window=window.as_dict(), seed=seed)
    )
    report.merge(cmd_hh(preset, p, max_degree, oracle=True), "hh")
    report.merge(cmd_tate(preset, p, window, threads, seed, samples), "tate")
    report.merge(cmd_singer(preset, p, max_degree, seed), "singer")
    return report
