"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import random
import subprocess
import sys
import time
from functools import lru_cache

import pytest

from thhtate.fpgca import GeneratorSpec, Window, make_presentation, poincare_table
from thhtate.hochschild import bar_hh_oracle, hh_closed_form_table
from thhtate.presets import Preset
from thhtate.singer import s_shift, singer_index, verify_bijection
from thhtate.tatess import (
    closed_regions,
    compare_tables,
    compute_page,
    d_squared_failures,
    einfty_closed_form,
    euler_characteristic,
    leibniz_split_failures,
    periodicity_failures,
    preset_e2,
    standard_d2,
    tate_period,
)

WINDOW = Window(-12, 0, 0, 60)
X_CASES = [(f"X{n}", p) for n in (1, 2, 3) for p in (2, 3)]
T_CASES = [(f"T{n}", p) for n in (1, 2) for p in (2, 3)]
SAMPLES = 500


@lru_cache(maxsize=None)
def page_for(label, p):
    preset = Preset.parse(label)
    start = time.perf_counter()
    page = compute_page(preset_e2(preset, p), standard_d2(preset, p), WINDOW)
    return page, time.perf_counter() - start


def _einfty_mismatches(cases):
    bad = []
    for label, p in cases:
        page, elapsed = page_for(label, p)
        einf = poincare_table(einfty_closed_form(Preset.parse(label), p), page.safe)
        bad.extend((label, p, m) for m in compare_tables(page.dims, einf))
    return bad


@pytest.mark.criterion(1)
def test_hochschild_oracle_equivalence(acceptance):
    start = time.perf_counter()
    bad = []
    for degrees in ((2,), (2, 4)):
        for p in (2, 3):
            gens = [GeneratorSpec.polynomial(f"b{i}", (0, d)) for i, d in enumerate(degrees, 1)]
            A = make_presentation(p, gens)
            oracle = bar_hh_oracle(A, 12)
            closed = hh_closed_form_table(A, 12)
            bad.extend((degrees, p, m) for m in compare_tables(oracle, closed))
    elapsed = time.perf_counter() - start
    acceptance.record(
        not bad and elapsed < 120,
        f"bar oracle vs closed form, 4 cases, degree <= 12, {len(bad)} mismatches, {elapsed:.1f}s",
    )


@pytest.mark.criterion(2)
def test_tate_x_presets(acceptance):
    bad = _einfty_mismatches(X_CASES)
    slowest = max(page_for(label, p)[1] for label, p in X_CASES)
    acceptance.record(
        not bad and slowest < 60,
        f"E3 vs E-infinity for X1..X3, p in {{2,3}}, {len(bad)} mismatches, slowest {slowest:.1f}s",
    )


@pytest.mark.criterion(3)
def test_tate_t_presets(acceptance):
    bad = _einfty_mismatches(T_CASES)
    acceptance.record(not bad, f"E3 vs E-infinity for T1, T2, p in {{2,3}}, {len(bad)} mismatches")


@pytest.mark.criterion(4)
def test_differential_soundness(acceptance):
    dd_bad = 0
    leibniz_bad = 0
    min_checked = None
    for i, (label, p) in enumerate(X_CASES + T_CASES):
        page, _ = page_for(label, p)
        dd_bad += len(d_squared_failures(page))
        checked, failures = leibniz_split_failures(page.spec, page.algebra, WINDOW, SAMPLES, seed=i)
        leibniz_bad += len(failures)
        min_checked = checked if min_checked is None else min(min_checked, checked)
    acceptance.record(
        dd_bad == 0 and leibniz_bad == 0 and min_checked >= SAMPLES,
        f"d2 o d2 nonzero at {dd_bad} bidegrees; {leibniz_bad} Leibniz failures over "
        f">= {min_checked} splits per run",
    )


@pytest.mark.criterion(5)
def test_structural_invariants(acceptance):
    per_bad = 0
    euler_bad = 0
    regions = 0
    for label, p in X_CASES + T_CASES:
        page, _ = page_for(label, p)
        period = tate_period(p)
        per_bad += len(periodicity_failures(page.e2, period)) + len(periodicity_failures(page.dims, period))
        found = closed_regions(page)
        regions += len(found)
        for r in found:
            if euler_characteristic(page.e2, r.bidegrees) != euler_characteristic(page.dims, r.bidegrees):
                euler_bad += 1
    acceptance.record(
        per_bad == 0 and euler_bad == 0 and regions > 0,
        f"{per_bad} periodicity failures; Euler characteristic changed on {euler_bad} of {regions} closed regions",
    )


@pytest.mark.criterion(6)
def test_singer_bijection(acceptance):
    bad = []
    for n in (1, 2):
        for p in (2, 3):
            rep = verify_bijection(Preset("X", n), p, 40)
            if not rep.ok:
                bad.append((n, p, rep.failures[:1]))
    rng = random.Random(0)
    formula_bad = 0
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7])
        L = sorted(rng.sample(range(1, 50), rng.randint(0, 6)))
        if s_shift(L, p) != -(p - 1) * sum(2 * ell + 1 for ell in L):
            formula_bad += 1
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7])
        k, d = rng.randint(-300, 300), rng.randint(-300, 300)
        if singer_index(k, d, p) != p * (k - d) + d:
            formula_bad += 1
    acceptance.record(
        not bad and formula_bad == 0,
        f"phi bijective with shift -(p-1) per exterior factor for X1, X2, p in {{2,3}}, degree <= 40; "
        f"{formula_bad} formula failures over 200 random inputs",
    )


@pytest.mark.criterion(7)
def test_determinism(acceptance, tmp_path):
    outputs = []
    for i in range(2):
        path = tmp_path / f"run{i}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "thhtate.cli", "tate", "--preset", "X2", "--p", "3", "--json", str(path)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(path.read_bytes())
    acceptance.record(
        outputs[0] == outputs[1],
        f"two runs of tate --preset X2 --p 3 give {'identical' if outputs[0] == outputs[1] else 'different'} "
        f"JSON ({len(outputs[0])} bytes)",
    )
