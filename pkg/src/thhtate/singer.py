"""Singer-construction side of the comparison.

The Singer presentation has the Tate classes together with p-fold smash
powers ``x^(x)p`` and ``(sigma x)^(x)p`` of the THH generators.  :func:`phi`
sends the E-infinity generators ``x^p`` and ``x^{p-1} sigma x`` to
``x^(x)p`` and ``t^m (sigma x)^(x)p``; the power ``m`` is whatever keeps the
total degree fixed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .errors import NonIncreasing, WindowTooSmall
from .fpgca import (
    EXTERIOR,
    AlgebraPresentation,
    GeneratorSpec,
    Monomial,
    PrimeField,
    basis,
    make_presentation,
    multiply_monomials,
)
from .hochschild import sigma_name
from .presets import Preset
from .tatess import einfty_closed_form, einfty_names, tate_coefficients


def smash_name(name: str, p: int) -> str:
    return f"{name}^x{p}"


@dataclass(frozen=True)
class SingerPresentation:
    preset: Preset
    p: int
    algebra: AlgebraPresentation


def singer_presentation(preset: Preset, p: int) -> SingerPresentation:
    polys, exts = [], []
    for g in preset.generators(p):
        polys.append(GeneratorSpec.polynomial(smash_name(g.name, p), (0, p * g.t)))
        exts.append(
            GeneratorSpec.exterior(smash_name(sigma_name(g.name), p), (0, p * (g.t + 1)))
        )
    algebra = tate_coefficients(p).tensor(make_presentation(p, polys + exts))
    return SingerPresentation(preset, p, algebra)


def t_power(p: int) -> int:
    """Power of t attached to each exterior factor: ``(p-1)/2`` for odd p, 1 at p = 2."""
    PrimeField(p)
    return 1 if p == 2 else (p - 1) // 2


@dataclass(frozen=True)
class SingerMap:
    source: AlgebraPresentation
    target: SingerPresentation
    rule: tuple[tuple[str, Monomial], ...]

    def image(self, name: str) -> Monomial:
        for k, v in self.rule:
            if k == name:
                return v
        raise KeyError(name)

    @property
    def exterior_shift(self) -> int:
        """Filtration change contributed by one exterior factor."""
        return t_power(self.target.p) * tate_coefficients(self.target.p).generator("t").s


def singer_map(preset: Preset, p: int) -> SingerMap:
    source = einfty_closed_form(preset, p)
    target = singer_presentation(preset, p)
    m = t_power(p)
    rule = [("t", Monomial.of(t=1))]
    if p > 2:
        rule.append(("h", Monomial.of(h=1)))
    for name in preset.generator_names():
        poly, ext = einfty_names(name, p)
        rule.append((poly, Monomial.of({smash_name(name, p): 1})))
        rule.append((ext, Monomial.of({"t": m, smash_name(sigma_name(name), p): 1})))
    return SingerMap(source, target, tuple(rule))


def phi(m: Monomial, smap: SingerMap) -> Monomial:
    """Image of a source basis monomial; multiplicative on generators, signs dropped."""
    smap.source.dense(m)
    exps: Counter = Counter()
    for name, e in m.exponents:
        for k, v in smap.image(name).exponents:
            exps[k] += e * v
    out = Monomial.of(dict(exps))
    smap.target.algebra.dense(out)
    return out


def s_shift(L: Sequence[int], p: int) -> int:
    """``-(p-1)(2 l_1 + ... + 2 l_r + r)`` for a strictly increasing sequence ``L``."""
    L = list(L)
    if any(x < 1 for x in L):
        raise NonIncreasing(f"entries must be >= 1, got {L}")
    if any(a >= b for a, b in zip(L, L[1:])):
        raise NonIncreasing(f"sequence {L} is not strictly increasing")
    return -(p - 1) * (2 * sum(L) + len(L))


def singer_index(k: int, d: int, p: int) -> int:
    """Filtration index ``p(k - d) + d`` paired with filtration ``k`` in total degree ``d``."""
    return p * (k - d) + d


# ---------------------------------------------------------------------------
# bijection check

@dataclass
class BijectionReport:
    preset: Preset
    p: int
    max_degree: int
    s_range: tuple[int, int]
    counts: dict = field(default_factory=dict)  # total degree -> (source, target)
    degree_preserving: bool = True
    shift_uniform: bool = True
    injective: bool = True
    surjective: bool = True
    failures: list = field(default_factory=list)

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    @property
    def ok(self) -> bool:
        return self.bijective and self.degree_preserving and self.shift_uniform


def _exterior_count(m: Monomial, A: AlgebraPresentation) -> int:
    return sum(e for name, e in m.exponents if A.generator(name).kind == EXTERIOR and name != "h")


def verify_bijection(
    preset: Preset, p: int, max_degree: int, s_range: tuple[int, int] | None = None
) -> BijectionReport:
    """Check that :func:`phi` is a total-degree-preserving bijection of monomial bases.

    Source monomials are those with total degree in ``[0, max_degree]`` and
    filtration in ``s_range`` (default ``[-max_degree, max_degree]``).  A target
    monomial with ``r`` smash-exterior factors is expected exactly when its
    filtration, moved back by ``r`` exterior shifts, lands in ``s_range``.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    smap = singer_map(preset, p)
    lo, hi = s_range if s_range is not None else (-max_degree, max_degree)
    step = smap.exterior_shift
    if hi - lo + 1 < abs(step):
        raise WindowTooSmall(f"s-range [{lo}, {hi}] is narrower than one exterior shift {step}")
    src_alg = smap.source
    tgt_alg = smap.target.algebra
    rep = BijectionReport(preset, p, max_degree, (lo, hi))
    max_ext = preset.n
    seen: dict = {}
    for total in range(max_degree + 1):
        sources = []
        for s in range(lo, hi + 1):
            sources.extend(basis(src_alg, (s, total - s)))
        targets = set()
        for s in range(lo + max_ext * step, hi + 1):
            for m in basis(tgt_alg, (s, total - s)):
                r = _exterior_count(m, tgt_alg)
                if lo <= s - r * step <= hi:
                    targets.add(m)
        images = set()
        for m in sources:
            img = phi(m, smap)
            if tgt_alg.total_degree(img) != total:
                rep.degree_preserving = False
                rep.failures.append(("degree", str(m), str(img)))
            r = _exterior_count(m, src_alg)
            if tgt_alg.bidegree(img)[0] - src_alg.bidegree(m)[0] != r * step:
                rep.shift_uniform = False
                rep.failures.append(("shift", str(m), str(img)))
            if img in seen:
                rep.injective = False
                rep.failures.append(("collision", str(m), str(seen[img])))
            seen[img] = m
            images.add(img)
        if images != targets:
            missing = sorted(targets - images)
            extra = sorted(images - targets)
            rep.failures.append(("mismatch", total, [str(x) for x in missing + extra][:5]))
            rep.surjective = False
        rep.counts[total] = (len(sources), len(targets))
    return rep


def phi_is_multiplicative(m1: Monomial, m2: Monomial, smap: SingerMap) -> bool:
    """``phi(m1 m2) == phi(m1) phi(m2)`` up to sign, for a nonvanishing product."""
    src = multiply_monomials(m1, m2, smap.source)
    if src is None:
        return True
    tgt = multiply_monomials(phi(m1, smap), phi(m2, smap), smap.target.algebra)
    return tgt is not None and tgt[1] == phi(src[1], smap)
