"""The homological C_p-Tate spectral sequence of THH of X(n) and T(n).

The E2-page is ``H^(C_p; F_p) (x) H_*(THH)``.  The d2 differential is fixed
on generators (``b_i -> t^2 sigma b_i`` at p = 2, ``b_i -> t sigma b_i`` for odd
p, zero elsewhere) and extended to every monomial by the Leibniz rule.  E3 is
computed degreewise by exact rank computations and compared against the
closed-form E-infinity presentation.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .errors import DisjointWindows, NameClash, WindowTooSmall
from .fpgca import (
    EXTERIOR,
    LAURENT,
    POLYNOMIAL,
    AlgebraPresentation,
    Bidegree,
    BigradedDimTable,
    Element,
    GeneratorSpec,
    Monomial,
    PrimeField,
    Window,
    basis_dense,
    make_presentation,
    mul_dense,
    mul_sparse,
    poincare_table,
)
from .hochschild import hh_closed_form, sigma_name
from .linalg import SparseMatrix, matmul_mod, rank_nullity
from .presets import Preset

TATE_NAMES = ("h", "t")


def tate_coefficients(p: int) -> AlgebraPresentation:
    """Tate cohomology of C_p with F_p coefficients, homologically graded."""
    PrimeField(p)
    if p == 2:
        return make_presentation(2, [GeneratorSpec.laurent("t", (-1, 0))])
    return make_presentation(
        p, [GeneratorSpec.exterior("h", (-1, 0)), GeneratorSpec.laurent("t", (-2, 0))]
    )


def tate_e2(H: AlgebraPresentation, p: int) -> AlgebraPresentation:
    if H.p != p:
        raise ValueError(f"homology presentation is over F_{H.p}, not F_{p}")
    clash = [n for n in H.names if n in TATE_NAMES]
    if clash:
        raise NameClash(f"reserved Tate class names used by the input: {clash}")
    return tate_coefficients(p).tensor(H)


def preset_e2(preset: Preset, p: int) -> AlgebraPresentation:
    return tate_e2(hh_closed_form(preset.homology(p)), p)


@dataclass(frozen=True)
class DifferentialSpec:
    """Page index ``r`` and the values of ``d_r`` on algebra generators.

    ``d_r`` moves ``(s, t)`` to ``(s - r, t + r - 1)``.  Generators missing from
    ``values`` are cycles.
    """

    r: int
    values: tuple[tuple[str, Element], ...] = ()

    @classmethod
    def from_mapping(cls, r: int, values: Mapping[str, Element]) -> "DifferentialSpec":
        return cls(r, tuple(sorted((k, v) for k, v in values.items() if v)))

    def shift(self, bidegree: Bidegree) -> Bidegree:
        s, t = bidegree
        return s - self.r, t + self.r - 1

    def source(self, bidegree: Bidegree) -> Bidegree:
        s, t = bidegree
        return s + self.r, t - self.r + 1

    def value(self, name: str) -> Element:
        for k, v in self.values:
            if k == name:
                return v
        return Element()

    def validate(self, A: AlgebraPresentation) -> None:
        for name, v in self.values:
            g = A.generator(name)
            want = self.shift(g.bidegree)
            for m, _ in v.terms:
                got = A.bidegree(m)
                if got != want:
                    raise ValueError(
                        f"d_{self.r}({name}) has a term {m} in {got}, expected {want}"
                    )


def standard_d2(preset: Preset, p: int) -> DifferentialSpec:
    """d2 on the E2-page of ``preset``; the odd-p unit is normalised to 1."""
    PrimeField(p)
    tpow = 2 if p == 2 else 1
    values = {
        name: Element.monomial(Monomial.of({"t": tpow, sigma_name(name): 1}), p)
        for name in preset.generator_names()
    }
    return DifferentialSpec.from_mapping(2, values)


# ---------------------------------------------------------------------------
# Leibniz extension

class _Derivation:
    """Memoised Leibniz extension of a :class:`DifferentialSpec` over ``A``.

    Elements are dicts ``{dense exponent vector: coefficient}``.
    """

    def __init__(self, spec: DifferentialSpec, A: AlgebraPresentation):
        spec.validate(A)
        self.spec = spec
        self.A = A
        self.n = len(A.generators)
        self.gen_values = []
        for g in A.generators:
            v = spec.value(g.name)
            self.gen_values.append({A.dense(m): c for m, c in v.terms})
        self._power_cache: dict = {}
        self._mono_cache: dict = {}

    def _unit_vec(self, i: int, e: int) -> tuple:
        vec = [0] * self.n
        vec[i] = e
        return tuple(vec)

    def power(self, i: int, e: int) -> dict:
        """``d(g_i^e)``."""
        key = (i, e)
        hit = self._power_cache.get(key)
        if hit is not None:
            return hit
        A = self.A
        if e == 0:
            out: dict = {}
        elif e == 1:
            out = dict(self.gen_values[i])
        elif e > 1:
            # d(g * g^{e-1}) = d(g) g^{e-1} + (-1)^{|g|} g d(g^{e-1})
            g = {self._unit_vec(i, 1): 1}
            rest = {self._unit_vec(i, e - 1): 1}
            sign = -1 if A._parity[i] else 1
            out = mul_sparse(A, self.gen_values[i], rest)
            for w, c in mul_sparse(A, g, self.power(i, e - 1)).items():
                out[w] = (out.get(w, 0) + sign * c) % A.p
            out = {w: c for w, c in out.items() if c}
        else:
            # g^e g^{-e} = 1 gives d(g^e) = -(-1)^{|g^e|} g^e d(g^{-e}) g^e
            ge = {self._unit_vec(i, e): 1}
            sign = -1 if (A._parity[i] * e) % 2 else 1
            tmp = mul_sparse(A, ge, self.power(i, -e))
            out = {w: (-sign * c) % A.p for w, c in mul_sparse(A, tmp, ge).items()}
            out = {w: c for w, c in out.items() if c}
        self._power_cache[key] = out
        return out

    def monomial(self, vec: tuple) -> dict:
        """``d`` of the canonical monomial ``vec``, peeling factors in generator order."""
        hit = self._mono_cache.get(vec)
        if hit is not None:
            return hit
        A = self.A
        support = [i for i, e in enumerate(vec) if e]
        if not support:
            out: dict = {}
        elif len(support) == 1:
            i = support[0]
            out = self.power(i, vec[i])
        else:
            i = support[0]
            head = self._unit_vec(i, vec[i])
            tail = tuple(0 if j == i else e for j, e in enumerate(vec))
            sign = -1 if (A._parity[i] * vec[i]) % 2 else 1
            out = mul_sparse(A, self.power(i, vec[i]), {tail: 1})
            for w, c in mul_sparse(A, {head: 1}, self.monomial(tail)).items():
                out[w] = (out.get(w, 0) + sign * c) % A.p
            out = {w: c for w, c in out.items() if c}
        self._mono_cache[vec] = out
        return out

    def element(self, x: Mapping) -> dict:
        p = self.A.p
        out: dict = {}
        for u, a in x.items():
            for w, c in self.monomial(u).items():
                out[w] = (out.get(w, 0) + a * c) % p
        return {w: c for w, c in out.items() if c}

    def matrix(self, bidegree: Bidegree) -> SparseMatrix:
        """Matrix of ``d`` from ``bidegree`` to ``shift(bidegree)`` in the monomial bases."""
        src = basis_dense(self.A, bidegree)
        tgt = basis_dense(self.A, self.spec.shift(bidegree))
        index = {v: i for i, v in enumerate(tgt)}
        cols = []
        for v in src:
            cols.append({index[w]: c for w, c in self.monomial(v).items()})
        return SparseMatrix(len(tgt), len(src), cols)


@lru_cache(maxsize=64)
def _derivation(spec: DifferentialSpec, A: AlgebraPresentation) -> _Derivation:
    return _Derivation(spec, A)


def leibniz_extend(spec: DifferentialSpec, m: Monomial, A: AlgebraPresentation) -> Element:
    """``d(m)`` from the generator values via ``d(xy) = d(x) y + (-1)^{|x|} x d(y)``."""
    der = _derivation(spec, A)
    out = der.monomial(A.dense(m))
    return Element.from_mapping({A.sparse(w): c for w, c in out.items()}, A.p)


def apply_differential(spec: DifferentialSpec, x: Element, A: AlgebraPresentation) -> Element:
    der = _derivation(spec, A)
    out = der.element({A.dense(m): c for m, c in x.terms})
    return Element.from_mapping({A.sparse(w): c for w, c in out.items()}, A.p)


def differential_matrix(spec: DifferentialSpec, A: AlgebraPresentation, bidegree: Bidegree) -> SparseMatrix:
    return _derivation(spec, A).matrix(tuple(bidegree))


# ---------------------------------------------------------------------------
# pages

@dataclass
class Page:
    """One turn of the spectral sequence over a window.

    ``e2`` covers the requested window.  ``dims`` (the next page) covers only
    the safe rectangle: bidegrees whose incoming source and outgoing target
    both lie in the requested window.
    """

    algebra: AlgebraPresentation
    spec: DifferentialSpec
    window: Window
    e2: BigradedDimTable
    dims: BigradedDimTable
    matrices: dict = field(default_factory=dict, repr=False)
    ranks: dict = field(default_factory=dict, repr=False)

    @property
    def safe(self) -> Window:
        return self.dims.window


def safe_window(window: Window, r: int) -> Window:
    inner = window.shrink(r, r - 1)
    if inner is None:
        raise WindowTooSmall(
            f"window {window.as_dict()} has no bidegree whose d_{r} source and target both fit"
        )
    return inner


def compute_page(
    E2: AlgebraPresentation, spec: DifferentialSpec, window: Window, threads: int = 1
) -> Page:
    safe = safe_window(window, spec.r)
    der = _derivation(spec, E2)
    p = E2.p
    sources = [b for b in window if spec.shift(b) in window]

    def work(b):
        m = der.matrix(b)
        return b, m, rank_nullity(m, p)[0]

    if threads > 1:
        # warm the per-generator caches before fanning out
        for b in sources[:1]:
            der.matrix(b)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, sources))
    else:
        results = [work(b) for b in sources]
    matrices = {b: m for b, m, _ in results}
    ranks = {b: r for b, _, r in results}
    e2 = poincare_table(E2, window)
    dims = {}
    for b in safe:
        d = e2[b] - ranks[b] - ranks[spec.source(b)]
        if d < 0:
            raise ArithmeticError(f"negative homology at {b}; d o d is probably nonzero")
        dims[b] = d
    return Page(E2, spec, window, e2, BigradedDimTable(safe, dims), matrices, ranks)


def page_homology(E2: AlgebraPresentation, spec: DifferentialSpec, window: Window) -> BigradedDimTable:
    """Dimensions of the next page at every safe bidegree of ``window``."""
    return compute_page(E2, spec, window).dims


def d_squared_failures(page: Page) -> list[tuple[Bidegree, int]]:
    """``(bidegree, nonzeros)`` wherever ``d o d`` is nonzero; empty means sound."""
    bad = []
    p = page.algebra.p
    for b, first in page.matrices.items():
        second = page.matrices.get(page.spec.shift(b))
        if second is None:
            continue
        nnz = matmul_mod(second, first, p).nnz()
        if nnz:
            bad.append((b, nnz))
    return bad


# ---------------------------------------------------------------------------
# closed form

def _power_name(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def einfty_names(name: str, p: int) -> tuple[str, str]:
    """Names of the polynomial and exterior E-infinity generators built from ``name``."""
    return _power_name(name, p), f"{_power_name(name, p - 1)}*{sigma_name(name)}"


def einfty_closed_form(preset: Preset, p: int) -> AlgebraPresentation:
    """``Tate coefficients (x) P(x_i^p) (x) E(x_i^{p-1} sigma x_i)``."""
    gens = []
    for g in preset.generators(p):
        poly, ext = einfty_names(g.name, p)
        gens.append(GeneratorSpec.polynomial(poly, (0, p * g.t)))
        gens.append(GeneratorSpec.exterior(ext, (0, (p - 1) * g.t + g.t + 1)))
    ordered = [g for g in gens if g.kind == POLYNOMIAL] + [g for g in gens if g.kind == EXTERIOR]
    return tate_coefficients(p).tensor(make_presentation(p, ordered))


def einfty_representatives(preset: Preset, p: int) -> dict[str, Monomial]:
    """E2 monomials representing each E-infinity generator."""
    out = {"t": Monomial.of(t=1)}
    if p > 2:
        out["h"] = Monomial.of(h=1)
    for name in preset.generator_names():
        poly, ext = einfty_names(name, p)
        out[poly] = Monomial.of({name: p})
        out[ext] = Monomial.of({name: p - 1, sigma_name(name): 1})
    return out


@dataclass(frozen=True)
class Mismatch:
    bidegree: Bidegree
    left: int
    right: int


def compare_tables(a: BigradedDimTable, b: BigradedDimTable) -> list[Mismatch]:
    """Bidegrees of the common window where the two tables disagree."""
    common = a.window.intersect(b.window)
    if common is None:
        raise DisjointWindows(f"{a.window.as_dict()} and {b.window.as_dict()} do not overlap")
    return [Mismatch(x, a[x], b[x]) for x in common if a[x] != b[x]]


# ---------------------------------------------------------------------------
# structural checks

def tate_period(p: int) -> int:
    """s-period of multiplication by the invertible class t."""
    return 1 if p == 2 else 2


def periodicity_failures(table: BigradedDimTable, period: int) -> list[Mismatch]:
    out = []
    for (s, t), d in table.items():
        other = (s - period, t)
        if other in table and table[other] != d:
            out.append(Mismatch((s, t), d, table[other]))
    return out


@dataclass(frozen=True)
class Region:
    """Bidegrees of a safe window on the d_r-lines ``u_min <= (r-1)s + rt <= u_max``
    with ``t_min <= t <= t_max``."""

    bidegrees: tuple[Bidegree, ...]
    t_min: int
    t_max: int
    u_min: int
    u_max: int


def _line(r: int, b: Bidegree) -> int:
    s, t = b
    return (r - 1) * s + r * t


def closed_regions(page: Page) -> list[Region]:
    """Regions of the safe window with no nonzero d_r arrow crossing their boundary.

    Each candidate is a band of rows ``[t_min, t]`` cut down to the d_r-lines
    that stay inside the safe s-range across the whole band; it is kept when
    every arrow entering or leaving it has rank zero.
    """
    r = page.spec.r
    safe = page.safe
    t0 = safe.t_min
    out = []
    for t1 in range(t0, safe.t_max + 1):
        u_min = (r - 1) * safe.s_min + r * t1
        u_max = (r - 1) * safe.s_max + r * t0
        if u_min > u_max:
            break
        members = tuple(
            b for b in safe if t0 <= b[1] <= t1 and u_min <= _line(r, b) <= u_max
        )
        if members and _is_closed(page, set(members)):
            out.append(Region(members, t0, t1, u_min, u_max))
    return out


def _is_closed(page: Page, members: set) -> bool:
    spec = page.spec
    for b in members:
        for src, tgt in ((b, spec.shift(b)), (spec.source(b), b)):
            inside = src in members and tgt in members
            if inside:
                continue
            rank = page.ranks.get(src)
            if rank is None or rank:
                return False
    return True


def euler_characteristic(table: BigradedDimTable, bidegrees) -> int:
    return sum((-1) ** ((s + t) % 2) * table[(s, t)] for s, t in bidegrees)


# ---------------------------------------------------------------------------
# randomized Leibniz checks

def random_split(vec: tuple, A: AlgebraPresentation, rng: random.Random) -> tuple[tuple, tuple]:
    left, right = [], []
    for g, e in zip(A.generators, vec):
        if g.kind == LAURENT:
            a = rng.randint(-3, 3) + (e // 2)
        elif e == 0:
            a = 0
        else:
            a = rng.randint(0, e)
        left.append(a)
        right.append(e - a)
    return tuple(left), tuple(right)


def leibniz_split_failures(
    spec: DifferentialSpec,
    A: AlgebraPresentation,
    window: Window,
    samples: int,
    seed: int = 0,
) -> tuple[int, list[Bidegree]]:
    """Check ``d(m1 m2) = d(m1) m2 + (-1)^{|m1|} m1 d(m2)`` on random splits.

    Returns the number of splits checked and the bidegrees of failures.
    """
    rng = random.Random(seed)
    der = _derivation(spec, A)
    p = A.p
    pool = [b for b in window if basis_dense(A, b)]
    if not pool:
        return 0, []
    failures = []
    for _ in range(samples):
        b = rng.choice(pool)
        vec = rng.choice(basis_dense(A, b))
        m1, m2 = random_split(vec, A, rng)
        sign, prod = mul_dense(A, m1, m2)
        lhs = {w: sign * c % p for w, c in der.monomial(prod).items()}
        rhs = mul_sparse(A, der.monomial(m1), {m2: 1})
        sgn = -1 if sum(A.dense_bidegree(m1)) % 2 else 1
        for w, c in mul_sparse(A, {m1: 1}, der.monomial(m2)).items():
            rhs[w] = (rhs.get(w, 0) + sgn * c) % p
        rhs = {w: c for w, c in rhs.items() if c}
        if lhs != rhs:
            failures.append(b)
    return samples, failures
