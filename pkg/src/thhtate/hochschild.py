"""Hochschild homology of free polynomial algebras over F_p.

The closed form ``HH_*(P(x_1, ...)) = P(x_1, ...) (x) E(sigma x_1, ...)`` comes
from the Koszul resolution.  :func:`bar_hh_oracle` recomputes the same
dimensions by brute force from the normalized cyclic bar complex, so the two
routes share nothing but the basis enumerator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegreeBudgetExceeded, NonPolynomialInput
from .fpgca import (
    POLYNOMIAL,
    AlgebraPresentation,
    BigradedDimTable,
    GeneratorSpec,
    Window,
    basis_dense,
    mul_dense,
    poincare_table,
)
from .linalg import SparseMatrix, matmul_mod, rank_nullity


def sigma_name(name: str) -> str:
    return f"sigma_{name}"


def _require_polynomial(A: AlgebraPresentation) -> None:
    bad = [g.name for g in A.generators if g.kind != POLYNOMIAL]
    if bad:
        raise NonPolynomialInput(f"non-polynomial generators: {', '.join(bad)}")


def hh_closed_form(A: AlgebraPresentation) -> AlgebraPresentation:
    """``A (x) E(sigma x)`` with ``sigma x`` at ``(0, t_x + 1)``."""
    _require_polynomial(A)
    sigmas = [GeneratorSpec.exterior(sigma_name(g.name), (0, g.t + 1)) for g in A.generators]
    return AlgebraPresentation(A.field, A.generators + tuple(sigmas))


@dataclass(frozen=True)
class BokstedtE2:
    algebra: AlgebraPresentation
    collapses: bool
    reason: str


def bokstedt_e2(H: AlgebraPresentation) -> BokstedtE2:
    """E2-page of the Bökstedt spectral sequence for a polynomial homology ring.

    Classes ``sigma x`` sit in filtration 1.  Every algebra generator lies in
    filtration at most one while ``d_r`` lowers filtration by ``r >= 2``, so the
    page is flagged as collapsing.
    """
    _require_polynomial(H)
    sigmas = [GeneratorSpec.exterior(sigma_name(g.name), (1, g.t)) for g in H.generators]
    algebra = AlgebraPresentation(H.field, H.generators + tuple(sigmas))
    collapses = all(g.s <= 1 for g in algebra.generators)
    reason = (
        "no generators in filtration degree greater than one"
        if collapses
        else "generators above filtration one"
    )
    return BokstedtE2(algebra, collapses, reason)


# ---------------------------------------------------------------------------
# brute-force oracle

@dataclass
class HochschildComplex:
    """Normalized Hochschild complex ``A (x) Abar^{(x)k}``, truncated by degree.

    ``chains[(k, w)]`` lists the basis chains of length ``k`` and internal
    degree ``w``; ``boundaries[(k, w)]`` is the matrix of
    ``b: C_{k,w} -> C_{k-1,w}``.
    """

    algebra: AlgebraPresentation
    max_degree: int
    chains: dict = field(default_factory=dict)
    boundaries: dict = field(default_factory=dict)

    def dim(self, k: int, w: int) -> int:
        return len(self.chains.get((k, w), ()))


def _degree(A: AlgebraPresentation, vec) -> int:
    return sum(A.dense_bidegree(vec))


def _chains(A: AlgebraPresentation, k: int, w: int) -> list[tuple]:
    """Chains ``(a_0, a_1, ..., a_k)`` with ``a_i`` (i >= 1) of positive degree."""
    out: list[tuple] = []

    def tails(parts: int, remaining: int):
        if parts == 0:
            if remaining == 0:
                yield ()
            return
        for wi in range(1, remaining + 1):
            for a in basis_dense(A, (0, wi)):
                for rest in tails(parts - 1, remaining - wi):
                    yield (a,) + rest

    for w0 in range(w + 1):
        heads = basis_dense(A, (0, w0))
        if not heads:
            continue
        for rest in tails(k, w - w0):
            for a0 in heads:
                out.append((a0,) + rest)
    out.sort()
    return out


def _boundary(A: AlgebraPresentation, chain: tuple) -> dict:
    p = A.p
    k = len(chain) - 1
    out: dict = {}

    def add(key, c):
        c = (out.get(key, 0) + c) % p
        if c:
            out[key] = c
        else:
            out.pop(key, None)

    for i in range(k):
        sign, w = mul_dense(A, chain[i], chain[i + 1])
        add(chain[:i] + (w,) + chain[i + 2:], (-1) ** i * sign)
    # cyclic face: move a_k to the front past a_0 ... a_{k-1}
    last = chain[k]
    passed = sum(_degree(A, a) for a in chain[:k])
    koszul = -1 if (_degree(A, last) * passed) % 2 else 1
    sign, w = mul_dense(A, last, chain[0])
    add((w,) + chain[1:k], (-1) ** k * koszul * sign)
    return out


def hochschild_complex(
    A: AlgebraPresentation, max_degree: int, max_chain_dim: int = 200_000
) -> HochschildComplex:
    """Chains and boundaries needed for ``HH`` in total degree ``<= max_degree``."""
    _require_polynomial(A)
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    cx = HochschildComplex(A, max_degree)
    top = max_degree + 1
    for w in range(top + 1):
        for k in range(top - w + 1):
            chains = _chains(A, k, w) if (k == 0 or w >= k) else []
            if len(chains) > max_chain_dim:
                raise DegreeBudgetExceeded(
                    f"C_{k} in internal degree {w} has dimension {len(chains)} > {max_chain_dim}"
                )
            if chains:
                cx.chains[(k, w)] = chains
    for (k, w), chains in cx.chains.items():
        if k == 0:
            continue
        target = {c: i for i, c in enumerate(cx.chains.get((k - 1, w), ()))}
        cols = []
        for chain in chains:
            cols.append({target[key]: v for key, v in _boundary(A, chain).items()})
        cx.boundaries[(k, w)] = SparseMatrix(len(target), len(chains), cols)
    return cx


def boundary_squares(cx: HochschildComplex) -> list[tuple[int, int]]:
    """Bidegrees ``(k, w)`` where ``b o b`` fails to vanish (empty when sound)."""
    bad = []
    for (k, w), outer in sorted(cx.boundaries.items()):
        inner = cx.boundaries.get((k + 1, w))
        if inner is None:
            continue
        if matmul_mod(outer, inner, cx.algebra.p).nnz():
            bad.append((k + 1, w))
    return bad


def bar_hh_bigraded(A: AlgebraPresentation, max_degree: int, **kw) -> dict[tuple[int, int], int]:
    """``dim HH_{k,w}`` for every ``k + w <= max_degree`` (k homological, w internal)."""
    cx = hochschild_complex(A, max_degree, **kw)
    p = A.p
    ranks = {key: rank_nullity(m, p)[0] for key, m in cx.boundaries.items()}
    out = {}
    for w in range(max_degree + 1):
        for k in range(max_degree - w + 1):
            dim = cx.dim(k, w)
            out[(k, w)] = dim - ranks.get((k, w), 0) - ranks.get((k + 1, w), 0)
    return out


def bar_hh_oracle(A: AlgebraPresentation, max_degree: int, **kw) -> BigradedDimTable:
    """Total-degree dimensions of ``HH_*(A)`` from the bar complex, as an ``s = 0`` row."""
    bigraded = bar_hh_bigraded(A, max_degree, **kw)
    totals = {(0, d): 0 for d in range(max_degree + 1)}
    for (k, w), dim in bigraded.items():
        totals[(0, k + w)] += dim
    return BigradedDimTable(Window(0, 0, 0, max_degree), totals)


def hh_closed_form_table(A: AlgebraPresentation, max_degree: int) -> BigradedDimTable:
    return poincare_table(hh_closed_form(A), Window(0, 0, 0, max_degree))
