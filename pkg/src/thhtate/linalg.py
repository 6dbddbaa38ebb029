"""Exact rank computations over F_p.

Two elimination paths share one entry point, :func:`rank_nullity`:

* dense input (numpy arrays, nested lists) goes through vectorised row
  reduction on ``int64`` (``object`` when ``p*p`` would overflow);
* :class:`SparseMatrix` input goes through column reduction on dict columns,
  which is much cheaper for the few-nonzeros-per-column boundary matrices the
  spectral sequence code produces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_INT64_SAFE = 3_000_000_000


@dataclass
class SparseMatrix:
    """``nrows x ncols`` matrix stored as a list of ``{row: value}`` columns."""

    nrows: int
    ncols: int
    columns: list = field(default_factory=list)

    def __post_init__(self):
        if not self.columns:
            self.columns = [{} for _ in range(self.ncols)]
        if len(self.columns) != self.ncols:
            raise ValueError("column count does not match ncols")

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i, j] = v
        return out

    @classmethod
    def from_dense(cls, a, p: int) -> "SparseMatrix":
        a = np.asarray(a, dtype=object)
        nrows, ncols = a.shape if a.ndim == 2 else (0, 0)
        cols = []
        for j in range(ncols):
            cols.append({i: int(a[i, j]) % p for i in range(nrows) if int(a[i, j]) % p})
        return cls(nrows, ncols, cols)


def _sparse_rank(m: SparseMatrix, p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for col in m.columns:
        c = {i: v % p for i, v in col.items() if v % p}
        while c:
            low = max(c)
            piv = pivots.get(low)
            if piv is None:
                inv = pow(c[low], -1, p)
                pivots[low] = {i: v * inv % p for i, v in c.items()}
                break
            f = c[low]
            for i, v in piv.items():
                nv = (c.get(i, 0) - f * v) % p
                if nv:
                    c[i] = nv
                else:
                    c.pop(i, None)
    return len(pivots)


def _dense_rank(a, p: int) -> int:
    dtype = np.int64 if p < _INT64_SAFE else object
    a = np.array(a, dtype=dtype) % p
    nrows, ncols = a.shape
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank, c:] = a[rank, c:] * inv % p
        below = rank + 1 + np.flatnonzero(a[rank + 1:, c])
        if below.size:
            a[below, c:] = (a[below, c:] - np.outer(a[below, c], a[rank, c:])) % p
        rank += 1
    return rank


def rank_nullity(matrix, p: int) -> tuple[int, int]:
    """``(rank, nullity)`` of ``matrix`` over F_p; nullity counts columns."""
    if isinstance(matrix, SparseMatrix):
        return (r := _sparse_rank(matrix, p)), matrix.ncols - r
    if hasattr(matrix, "tocsc"):
        csc = matrix.tocsc()
        nrows, ncols = csc.shape
        cols = []
        for j in range(ncols):
            lo, hi = csc.indptr[j], csc.indptr[j + 1]
            cols.append({int(i): int(v) for i, v in zip(csc.indices[lo:hi], csc.data[lo:hi])})
        return rank_nullity(SparseMatrix(nrows, ncols, cols), p)
    a = np.asarray(matrix)
    if a.size == 0:
        ncols = a.shape[1] if a.ndim == 2 else 0
        return 0, ncols
    if a.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    r = _dense_rank(a, p)
    return r, a.shape[1] - r


def matmul_mod(a: SparseMatrix, b: SparseMatrix, p: int) -> SparseMatrix:
    """``a @ b`` over F_p."""
    if a.ncols != b.nrows:
        raise ValueError(f"shape mismatch {a.nrows}x{a.ncols} @ {b.nrows}x{b.ncols}")
    cols = []
    for bcol in b.columns:
        acc: dict[int, int] = {}
        for k, v in bcol.items():
            for i, w in a.columns[k].items():
                acc[i] = (acc.get(i, 0) + v * w) % p
        cols.append({i: v for i, v in acc.items() if v})
    return SparseMatrix(a.nrows, b.ncols, cols)
