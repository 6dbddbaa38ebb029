"""Free graded-commutative algebras over F_p.

An algebra is presented by an ordered list of generators, each polynomial,
exterior or Laurent, carrying a bidegree ``(s, t)``: ``s`` is the filtration
degree and ``t`` the internal degree.  Koszul signs are taken with respect to
the total degree ``s + t``.

Monomials are sparse maps from generator names to exponents; they know
nothing about the presentation.  Everything that needs the generator order
(signs, bidegrees, basis enumeration) takes the presentation explicitly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import (
    DuplicateName,
    ForeignGenerator,
    NonPrime,
    ParityViolation,
    UnboundedBasis,
)

POLYNOMIAL = "polynomial"
EXTERIOR = "exterior"
LAURENT = "laurent"
KINDS = (POLYNOMIAL, EXTERIOR, LAURENT)

Bidegree = tuple[int, int]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise NonPrime(f"{self.p!r} is not a prime")

    def inverse(self, x: int) -> int:
        return pow(x % self.p, -1, self.p)


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    kind: str
    bidegree: Bidegree

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if not isinstance(self.name, str) or not self.name:
            raise ValueError("generator name must be a non-empty string")
        s, t = self.bidegree
        object.__setattr__(self, "bidegree", (int(s), int(t)))

    @classmethod
    def polynomial(cls, name: str, bidegree: Bidegree) -> "GeneratorSpec":
        return cls(name, POLYNOMIAL, bidegree)

    @classmethod
    def exterior(cls, name: str, bidegree: Bidegree) -> "GeneratorSpec":
        return cls(name, EXTERIOR, bidegree)

    @classmethod
    def laurent(cls, name: str, bidegree: Bidegree) -> "GeneratorSpec":
        return cls(name, LAURENT, bidegree)

    @property
    def s(self) -> int:
        return self.bidegree[0]

    @property
    def t(self) -> int:
        return self.bidegree[1]

    @property
    def total(self) -> int:
        return self.bidegree[0] + self.bidegree[1]


@dataclass(frozen=True, order=True)
class Monomial:
    """Sparse exponent vector, stored as name-sorted ``(name, exponent)`` pairs."""

    exponents: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        items = sorted((str(k), int(v)) for k, v in self.exponents if v != 0)
        names = [k for k, _ in items]
        if len(set(names)) != len(names):
            raise ValueError(f"repeated generator in monomial: {names}")
        object.__setattr__(self, "exponents", tuple(items))

    @classmethod
    def of(cls, mapping: Mapping[str, int] | None = None, /, **exps: int) -> "Monomial":
        merged = dict(mapping or {})
        merged.update(exps)
        return cls(tuple(merged.items()))

    def __getitem__(self, name: str) -> int:
        for k, v in self.exponents:
            if k == name:
                return v
        return 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.exponents)

    def names(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.exponents)

    def __str__(self) -> str:
        if not self.exponents:
            return "1"
        return "*".join(k if v == 1 else f"{k}^{v}" for k, v in self.exponents)


UNIT = Monomial()


@dataclass(frozen=True)
class Element:
    """F_p-linear combination of monomials; no zero coefficients are stored."""

    terms: tuple[tuple[Monomial, int], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[Monomial, int], p: int) -> "Element":
        kept = [(m, c % p) for m, c in mapping.items() if c % p]
        return cls(tuple(sorted(kept)))

    @classmethod
    def monomial(cls, m: Monomial, p: int, coeff: int = 1) -> "Element":
        return cls.from_mapping({m: coeff}, p)

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(str(m) if c == 1 else f"{c}*{m}" for m, c in self.terms)


@dataclass(frozen=True)
class AlgebraPresentation:
    field: PrimeField
    generators: tuple[GeneratorSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        names = [g.name for g in self.generators]
        seen = set()
        for name in names:
            if name in seen:
                raise DuplicateName(f"generator name {name!r} used twice")
            seen.add(name)
        laurent = 0
        for g in self.generators:
            if g.kind == POLYNOMIAL and (g.t <= 0 or g.s != 0):
                raise UnboundedBasis(
                    f"polynomial generator {g.name} must sit at (0, t>0), got {g.bidegree}"
                )
            if g.kind == LAURENT:
                laurent += 1
                if g.s >= 0 or g.t != 0:
                    raise UnboundedBasis(
                        f"laurent generator {g.name} must sit at (s<0, 0), got {g.bidegree}"
                    )
            if self.p > 2 and g.total % 2 and g.kind != EXTERIOR:
                raise ParityViolation(
                    f"{g.name} has odd total degree {g.total} at p={self.p}; it must be exterior"
                )
        # Two Laurent classes of negative s would leave infinitely many monomials per bidegree.
        if laurent > 1:
            raise UnboundedBasis("at most one laurent generator is supported")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {g.name: i for i, g in enumerate(self.generators)}

    @cached_property
    def _kinds(self) -> tuple[str, ...]:
        return tuple(g.kind for g in self.generators)

    @cached_property
    def _parity(self) -> tuple[int, ...]:
        return tuple(g.total % 2 for g in self.generators)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ForeignGenerator(f"{name!r} is not a generator of this algebra") from None

    def generator(self, name: str) -> GeneratorSpec:
        return self.generators[self.index(name)]

    def dense(self, m: Monomial) -> tuple[int, ...]:
        vec = [0] * len(self.generators)
        for name, e in m.exponents:
            i = self.index(name)
            kind = self._kinds[i]
            if kind == EXTERIOR and e not in (0, 1):
                raise ValueError(f"exterior exponent of {name} must be 0 or 1, got {e}")
            if kind == POLYNOMIAL and e < 0:
                raise ValueError(f"polynomial exponent of {name} must be >= 0, got {e}")
            vec[i] = e
        return tuple(vec)

    def sparse(self, vec: tuple[int, ...]) -> Monomial:
        return Monomial(tuple((g.name, e) for g, e in zip(self.generators, vec) if e))

    def dense_bidegree(self, vec: tuple[int, ...]) -> Bidegree:
        s = t = 0
        for g, e in zip(self.generators, vec):
            s += e * g.s
            t += e * g.t
        return s, t

    def bidegree(self, m: Monomial) -> Bidegree:
        return self.dense_bidegree(self.dense(m))

    def total_degree(self, m: Monomial) -> int:
        return sum(self.bidegree(m))

    def monomial(self, **exps: int) -> Monomial:
        m = Monomial.of(exps)
        self.dense(m)
        return m

    def element(self, mapping: Mapping[Monomial, int]) -> Element:
        """Validated homogeneous element."""
        elt = Element.from_mapping(mapping, self.p)
        degrees = {self.bidegree(m) for m, _ in elt.terms}
        if len(degrees) > 1:
            raise ValueError(f"inhomogeneous element, bidegrees {sorted(degrees)}")
        return elt

    def gen(self, name: str) -> Element:
        self.index(name)
        return Element.monomial(Monomial.of({name: 1}), self.p)

    def tensor(self, other: "AlgebraPresentation") -> "AlgebraPresentation":
        if other.p != self.p:
            raise ValueError("cannot tensor presentations over different primes")
        return AlgebraPresentation(self.field, self.generators + other.generators)


def make_presentation(p: int, gens: Iterable[GeneratorSpec]) -> AlgebraPresentation:
    """Validate ``gens`` over F_p and return the presentation."""
    return AlgebraPresentation(PrimeField(p), tuple(gens))


# ---------------------------------------------------------------------------
# products on dense exponent vectors

def mul_dense(A: AlgebraPresentation, u: tuple[int, ...], v: tuple[int, ...]):
    """``u * v`` as ``(sign, w)`` with ``w`` canonical, or ``None`` if zero."""
    kinds = A._kinds
    parity = A._parity
    out = []
    acc = 0  # parity of u-factors strictly after position j
    sign_exp = 0
    n = len(u)
    for j in range(n - 1, -1, -1):
        a, b = u[j], v[j]
        if kinds[j] == EXTERIOR and a and b:
            return None
        if b and parity[j]:
            sign_exp += (b & 1) * acc
        if a and parity[j]:
            acc ^= a & 1
    for j in range(n):
        out.append(u[j] + v[j])
    return (-1 if sign_exp & 1 else 1), tuple(out)


def mul_sparse(A: AlgebraPresentation, x: Mapping, y: Mapping) -> dict:
    """Product of dict-encoded elements ``{dense vector: coeff}``."""
    p = A.p
    out: dict = {}
    for u, a in x.items():
        for v, b in y.items():
            r = mul_dense(A, u, v)
            if r is None:
                continue
            sign, w = r
            c = (out.get(w, 0) + sign * a * b) % p
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return out


def _to_sparse_dict(A: AlgebraPresentation, a: Element) -> dict:
    return {A.dense(m): c for m, c in a.terms}


def _from_sparse_dict(A: AlgebraPresentation, d: Mapping) -> Element:
    return Element.from_mapping({A.sparse(w): c for w, c in d.items()}, A.p)


def multiply(a: Element, b: Element, A: AlgebraPresentation) -> Element:
    """Graded-commutative product of two elements of ``A``."""
    return _from_sparse_dict(A, mul_sparse(A, _to_sparse_dict(A, a), _to_sparse_dict(A, b)))


def multiply_monomials(m1: Monomial, m2: Monomial, A: AlgebraPresentation):
    """Return ``(sign, monomial)`` for ``m1 * m2`` or ``None`` when it vanishes."""
    r = mul_dense(A, A.dense(m1), A.dense(m2))
    if r is None:
        return None
    sign, w = r
    return sign, A.sparse(w)


# ---------------------------------------------------------------------------
# basis enumeration

@lru_cache(maxsize=4096)
def _partitions(degrees: tuple[int, ...], total: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors ``e`` with ``sum(e_i * degrees_i) == total``."""
    if not degrees:
        return ((),) if total == 0 else ()
    head, rest = degrees[0], degrees[1:]
    out = []
    for e in range(total // head + 1):
        for tail in _partitions(rest, total - e * head):
            out.append((e,) + tail)
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def basis_dense(A: AlgebraPresentation, bidegree: Bidegree) -> tuple[tuple[int, ...], ...]:
    s, t = bidegree
    gens = A.generators
    poly = [i for i, g in enumerate(gens) if g.kind == POLYNOMIAL]
    ext = [i for i, g in enumerate(gens) if g.kind == EXTERIOR]
    lau = [i for i, g in enumerate(gens) if g.kind == LAURENT]
    for i in poly:
        if gens[i].t <= 0 or gens[i].s != 0:
            raise UnboundedBasis(f"polynomial generator {gens[i].name} at {gens[i].bidegree}")
    if len(lau) > 1 or any(gens[i].s >= 0 or gens[i].t != 0 for i in lau):
        raise UnboundedBasis("laurent generators must be unique and sit at (s<0, 0)")
    poly_degrees = tuple(gens[i].t for i in poly)
    found = []
    for bits in itertools.product((0, 1), repeat=len(ext)):
        rs = s - sum(b * gens[i].s for b, i in zip(bits, ext))
        rt = t - sum(b * gens[i].t for b, i in zip(bits, ext))
        if rt < 0:
            continue
        if lau:
            ls = gens[lau[0]].s
            if rs % ls:
                continue
            le = rs // ls
        elif rs:
            continue
        for exps in _partitions(poly_degrees, rt):
            vec = [0] * len(gens)
            for b, i in zip(bits, ext):
                vec[i] = b
            for e, i in zip(exps, poly):
                vec[i] = e
            if lau:
                vec[lau[0]] = le
            found.append(tuple(vec))
    found.sort()
    return tuple(found)


def basis(A: AlgebraPresentation, bidegree: Bidegree) -> list[Monomial]:
    """Every monomial of ``A`` in ``bidegree``, ordered lexicographically by exponent vector."""
    return [A.sparse(v) for v in basis_dense(A, tuple(bidegree))]


# ---------------------------------------------------------------------------
# dimension tables

@dataclass(frozen=True)
class Window:
    """Inclusive rectangle ``[s_min, s_max] x [t_min, t_max]``."""

    s_min: int
    s_max: int
    t_min: int
    t_max: int

    def __post_init__(self):
        if self.s_min > self.s_max or self.t_min > self.t_max:
            raise ValueError(f"empty window {self}")

    @classmethod
    def parse(cls, s_range: str, t_range: str) -> "Window":
        s0, s1 = _parse_range(s_range)
        t0, t1 = _parse_range(t_range)
        return cls(s0, s1, t0, t1)

    def __contains__(self, bidegree) -> bool:
        s, t = bidegree
        return self.s_min <= s <= self.s_max and self.t_min <= t <= self.t_max

    def __iter__(self) -> Iterator[Bidegree]:
        for s in range(self.s_min, self.s_max + 1):
            for t in range(self.t_min, self.t_max + 1):
                yield (s, t)

    def __len__(self) -> int:
        return (self.s_max - self.s_min + 1) * (self.t_max - self.t_min + 1)

    def intersect(self, other: "Window") -> "Window | None":
        s0, s1 = max(self.s_min, other.s_min), min(self.s_max, other.s_max)
        t0, t1 = max(self.t_min, other.t_min), min(self.t_max, other.t_max)
        if s0 > s1 or t0 > t1:
            return None
        return Window(s0, s1, t0, t1)

    def shrink(self, ds: int, dt: int) -> "Window | None":
        s0, s1 = self.s_min + ds, self.s_max - ds
        t0, t1 = self.t_min + dt, self.t_max - dt
        if s0 > s1 or t0 > t1:
            return None
        return Window(s0, s1, t0, t1)

    def as_dict(self) -> dict[str, int]:
        return {"s_min": self.s_min, "s_max": self.s_max, "t_min": self.t_min, "t_max": self.t_max}


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"range {text!r} must look like a:b")
    return int(lo), int(hi)


@dataclass(frozen=True)
class BigradedDimTable:
    window: Window
    entries: dict = field(hash=False)

    def __post_init__(self):
        missing = [b for b in self.window if b not in self.entries]
        if missing:
            raise ValueError(f"table is missing in-window bidegrees, e.g. {missing[0]}")
        extra = [b for b in self.entries if b not in self.window]
        if extra:
            raise ValueError(f"table has entries outside its window, e.g. {extra[0]}")
        if any(d < 0 for d in self.entries.values()):
            raise ValueError("dimensions must be non-negative")

    def __getitem__(self, bidegree: Bidegree) -> int:
        return self.entries[tuple(bidegree)]

    def __contains__(self, bidegree) -> bool:
        return tuple(bidegree) in self.entries

    def items(self) -> list[tuple[Bidegree, int]]:
        return [(b, self.entries[b]) for b in self.window]

    def total(self) -> int:
        return sum(self.entries.values())

    def restrict(self, window: Window) -> "BigradedDimTable":
        return BigradedDimTable(window, {b: self.entries[b] for b in window})

    def rows(self) -> list[list[int]]:
        return [[s, t, d] for (s, t), d in self.items()]


def poincare_table(A: AlgebraPresentation, window: Window) -> BigradedDimTable:
    return BigradedDimTable(window, {b: len(basis_dense(A, b)) for b in window})
