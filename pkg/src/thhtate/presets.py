"""Homology presentations of the Ravenel spectra and their colimits.

``X(n)`` has mod-p homology ``P(b_1, ..., b_n)`` with ``|b_i| = 2i``; ``T(n)``
has ``P(xi_1, ..., xi_n)`` with ``|xi_i| = 2p^i - 2``.  ``MU@k`` and ``BP@k``
are the degree-truncations of MU and BP, which agree homologically with
``X(k)`` and ``T(k)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .fpgca import AlgebraPresentation, GeneratorSpec, PrimeField, make_presentation

_PATTERNS = [
    (re.compile(r"^X\(?(\d+)\)?$"), "X"),
    (re.compile(r"^T\(?(\d+)\)?$"), "T"),
    (re.compile(r"^MU@(\d+)$"), "X"),
    (re.compile(r"^BP@(\d+)$"), "T"),
]


@dataclass(frozen=True)
class Preset:
    family: str  # "X" or "T"
    n: int
    label: str = ""

    def __post_init__(self):
        if self.family not in ("X", "T"):
            raise ValueError(f"unknown preset family {self.family!r}")
        if self.n < 0:
            raise ValueError("preset index must be non-negative")
        if not self.label:
            object.__setattr__(self, "label", f"{self.family}{self.n}")

    @classmethod
    def parse(cls, text: str) -> "Preset":
        text = text.strip()
        for pattern, family in _PATTERNS:
            m = pattern.match(text)
            if m:
                return cls(family, int(m.group(1)), text)
        raise ValueError(f"unrecognised preset {text!r}; use X<n>, T<n>, MU@<k> or BP@<k>")

    @property
    def symbol(self) -> str:
        return "b" if self.family == "X" else "xi"

    def generator_names(self) -> list[str]:
        return [f"{self.symbol}{i}" for i in range(1, self.n + 1)]

    def internal_degree(self, i: int, p: int) -> int:
        if self.family == "X":
            return 2 * i
        return 2 * p**i - 2

    def generators(self, p: int) -> list[GeneratorSpec]:
        PrimeField(p)
        return [
            GeneratorSpec.polynomial(name, (0, self.internal_degree(i, p)))
            for i, name in enumerate(self.generator_names(), start=1)
        ]

    def homology(self, p: int) -> AlgebraPresentation:
        """Mod-p homology ring of the spectrum."""
        return make_presentation(p, self.generators(p))
