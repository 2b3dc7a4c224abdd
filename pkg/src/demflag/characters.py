"""Graded sl2 characters rebuilt from Demazure flags.

A character is a map ``n -> polynomial in q`` where ``n`` stands for the
weight ``n w``.  At level ``|xi|`` every Demazure module ``D(|xi|, r w)`` is
the irreducible ``V(r w)`` placed in degree zero, so the flag multiplicities
at that level are exactly the graded Jordan-Hoelder multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from .errors import DomainError
from .flags import PartitionLike, as_partition, level2_inversion_coeff, multiplicity_table
from .partition import Partition, demazure_partition, level2_partition
from .qpoly import ONE, ZERO, QPolynomial

__all__ = [
    "GradedCharacter",
    "irr_character",
    "graded_character",
    "demazure_character",
    "graded_character_via_level",
    "demazure2_character_two_ways",
]


@dataclass(frozen=True)
class GradedCharacter:
    weights: Mapping[int, QPolynomial] = field(default_factory=dict)

    def __post_init__(self):
        clean = {n: p for n, p in sorted(self.weights.items(), reverse=True) if p}
        object.__setattr__(self, "weights", MappingProxyType(clean))

    def __getitem__(self, n: int) -> QPolynomial:
        return self.weights.get(n, ZERO)

    def __eq__(self, other):
        if not isinstance(other, GradedCharacter):
            return NotImplemented
        return dict(self.weights) == dict(other.weights)

    def __hash__(self):
        return hash(tuple(self.weights.items()))

    def __add__(self, other: "GradedCharacter") -> "GradedCharacter":
        out = dict(self.weights)
        for n, p in other.weights.items():
            out[n] = out.get(n, ZERO) + p
        return GradedCharacter(out)

    def __sub__(self, other: "GradedCharacter") -> "GradedCharacter":
        return self + other.scale(-ONE)

    def scale(self, c: QPolynomial) -> "GradedCharacter":
        return GradedCharacter({n: p * c for n, p in self.weights.items()})

    def is_symmetric(self) -> bool:
        return all(self[-n] == p for n, p in self.weights.items())

    def q0_slice(self) -> dict[int, int]:
        return {n: p[0] for n, p in self.weights.items() if p[0]}

    def eval_q1(self) -> dict[int, int]:
        return {n: p.eval_q1() for n, p in self.weights.items()}

    def dimension(self) -> int:
        return sum(p.eval_q1() for p in self.weights.values())

    def to_json(self) -> dict:
        return {"weights": {str(n): p.to_json() for n, p in self.weights.items()}}

    def text_table(self) -> str:
        """Rows are weights (descending), columns are q-degrees."""
        if not self.weights:
            return "(zero character)\n"
        top = max(p.degree for p in self.weights.values())
        header = ["weight"] + [f"q^{d}" for d in range(top + 1)]
        rows = [[str(n)] + [str(p[d]) for d in range(top + 1)] for n, p in self.weights.items()]
        widths = [max(len(r[c]) for r in [header] + rows) for c in range(len(header))]
        fmt = lambda row: "  ".join(x.rjust(w) for x, w in zip(row, widths)).rstrip()
        return "\n".join(fmt(r) for r in [header] + rows) + "\n"


@lru_cache(maxsize=None)
def irr_character(n: int) -> GradedCharacter:
    """Character of the irreducible ``V(n w)`` in degree zero."""
    if n < 0:
        raise DomainError(f"highest weight must be non-negative, got {n}")
    return GradedCharacter({w: ONE for w in range(n, -n - 1, -2)})


@lru_cache(maxsize=None)
def _graded_character(xi: Partition) -> GradedCharacter:
    if not xi.parts:
        return irr_character(0)
    table = multiplicity_table(xi, xi.weight)
    out = GradedCharacter()
    for r, p in table.entries.items():
        out = out + irr_character(r).scale(p)
    return out


def graded_character(xi: PartitionLike) -> GradedCharacter:
    """``ch_gr V(xi)`` as a sum of multiplicity times irreducible character."""
    return _graded_character(as_partition(xi))


def demazure_character(l: int, r: int) -> GradedCharacter:
    """``ch_gr D(l, r w)``, via the partition whose module it is."""
    return graded_character(demazure_partition(l, r))


def graded_character_via_level(xi: PartitionLike, l: int) -> GradedCharacter:
    """Recompute ``ch_gr V(xi)`` through a level-``l`` flag; agrees with
    :func:`graded_character` for every admissible ``l``."""
    xi = as_partition(xi)
    out = GradedCharacter()
    for r, p in multiplicity_table(xi, l).entries.items():
        out = out + demazure_character(l, r).scale(p)
    return out


def demazure2_character_two_ways(s: int) -> tuple[GradedCharacter, GradedCharacter]:
    """``ch_gr D(2, s w)`` directly, and as the signed combination of local
    Weyl module characters ``ch_gr V(1^(s-2p))``."""
    if s < 0:
        raise DomainError("s must be non-negative")
    direct = graded_character(level2_partition(s))
    combo = GradedCharacter()
    for p in range(s // 2 + 1):
        combo = combo + graded_character((1,) * (s - 2 * p)).scale(level2_inversion_coeff(s, p))
    return direct, combo
