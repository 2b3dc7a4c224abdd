"""Partitions and the operations the multiplicity recursion is built from."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    EmptyPartition,
    LargestPartMismatch,
    MaxPartExceedsLevel,
    ParseError,
)

__all__ = [
    "Partition",
    "from_parts",
    "from_exponents",
    "exponents",
    "xi_plus",
    "xi_minus",
    "drop_max_part",
    "poset_less",
    "demazure_shape",
    "demazure_partition",
    "demazure_dimension",
    "level2_partition",
    "parse_partition",
    "partitions_of",
    "partitions_up_to",
]


@dataclass(frozen=True, order=True)
class Partition:
    """A non-increasing tuple of positive integers; ``Partition(())`` is empty."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        p = self.parts
        if not isinstance(p, tuple):
            object.__setattr__(self, "parts", p := tuple(p))
        for a in p:
            if not isinstance(a, int) or a <= 0:
                raise ValueError(f"parts must be positive integers: {p}")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"parts must be non-increasing: {p}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    @property
    def smallest(self) -> int:
        return self.parts[-1] if self.parts else 0

    def dimension(self) -> int:
        """Dimension of V(xi): the product of ``part + 1``."""
        return math.prod(a + 1 for a in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) if self.parts else "()"

    def exponent_string(self) -> str:
        """Exponent notation, e.g. ``1^2*3`` for (3,1,1); ``()`` when empty."""
        if not self.parts:
            return "()"
        counts: dict[int, int] = {}
        for a in self.parts:
            counts[a] = counts.get(a, 0) + 1
        return "*".join(
            str(a) if b == 1 else f"{a}^{b}" for a, b in sorted(counts.items())
        )


def from_parts(raw: Iterable[int]) -> Partition:
    """Sort descending and drop zeros."""
    vals = [int(x) for x in raw]
    if any(x < 0 for x in vals):
        raise ValueError(f"negative part in {vals}")
    return Partition(tuple(sorted((x for x in vals if x), reverse=True)))


def from_exponents(b: Sequence[int]) -> Partition:
    """Inverse of :func:`exponents`: ``b[m-1]`` copies of ``m``."""
    parts: list[int] = []
    for m in range(len(b), 0, -1):
        parts.extend([m] * b[m - 1])
    return Partition(tuple(parts))


def exponents(xi: Partition, l: int) -> tuple[int, ...]:
    """Multiplicities ``(b_1, ..., b_l)`` of the parts 1..l."""
    if xi.largest > l:
        raise MaxPartExceedsLevel(f"part {xi.largest} of {xi} exceeds level {l}")
    b = [0] * l
    for a in xi.parts:
        b[a - 1] += 1
    return tuple(b)


def xi_plus(xi: Partition) -> Partition:
    """Move one box from the smallest part onto the next-smallest part."""
    s = len(xi)
    if s == 0:
        raise EmptyPartition("xi_plus is undefined on the empty partition")
    if s == 1:
        return xi
    p = list(xi.parts)
    p[-2] += 1
    p[-1] -= 1
    return from_parts(p)


def xi_minus(xi: Partition) -> Partition:
    """Drop the smallest part and subtract it from the next-smallest."""
    s = len(xi)
    if s == 0:
        raise EmptyPartition("xi_minus is undefined on the empty partition")
    if s == 1:
        return Partition()
    p = list(xi.parts[:-1])
    p[-1] -= xi.parts[-1]
    return from_parts(p)


def drop_max_part(xi: Partition, m: int) -> Partition:
    if not xi.parts or xi.parts[0] != m:
        raise LargestPartMismatch(f"largest part of {xi} is not {m}")
    return Partition(xi.parts[1:])


def poset_less(a: Partition, b: Partition) -> bool:
    """Termination order of the recursion: fewer parts, or as many parts
    and a strictly smaller smallest part."""
    if len(a) != len(b):
        return len(a) < len(b)
    return a.smallest < b.smallest


def demazure_shape(xi: Partition, m: int) -> Optional[int]:
    """Return ``|xi|`` if ``V(xi)`` is itself a level-``m`` Demazure module,
    i.e. ``xi = (m, ..., m, s)`` with ``0 < s <= m``; 0 for the empty
    partition; ``None`` otherwise."""
    if xi.largest > m:
        raise MaxPartExceedsLevel(f"part {xi.largest} of {xi} exceeds level {m}")
    if not xi.parts:
        return 0
    if all(a == m for a in xi.parts[:-1]):
        return xi.weight
    return None


def demazure_partition(l: int, r: int) -> Partition:
    """The partition ``(r mod l) l^floor(r/l)`` whose module is ``D(l, r w)``."""
    if l < 1 or r < 0:
        raise ValueError(f"need l >= 1 and r >= 0, got l={l}, r={r}")
    q, rem = divmod(r, l)
    return Partition((l,) * q + ((rem,) if rem else ()))


def demazure_dimension(l: int, r: int) -> int:
    return demazure_partition(l, r).dimension()


def level2_partition(s: int) -> Partition:
    """Partition realising ``D(2, s w)``: ``2^(s/2)`` or ``2^((s-1)/2) 1``."""
    return demazure_partition(2, s)


_EXP_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_partition(text: str, normalize: bool = False) -> Partition:
    """Parse ``"3,2,2"`` or exponent form ``"1^8"`` / ``"2^3*3^1"``.

    Comma forms must already be non-increasing and zero-free unless
    ``normalize`` is set.  ``""``, ``"()"`` and ``"empty"`` give the empty
    partition.
    """
    s = text.strip()
    if s in ("", "()", "empty"):
        return Partition()
    if "^" in s or "*" in s:
        counts: dict[int, int] = {}
        for tok in s.split("*"):
            m = _EXP_TOKEN.match(tok)
            if not m:
                raise ParseError(f"bad exponent-form factor {tok!r} in {text!r}")
            base = int(m.group(1))
            exp = int(m.group(2)) if m.group(2) is not None else 1
            if base < 1:
                raise ParseError(f"parts must be positive in {text!r}")
            if base in counts:
                raise ParseError(f"part {base} repeated in {text!r}")
            counts[base] = exp
        return from_parts(a for a, e in counts.items() for _ in range(e))
    try:
        vals = [int(tok) for tok in s.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad partition {text!r}") from exc
    if any(v < 0 for v in vals):
        raise ParseError(f"negative part in {text!r}")
    if normalize:
        return from_parts(vals)
    if any(v == 0 for v in vals):
        raise ParseError(f"zero part in {text!r} (use --normalize to drop zeros)")
    if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
        raise ParseError(f"{text!r} is not non-increasing (use --normalize to sort)")
    return Partition(tuple(vals))


def partitions_of(n: int, max_part: Optional[int] = None):
    """Yield all partitions of ``n`` with parts at most ``max_part``."""
    if max_part is None:
        max_part = n

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for a in range(min(rest, cap), 0, -1):
            for tail in rec(rest - a, a):
                yield (a,) + tail

    for p in rec(n, max_part):
        yield Partition(p)


def partitions_up_to(n: int):
    for w in range(n + 1):
        yield from partitions_of(w)
