"""Graded multiplicities ``[V(xi) : D(l, r w)]_q`` of level-``l`` Demazure
modules in a Demazure flag of ``V(xi)``.

The engine works on whole tables ``r -> polynomial`` for a pair ``(xi, l)``
and splits ``xi`` along the short exact sequence

    0 -> tau_{(s-1) xi_s} V(xi^-) -> V(xi) -> V(xi^+) -> 0

until it reaches partitions whose module already is a level-``l`` Demazure
module.  When the largest part equals ``l`` that part can be peeled off
directly (``fast_path``), which keeps level-2 computations linear.

The closed level-two formulas and their inverses live here too.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .errors import DomainError, LevelTooSmall
from .partition import (
    Partition,
    demazure_dimension,
    demazure_shape,
    drop_max_part,
    exponents,
    xi_minus,
    xi_plus,
)
from .qpoly import ONE, ZERO, QPolynomial, qbinom

__all__ = [
    "FlagEngine",
    "MultiplicityTable",
    "multiplicity",
    "multiplicity_table",
    "clear_cache",
    "level2_closed",
    "level2_inversion_coeff",
    "jordan_holder",
    "bn_weyl_in_demazure_coeffs",
    "bn_demazure_in_weyl_coeffs",
]

PartitionLike = Union[Partition, Iterable[int]]


def as_partition(xi: PartitionLike) -> Partition:
    if isinstance(xi, Partition):
        return xi
    return Partition(tuple(xi))


def _ceil_half(n: int) -> int:
    return -(-n // 2)


@dataclass(frozen=True)
class MultiplicityTable:
    """All nonzero multiplicities of level-``level`` Demazure modules in
    ``V(xi)``, keyed by the weight ``r``."""

    xi: Partition
    level: int
    entries: Mapping[int, QPolynomial] = field(default_factory=dict)

    def __post_init__(self):
        ents = {r: p for r, p in sorted(self.entries.items(), reverse=True) if p}
        n = self.xi.weight
        b_top = exponents(self.xi, self.level)[-1] if self.level >= 1 else 0
        for r, p in ents.items():
            if r < 0 or r > n or (n - r) % 2:
                raise ValueError(f"weight {r} cannot occur in V({self.xi})")
            if r < b_top * self.level:
                raise ValueError(f"weight {r} is below the bound {b_top * self.level}")
            if not p.is_nonnegative():
                raise ValueError(f"negative coefficient in multiplicity at r={r}: {p}")
        object.__setattr__(self, "entries", MappingProxyType(ents))

    def __getitem__(self, r: int) -> QPolynomial:
        return self.entries.get(r, ZERO)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def weights(self) -> list[int]:
        """Weights in descending order."""
        return list(self.entries)

    def dimension_sum(self) -> int:
        """``sum_r mult(r)|_{q=1} * dim D(level, r w)``; equals ``dim V(xi)``."""
        return sum(
            p.eval_q1() * demazure_dimension(self.level, r) for r, p in self.entries.items()
        )

    def to_json(self) -> dict:
        return {
            "xi": list(self.xi.parts),
            "level": self.level,
            "entries": {str(r): p.to_json() for r, p in self.entries.items()},
        }

    def csv_rows(self) -> list[tuple[int, int, int]]:
        """``(r, degree, coefficient)`` rows, r descending then degree ascending."""
        return [
            (r, d, c) for r, p in self.entries.items() for d, c in p.terms().items()
        ]


Table = dict[int, QPolynomial]


def _add_tables(a: Table, b: Table, shift: int) -> Table:
    out = dict(a)
    for r, p in b.items():
        out[r] = out.get(r, ZERO) + p.shift(shift)
    return {r: p for r, p in out.items() if p}


class FlagEngine:
    """Memoized multiplicity tables keyed on ``(partition, level)``.

    One engine may be shared between threads; table construction is
    serialized by an internal lock.  ``fast_path=False`` disables peeling
    off a part equal to the level, leaving only the exact-sequence split.
    """

    def __init__(self, fast_path: bool = True):
        self.fast_path = fast_path
        self._memo: dict[tuple[Partition, int], Table] = {}
        self._lock = threading.RLock()

    def clear(self) -> None:
        with self._lock:
            self._memo.clear()

    def __len__(self) -> int:
        return len(self._memo)

    def _plan(self, xi: Partition, l: int):
        """Return ``(kind, children)`` describing how to evaluate ``xi``."""
        if not xi.parts:
            return "empty", ()
        w = demazure_shape(xi, l)
        if w is not None:
            return "base", ()
        if self.fast_path and xi.largest == l:
            return "peel", (drop_max_part(xi, l),)
        return "split", (xi_plus(xi), xi_minus(xi))

    def _evaluate(self, xi: Partition, l: int, kind: str, children) -> Table:
        if kind == "empty":
            return {0: ONE}
        if kind == "base":
            return {xi.weight: ONE}
        if kind == "peel":
            sub = self._memo[(children[0], l)]
            n = xi.weight
            return {r + l: p.shift((n - r - l) // 2) for r, p in sub.items()}
        plus, minus = children
        return _add_tables(
            self._memo[(plus, l)],
            self._memo[(minus, l)],
            (len(xi) - 1) * xi.smallest,
        )

    def table(self, xi: PartitionLike, l: int) -> Table:
        xi = as_partition(xi)
        if l < 1 or l < xi.largest:
            raise LevelTooSmall(
                f"V({xi}) has a level-{l} Demazure flag only when {l} >= {max(xi.largest, 1)}"
            )
        with self._lock:
            root = (xi, l)
            # explicit stack: recursion depth grows with |xi|
            stack = [root]
            pending: dict[tuple[Partition, int], tuple] = {}
            while stack:
                key = stack[-1]
                if key in self._memo:
                    stack.pop()
                    continue
                plan = pending.get(key)
                if plan is None:
                    plan = pending[key] = self._plan(*key)
                missing = [(c, l) for c in plan[1] if (c, l) not in self._memo]
                if missing:
                    stack.extend(missing)
                    continue
                self._memo[key] = self._evaluate(key[0], l, *plan)
                stack.pop()
            return dict(self._memo[root])

    def multiplicity(self, xi: PartitionLike, l: int, r: int) -> QPolynomial:
        xi = as_partition(xi)
        if l < 1 or l < xi.largest:
            raise LevelTooSmall(f"level {l} is below the largest part of {xi}")
        n = xi.weight
        if r < 0 or r > n or (n - r) % 2:
            return ZERO
        return self.table(xi, l).get(r, ZERO)


_ENGINES = {True: FlagEngine(fast_path=True), False: FlagEngine(fast_path=False)}


def clear_cache() -> None:
    for e in _ENGINES.values():
        e.clear()


def multiplicity(xi: PartitionLike, l: int, r: int, *, fast_path: bool = True) -> QPolynomial:
    """The graded multiplicity ``[V(xi) : D(l, r w)]_q``.

    Raises :class:`LevelTooSmall` when ``l`` is below the largest part.
    """
    return _ENGINES[fast_path].multiplicity(xi, l, r)


def multiplicity_table(xi: PartitionLike, l: int, *, fast_path: bool = True) -> MultiplicityTable:
    xi = as_partition(xi)
    return MultiplicityTable(xi, l, _ENGINES[fast_path].table(xi, l))


def level2_closed(s: int, r: int) -> QPolynomial:
    """``[W_loc(s w) : D(2, r w)]_q`` in closed form."""
    if s < 0 or r < 0 or r > s or (s - r) % 2:
        return ZERO
    p = (s - r) // 2
    return qbinom(s // 2, p).shift(p * _ceil_half(s))


def level2_inversion_coeff(s: int, p: int) -> QPolynomial:
    """Signed coefficient of ``ch W_loc((s-2p) w)`` in ``ch D(2, s w)``."""
    if s < 0 or p < 0 or p > s // 2:
        raise DomainError(f"need 0 <= p <= floor(s/2), got s={s}, p={p}")
    # p*(ceil(s/2) - (p-1)/2), kept in integers
    exp = p * _ceil_half(s) - p * (p - 1) // 2
    c = qbinom(s // 2, p).shift(exp)
    return -c if p % 2 else c


def jordan_holder(m: int, l: int) -> QPolynomial:
    """Graded multiplicity of ``ev_0 V((m-2l) w)`` in ``W_loc(m w)``."""
    if l < 0 or m - 2 * l < 0:
        raise DomainError(f"need 0 <= l and m - 2l >= 0, got m={m}, l={l}")
    return qbinom(m, l) - qbinom(m, l - 1)


def bn_weyl_in_demazure_coeffs(lambda_hn: int) -> dict[int, QPolynomial]:
    """Coefficients of ``ch D(1, lambda - r alpha_n)`` in ``ch W_loc(lambda)``
    for type ``B_n``, indexed by ``r``; only the short-root value
    ``lambda(h_n)`` matters."""
    if lambda_hn < 0:
        raise DomainError("lambda(h_n) must be non-negative")
    c = _ceil_half(lambda_hn)
    return {r: qbinom(lambda_hn // 2, r).shift(r * c) for r in range(lambda_hn // 2 + 1)}


def bn_demazure_in_weyl_coeffs(lambda_hn: int) -> dict[int, QPolynomial]:
    """Signed coefficients of ``ch W_loc(lambda - s alpha_n)`` in ``ch D(1, lambda)``."""
    if lambda_hn < 0:
        raise DomainError("lambda(h_n) must be non-negative")
    return {s: level2_inversion_coeff(lambda_hn, s) for s in range(lambda_hn // 2 + 1)}
