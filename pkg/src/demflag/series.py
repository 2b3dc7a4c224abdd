"""Level-two Demazure modules filtered by level-three ones.

``level23(s, r) = [D(2, s w) : D(3, r w)]_q`` is computed from its own
recurrence and checked against the graph route.  The generating functions

    P_{2r}(q, u)   = sum_s p_{2s, 2r} u^s
    P_{2r+1}(q, u) = sum_s p_{2s+1, 2r+1} u^(s+1)

are assembled from that table, so the coefficient of ``u^t`` in ``P_r``
is the multiplicity for ``s = 2t`` (``r`` even) or ``s = 2t - 1`` (``r`` odd).
Under this indexing the partial theta identities hold as stated, e.g.
``P_0(q, u) = Theta(q^2, u^2)``, and :func:`coefficient_index` gives the
extraction index used by the numerical (``q = 1``) formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import multiplicity_via_graph
from .partition import level2_partition
from .qpoly import ONE, Q, ZERO, QPolynomial, USeries, monomial

__all__ = [
    "DEFAULT_ORDER",
    "Level23Table",
    "level23",
    "level23_table",
    "level23_via_graph",
    "gen_fn",
    "partial_theta",
    "theta_identities",
    "functional_equation",
    "coefficient_index",
    "q1_initial",
    "q1_series",
    "proposition_series",
    "q1_numeric",
    "q1_multiplicity",
    "six_step_sides",
]

DEFAULT_ORDER = 20


@lru_cache(maxsize=None)
def level23(s: int, r: int) -> QPolynomial:
    """``[D(2, s w) : D(3, r w)]_q`` from the level-three recurrence."""
    if s < 0 or r < 0 or r > s or (s - r) % 2:
        return ZERO
    if s == r and s <= 2:
        return ONE
    if s < 3:
        return ZERO
    s1, s0 = divmod(s, 2)
    out = level23(s - 4 + 2 * s0, r).shift((s1 + s0 - 1) * (2 - s0))
    if r >= 3:
        out = out + level23(s - 3, r - 3).shift((s - r) // 2)
    return out


def level23_via_graph(s: int, r: int) -> QPolynomial:
    """Same quantity through ``H_3`` of the partition realising ``D(2, s w)``."""
    return multiplicity_via_graph(level2_partition(s), 3, r)


@dataclass(frozen=True)
class Level23Table:
    smax: int
    entries: dict

    def __getitem__(self, key: tuple[int, int]) -> QPolynomial:
        return self.entries.get(key, ZERO)

    def to_json(self) -> dict:
        rows: dict[str, dict] = {}
        for (s, r), p in sorted(self.entries.items()):
            rows.setdefault(str(s), {})[str(r)] = p.to_json()
        return {"smax": self.smax, "entries": rows}

    def csv_rows(self) -> list[tuple[int, int, int, int]]:
        return [
            (s, r, d, c)
            for (s, r), p in sorted(self.entries.items())
            for d, c in p.terms().items()
        ]


def level23_table(smax: int) -> Level23Table:
    ents = {}
    for s in range(smax + 1):
        for r in range(s % 2, s + 1, 2):
            p = level23(s, r)
            if p:
                ents[(s, r)] = p
    return Level23Table(smax, ents)


def gen_fn(n: int, order: int = DEFAULT_ORDER) -> USeries:
    """``P_n(q, u)`` truncated after ``u^order``."""
    if n % 2 == 0:
        coeffs = [level23(2 * t, n) for t in range(order + 1)]
    else:
        coeffs = [ZERO] + [level23(2 * t - 1, n) for t in range(1, order + 1)]
    return USeries(coeffs, order)


def coefficient_index(s: int, r: int) -> int:
    """Power of ``u`` in ``P_r`` that carries ``[D(2, s w) : D(3, r w)]``."""
    return s // 2 if r % 2 == 0 else (s + 1) // 2


def partial_theta(order: int = DEFAULT_ORDER) -> USeries:
    """``Theta(q, u) = sum_s q^(s^2) u^s`` truncated after ``u^order``."""
    return USeries([monomial(s * s) for s in range(order + 1)], order)


def theta_identities(order: int = DEFAULT_ORDER) -> dict[str, tuple[USeries, USeries]]:
    """Both sides of the three partial theta identities, to ``u^order``."""
    th2 = partial_theta(order).q_power(2)  # Theta(q^2, v)

    def at(scale: int) -> USeries:
        # Theta(q^2, q^scale u^2)
        return th2.scale_u(scale).u_power(2)

    p0 = at(0)
    p2 = at(2).shift_u(1)
    p1 = at(1).shift_u(1) + at(3).shift_u(2) * Q
    return {
        "P0": (gen_fn(0, order), p0.truncate(order)),
        "P1": (gen_fn(1, order), p1.truncate(order)),
        "P2": (gen_fn(2, order), p2.truncate(order)),
    }


def functional_equation(n: int, order: int = DEFAULT_ORDER) -> tuple[USeries, USeries]:
    """Both sides of the functional equation for ``P_n``.

    Even ``n = 2r`` (``r >= 2``):
        ``q^r P_2r(u) = u q P_{2r-3}(qu) + u^2 q^(r+2) P_2r(q^2 u)``
    Odd ``n = 2r+1`` (``r >= 1``):
        ``q^r P_{2r+1}(u) = u^2 q P_{2r-2}(qu) + u q^r P_{2r+1}(qu)``
    """
    r, odd = divmod(n, 2)
    if (not odd and r < 2) or (odd and r < 1):
        raise ValueError(f"no functional equation for P_{n}")
    pn = gen_fn(n, order)
    prev = gen_fn(n - 3, order)
    lhs = pn * monomial(r)
    if not odd:
        rhs = prev.scale_u(1).shift_u(1) * Q + pn.scale_u(2).shift_u(2) * monomial(r + 2)
    else:
        rhs = prev.scale_u(1).shift_u(2) * Q + pn.scale_u(1).shift_u(1) * monomial(r)
    return lhs, rhs.truncate(order)


# -- q = 1 ----------------------------------------------------------------
# Rational functions in u are carried as integer coefficient lists; dividing
# by (1 - u^k) is the recurrence x_n = y_n + x_{n-k}.


def _shift(seq: list[int], b: int) -> list[int]:
    return ([0] * b + seq)[: len(seq)]


def _div_one_minus(seq: list[int], k: int) -> list[int]:
    out = list(seq)
    for n in range(k, len(out)):
        out[n] += out[n - k]
    return out


def _mul_one_minus(seq: list[int], k: int) -> list[int]:
    return [seq[n] - (seq[n - k] if n >= k else 0) for n in range(len(seq))]


def q1_initial(n: int, order: int = DEFAULT_ORDER) -> list[int]:
    """``P_0 .. P_5`` at ``q = 1`` as coefficient lists up to ``u^order``."""
    one = [1] + [0] * order
    # (numerator power of u, divide by (1-u)?, divide by (1-u^2)?)
    shape = {
        0: (0, False, True),
        1: (1, True, False),
        2: (1, False, True),
        3: (2, True, True),
        4: (2, True, True),
        5: (3, True, True),
    }[n]
    seq = _shift(one, shape[0])
    if shape[1]:
        seq = _div_one_minus(seq, 1)
    if shape[2]:
        seq = _div_one_minus(seq, 2)
    return seq


def q1_series(n: int, order: int = DEFAULT_ORDER) -> list[int]:
    """``P_n(1, u)`` from the initial data and the two-step recurrences
    ``(1 - u^2) P_2r = u P_{2r-3}``, ``(1 - u) P_{2r+1} = u^2 P_{2r-2}``."""
    if n < 6:
        return q1_initial(n, order)
    prev = q1_series(n - 3, order)
    if n % 2 == 0:
        return _div_one_minus(_shift(prev, 1), 2)
    return _div_one_minus(_shift(prev, 2), 1)


def proposition_series(r: int, order: int = DEFAULT_ORDER) -> list[int]:
    """``u^(3 r0) P_{r1} / ((1-u)(1-u^2))^r0`` with ``r = 6 r0 + r1``."""
    r0, r1 = divmod(r, 6)
    seq = _shift(q1_initial(r1, order), 3 * r0)
    for _ in range(r0):
        seq = _div_one_minus(_div_one_minus(seq, 1), 2)
    return seq


def q1_numeric(r: int, coeff_index: int) -> int:
    """Coefficient of ``u^coeff_index`` in :func:`proposition_series`."""
    if coeff_index < 0:
        return 0
    return proposition_series(r, coeff_index)[coeff_index]


def q1_multiplicity(s: int, r: int) -> int:
    """Numerical multiplicity ``[D(2, s w) : D(3, r w)]`` read off the
    ``q = 1`` generating function at :func:`coefficient_index`."""
    if s < 0 or r < 0 or r > s or (s - r) % 2:
        return 0
    return q1_numeric(r, coefficient_index(s, r))


def six_step_sides(r: int, order: int = DEFAULT_ORDER) -> tuple[list[int], list[int]]:
    """``(1-u)(1-u^2) P_r`` and ``u^3 P_{r-6}`` at ``q = 1``."""
    lhs = _mul_one_minus(_mul_one_minus(q1_series(r, order), 1), 2)
    return lhs, _shift(q1_series(r - 6, order), 3)
