"""Cross-route consistency suites, as run by ``demflag verify``."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterator, Optional

from .characters import (
    demazure2_character_two_ways,
    graded_character,
    graded_character_via_level,
    irr_character,
)
from .flags import (
    jordan_holder,
    level2_closed,
    level2_inversion_coeff,
    multiplicity,
    multiplicity_table,
)
from .graph import multiplicity_via_graph
from .partition import demazure_dimension, partitions_up_to
from .qpoly import ONE, ZERO
from .series import (
    functional_equation,
    level23,
    level23_via_graph,
    q1_multiplicity,
    six_step_sides,
    theta_identities,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    seconds: float
    failure: Optional[str] = None

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Bounds:
    max_weight: int = 10
    max_s: int = 20
    order: int = 20


# Each suite yields (ok, description) pairs; the runner stops at the first failure.
Check = Iterator[tuple[bool, str]]


def flags_vs_graph(b: Bounds) -> Check:
    for xi in partitions_up_to(b.max_weight):
        for l in range(max(2, xi.largest), xi.largest + 3):
            for r in range(xi.weight % 2, xi.weight + 1, 2):
                yield multiplicity(xi, l, r) == multiplicity_via_graph(xi, l, r), f"xi={xi} l={l} r={r}"


def fast_path(b: Bounds) -> Check:
    for xi in partitions_up_to(b.max_weight):
        for l in range(max(1, xi.largest), xi.largest + 4):
            a = multiplicity_table(xi, l).entries
            c = multiplicity_table(xi, l, fast_path=False).entries
            yield dict(a) == dict(c), f"xi={xi} l={l}"


def level2_closed_vs_recursion(b: Bounds) -> Check:
    for s in range(b.max_s + 1):
        for r in range(s + 1):
            yield level2_closed(s, r) == multiplicity((1,) * s, 2, r), f"s={s} r={r}"


def dimension_sums(b: Bounds) -> Check:
    for xi in partitions_up_to(b.max_weight):
        if not xi.parts:
            continue
        for l in sorted({xi.largest, xi.largest + 1, xi.weight}):
            t = multiplicity_table(xi, l)
            yield t.dimension_sum() == xi.dimension(), f"xi={xi} l={l}"


def inversion_identity(b: Bounds) -> Check:
    n = b.max_s
    for s in range(n + 1):
        for r in range(n + 1):
            acc = ZERO
            for p in range(s // 2 + 1):
                acc = acc + level2_inversion_coeff(s, p) * level2_closed(s - 2 * p, r)
            yield acc == (ONE if r == s else ZERO), f"s={s} r={r}"


def jordan_hoelder(b: Bounds) -> Check:
    for m in range(b.max_weight + 1):
        for l in range(m // 2 + 1):
            got = multiplicity((1,) * m, max(m, 1), m - 2 * l)
            yield got == jordan_holder(m, l), f"m={m} l={l}"


def series_vs_graph(b: Bounds) -> Check:
    for s in range(b.max_s + 1):
        for r in range(s + 1):
            yield level23(s, r) == level23_via_graph(s, r), f"s={s} r={r}"
        dim = sum(level23(s, r).eval_q1() * demazure_dimension(3, r) for r in range(s + 1))
        yield dim == demazure_dimension(2, s), f"dimension s={s}"


def generating_functions(b: Bounds) -> Check:
    for name, (lhs, rhs) in theta_identities(b.order).items():
        yield lhs.agrees_with(rhs), f"theta identity {name}"
    for n in range(3, 14):
        lhs, rhs = functional_equation(n, b.order)
        yield lhs.agrees_with(rhs), f"functional equation P_{n}"
    for r in range(6, 13):
        lhs, rhs = six_step_sides(r, b.order)
        yield lhs == rhs, f"q=1 six-step recursion r={r}"
    for s in range(b.max_s + 1):
        for r in range(s + 1):
            yield q1_multiplicity(s, r) == level23(s, r).eval_q1(), f"q=1 multiplicity s={s} r={r}"


def characters(b: Bounds) -> Check:
    for xi in partitions_up_to(b.max_weight):
        ch = graded_character(xi)
        yield ch.is_symmetric(), f"symmetry xi={xi}"
        yield ch.q0_slice() == irr_character(xi.weight).q0_slice(), f"q^0 slice xi={xi}"
        yield ch.dimension() == xi.dimension(), f"dimension xi={xi}"
        if xi.parts and xi.weight <= 8:
            for l in range(xi.largest, xi.weight + 1):
                yield graded_character_via_level(xi, l) == ch, f"level {l} xi={xi}"
    for s in range(min(b.max_s, 14) + 1):
        direct, combo = demazure2_character_two_ways(s)
        yield direct == combo, f"D(2,{s}w) two ways"


SUITES: dict[str, Callable[[Bounds], Check]] = {
    "flags_vs_graph": flags_vs_graph,
    "fast_path": fast_path,
    "level2_closed_vs_recursion": level2_closed_vs_recursion,
    "dimension_sums": dimension_sums,
    "inversion_identity": inversion_identity,
    "jordan_hoelder": jordan_hoelder,
    "series_vs_graph": series_vs_graph,
    "generating_functions": generating_functions,
    "characters": characters,
}


def run_suite(name: str, bounds: Bounds) -> SuiteResult:
    t0 = time.perf_counter()
    n = 0
    for ok, what in SUITES[name](bounds):
        n += 1
        if not ok:
            return SuiteResult(name, False, n, time.perf_counter() - t0, what)
    return SuiteResult(name, True, n, time.perf_counter() - t0)


def run_all(bounds: Bounds, names=None, jobs: int = 1) -> list[SuiteResult]:
    names = list(names or SUITES)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_suite, names, [bounds] * len(names)))
    return [run_suite(n, bounds) for n in names]
