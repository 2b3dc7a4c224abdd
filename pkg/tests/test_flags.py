import threading

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import partitions
from oracles import as_poly, naive, p2
from demflag.errors import DomainError, LevelTooSmall
from demflag.flags import (
    FlagEngine,
    MultiplicityTable,
    bn_demazure_in_weyl_coeffs,
    bn_weyl_in_demazure_coeffs,
    jordan_holder,
    level2_closed,
    level2_inversion_coeff,
    multiplicity,
    multiplicity_table,
)
from demflag.partition import Partition, demazure_partition, partitions_up_to
from demflag.qpoly import ONE, ZERO, monomial


@pytest.mark.parametrize("n", range(0, 10))
def test_matches_naive_oracle(n):
    for xi in partitions_up_to(n):
        if xi.weight != n:
            continue
        for l in range(max(1, xi.largest), xi.largest + 3):
            got = multiplicity_table(xi, l)
            want = {r: as_poly(p) for r, p in naive(xi.parts, l).items() if as_poly(p)}
            assert dict(got.entries) == want, (xi, l)


@pytest.mark.parametrize("s", range(0, 21))
def test_level2_recurrence_oracle(s):
    for r in range(s + 1):
        assert multiplicity((1,) * s, 2, r) == p2(s, r)
        assert level2_closed(s, r) == p2(s, r)


def test_known_level3_example():
    assert multiplicity((1,) * 8, 3, 2) == sum((monomial(d) for d in range(8, 16)), ZERO)


@given(partitions(12), st.integers(0, 3))
def test_dimension_conservation(p, extra):
    xi = Partition(p)
    l = max(1, xi.largest) + extra
    assert multiplicity_table(xi, l).dimension_sum() == xi.dimension()


@given(partitions(12), st.integers(0, 3))
def test_positivity_and_support(p, extra):
    xi = Partition(p)
    l = max(1, xi.largest) + extra
    t = multiplicity_table(xi, l)
    b_top = sum(1 for a in p if a == l)
    for r, poly in t.entries.items():
        assert poly.is_nonnegative()
        assert (xi.weight - r) % 2 == 0
        assert b_top * l <= r <= xi.weight
    # the top Demazure quotient occurs once, in degree zero
    assert t[xi.weight] == ONE


@given(partitions(10), st.integers(0, 2))
def test_vanishing_outside_range(p, extra):
    xi = Partition(p)
    l = max(1, xi.largest) + extra
    n = xi.weight
    assert multiplicity(xi, l, n + 2) == ZERO
    assert multiplicity(xi, l, -1) == ZERO
    assert multiplicity(xi, l, n + 1) == ZERO


@given(partitions(12), st.integers(0, 2))
def test_fast_path_is_invisible(p, extra):
    xi = Partition(p)
    l = max(1, xi.largest) + extra
    assert dict(multiplicity_table(xi, l).entries) == dict(
        multiplicity_table(xi, l, fast_path=False).entries
    )


@given(partitions(12))
def test_peeling_the_largest_part(p):
    xi = Partition(p)
    if xi.length < 2:
        return
    m = xi.largest
    rest = Partition(p[1:])
    for r in range(m, xi.weight + 1):
        want = multiplicity(rest, m, r - m)
        want = want.shift((xi.weight - r) // 2) if (xi.weight - r) % 2 == 0 else ZERO
        assert multiplicity(xi, m, r) == want


@given(partitions(9), st.integers(1, 2))
def test_chaining_levels(p, extra):
    # a level-m flag refines through every intermediate level
    xi = Partition(p)
    lo = max(1, xi.largest)
    hi = lo + extra
    for r in range(xi.weight % 2, xi.weight + 1, 2):
        acc = ZERO
        for mid, c in multiplicity_table(xi, hi - 1).entries.items():
            acc = acc + c * multiplicity_table(demazure_partition(hi - 1, mid), hi)[r]
        assert acc == multiplicity(xi, hi, r)


def test_level_too_small():
    with pytest.raises(LevelTooSmall):
        multiplicity((3, 1), 2, 2)
    with pytest.raises(LevelTooSmall):
        multiplicity_table((), 0)
    with pytest.raises(LevelTooSmall):
        FlagEngine().table((2,), 1)


@pytest.mark.parametrize("s", range(0, 21))
def test_inversion_composes_to_identity(s):
    for r in range(s + 1):
        acc = ZERO
        for p in range(s // 2 + 1):
            acc = acc + level2_inversion_coeff(s, p) * level2_closed(s - 2 * p, r)
        assert acc == (ONE if r == s else ZERO)


def test_inversion_domain():
    with pytest.raises(DomainError):
        level2_inversion_coeff(4, 3)
    with pytest.raises(DomainError):
        level2_inversion_coeff(-1, 0)


@pytest.mark.parametrize("m", range(0, 13))
def test_jordan_hoelder(m):
    for l in range(m // 2 + 1):
        assert multiplicity((1,) * m, max(m, 1), m - 2 * l) == jordan_holder(m, l)
        assert jordan_holder(m, l).is_nonnegative()


def test_jordan_hoelder_domain():
    with pytest.raises(DomainError):
        jordan_holder(3, 2)


@given(st.integers(0, 20))
def test_bn_coefficients(lam):
    weyl = bn_weyl_in_demazure_coeffs(lam)
    for r, c in weyl.items():
        assert c == level2_closed(lam, lam - 2 * r)
    inv = bn_demazure_in_weyl_coeffs(lam)
    assert inv[0] == ONE
    assert all(c == level2_inversion_coeff(lam, s) for s, c in inv.items())
    assert sum(c.eval_q1() for c in weyl.values()) == 2 ** (lam // 2)


def test_bn_domain():
    with pytest.raises(DomainError):
        bn_weyl_in_demazure_coeffs(-1)


def test_table_validation():
    xi = Partition((2, 1, 1))
    with pytest.raises(ValueError):
        MultiplicityTable(xi, 2, {3: ONE})
    with pytest.raises(ValueError):
        MultiplicityTable(xi, 2, {4: -ONE})
    with pytest.raises(ValueError):
        MultiplicityTable(Partition((2, 2)), 2, {0: ONE})


def test_table_serialisation_is_ordered():
    t = multiplicity_table((1,) * 6, 2)
    assert t.weights() == sorted(t.weights(), reverse=True)
    js = t.to_json()
    assert list(js["entries"]) == [str(r) for r in t.weights()]
    rows = t.csv_rows()
    assert rows[0][0] == 6 and all(c > 0 for _, _, c in rows)


def test_engine_is_thread_safe():
    eng = FlagEngine()
    xs = [tuple(x.parts) for x in partitions_up_to(9) if x.parts]
    results = {}

    def work(i):
        results[i] = [eng.table(x, max(x) + 1) for x in xs]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    ref = [FlagEngine(fast_path=False).table(x, max(x) + 1) for x in xs]
    assert all(results[i] == ref for i in range(4))
