import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import partitions
from demflag.errors import (
    EmptyPartition,
    LargestPartMismatch,
    MaxPartExceedsLevel,
    ParseError,
)
from demflag.partition import (
    Partition,
    demazure_dimension,
    demazure_partition,
    demazure_shape,
    drop_max_part,
    exponents,
    from_exponents,
    from_parts,
    level2_partition,
    parse_partition,
    partitions_of,
    poset_less,
    xi_minus,
    xi_plus,
)


def test_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert Partition().weight == 0 and Partition().dimension() == 1


def test_basic_properties():
    xi = Partition((3, 2, 2, 1))
    assert (xi.weight, xi.length, xi.largest, xi.smallest) == (8, 4, 3, 1)
    assert xi.dimension() == 4 * 3 * 3 * 2
    assert xi.exponent_string() == "1*2^2*3"
    assert str(xi) == "3,2,2,1"


@given(partitions(12))
def test_exponents_round_trip(p):
    xi = Partition(p)
    l = max(xi.largest, 1)
    b = exponents(xi, l)
    assert len(b) == l
    assert from_exponents(b) == xi
    assert sum(m * bm for m, bm in zip(range(1, l + 1), b)) == xi.weight


def test_exponents_rejects_large_part():
    with pytest.raises(MaxPartExceedsLevel):
        exponents(Partition((3,)), 2)


@given(partitions(12))
def test_plus_minus_weights_and_order(p):
    xi = Partition(p)
    if not p:
        with pytest.raises(EmptyPartition):
            xi_plus(xi)
        with pytest.raises(EmptyPartition):
            xi_minus(xi)
        return
    plus, minus = xi_plus(xi), xi_minus(xi)
    if xi.length == 1:
        # single part: the sequence degenerates to V(xi) itself
        assert plus == xi and minus == Partition()
        return
    assert plus.weight == xi.weight
    assert minus.weight == xi.weight - 2 * xi.smallest
    assert poset_less(plus, xi) and poset_less(minus, plus)
    assert plus.largest >= xi.largest
    assert xi.dimension() == plus.dimension() + minus.dimension()


def test_plus_minus_examples():
    xi = Partition((2, 1, 1))
    assert xi_plus(xi) == Partition((2, 2))
    assert xi_minus(xi) == Partition((2,))
    assert xi_plus(Partition((3, 1))) == Partition((4,))
    assert xi_minus(Partition((3, 1))) == Partition((2,))


def test_drop_max_part():
    assert drop_max_part(Partition((3, 2, 1)), 3) == Partition((2, 1))
    with pytest.raises(LargestPartMismatch):
        drop_max_part(Partition((2, 1)), 3)


def test_demazure_shape():
    assert demazure_shape(Partition(), 3) == 0
    assert demazure_shape(Partition((3, 3, 1)), 3) == 7
    assert demazure_shape(Partition((3, 2, 1)), 3) is None
    assert demazure_shape(Partition((2,)), 5) == 2
    with pytest.raises(MaxPartExceedsLevel):
        demazure_shape(Partition((4,)), 3)


@given(st.integers(1, 6), st.integers(0, 30))
def test_demazure_partition(l, r):
    xi = demazure_partition(l, r)
    assert xi.weight == r
    assert demazure_shape(xi, l) == r
    assert demazure_dimension(l, r) == xi.dimension()


def test_level2_partition():
    assert level2_partition(5) == Partition((2, 2, 1))
    assert level2_partition(4) == Partition((2, 2))


@pytest.mark.parametrize(
    "text,parts",
    [
        ("1^8", (1,) * 8),
        ("1^2*3", (3, 1, 1)),
        ("2^3 * 3^1", (3, 2, 2, 2)),
        ("3,2,2", (3, 2, 2)),
        ("", ()),
        ("()", ()),
        ("empty", ()),
        ("4", (4,)),
    ],
)
def test_parse(text, parts):
    assert parse_partition(text).parts == parts


@pytest.mark.parametrize("bad", ["1,3", "2,0", "a", "1^", "0^2", "1^2*1^3", "-1", "1,,2"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_partition(bad)


def test_parse_normalize():
    assert parse_partition("1,3,0", normalize=True).parts == (3, 1)


@given(partitions(12))
def test_parse_round_trips(p):
    xi = Partition(p)
    assert parse_partition(xi.exponent_string()) == xi
    assert parse_partition(str(xi)) == xi
    assert from_parts(reversed(p)) == xi


def test_partition_counts():
    # number of partitions p(n)
    assert [sum(1 for _ in partitions_of(n)) for n in range(10)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert sum(1 for _ in partitions_of(6, 2)) == 4
