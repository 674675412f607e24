from hypothesis import given
from hypothesis import strategies as st
import pytest

from abelian_points.abgroup import (
    FiniteAbelianGroup,
    HodgeVector,
    assemble_from_primary,
    format_group,
    group_to_json,
    parse_group,
    partitions_with_slots,
)
from abelian_points.errors import (
    InvalidInputError,
    ParseError,
    TooManyGeneratorsError,
)


def test_primary_part_examples():
    g = FiniteAbelianGroup.from_factors([3, 12])
    assert g.primary_part(2).exponents == (0, 0, 0, 2)
    assert g.primary_part(3).exponents == (0, 0, 1, 1)
    assert FiniteAbelianGroup.trivial().primary_part(5).exponents == (0, 0, 0, 0)


def test_primary_part_too_many_generators():
    g = FiniteAbelianGroup.from_factors([2] * 5)
    with pytest.raises(TooManyGeneratorsError):
        g.primary_part(2)
    assert g.primary_part(3).exponents == (0, 0, 0, 0)


def test_assemble_examples():
    g = assemble_from_primary(
        [HodgeVector(2, (0, 0, 0, 2)), HodgeVector(3, (0, 0, 1, 1))]
    )
    assert g.invariants == (1, 1, 3, 12)
    assert assemble_from_primary([]) == FiniteAbelianGroup.trivial()
    assert assemble_from_primary([HodgeVector(2, (0, 0, 1, 2))]).invariants == (
        1,
        1,
        2,
        4,
    )


def test_assemble_rejects_duplicate_prime():
    with pytest.raises(InvalidInputError):
        assemble_from_primary(
            [HodgeVector(2, (0, 0, 0, 1)), HodgeVector(2, (0, 0, 1, 1))]
        )


def test_partitions_examples():
    assert partitions_with_slots(2, 4) == [(0, 0, 0, 2), (0, 0, 1, 1)]
    assert partitions_with_slots(0, 4) == [(0, 0, 0, 0)]
    assert partitions_with_slots(3, 4) == [(0, 0, 0, 3), (0, 0, 1, 2), (0, 1, 1, 1)]


def _partition_count(n, max_parts):
    # partitions of n into at most max_parts parts, via the conjugate
    # recursion on largest part
    def count(n, largest):
        if n == 0:
            return 1
        if largest == 0:
            return 0
        return sum(count(n - largest * k, largest - 1) for k in range(n // largest + 1))

    # parts bounded in number <-> conjugate parts bounded in size
    def count_at_most(n, k):
        if n == 0:
            return 1
        total = 0

        def rec(remaining, max_part, slots):
            if remaining == 0:
                return 1
            if slots == 0 or max_part == 0:
                return 0
            return sum(
                rec(remaining - p, p, slots - 1)
                for p in range(min(max_part, remaining), 0, -1)
            )

        return rec(n, n, k)

    return count_at_most(n, max_parts)


def test_partition_counts_cross_checked():
    for e in range(13):
        assert len(partitions_with_slots(e, 4)) == _partition_count(e, 4)


def test_partitions_sorted_lexicographically():
    parts = partitions_with_slots(6, 4)
    assert parts == sorted(parts)
    assert all(list(p) == sorted(p) and sum(p) == 6 for p in parts)


def test_parse_format_examples():
    g = parse_group("3,12")
    assert g.order == 36
    assert format_group(g) == "3,12"
    assert format_group(parse_group("2,4")) == "2,4"
    assert format_group(parse_group("4,2")) == "2,4"
    assert format_group(FiniteAbelianGroup.trivial()) == "1"
    assert format_group(parse_group("1")) == "1"


def test_parse_errors():
    for bad in ("", "a", "0", "-3", "2,,4"):
        with pytest.raises(ParseError):
            parse_group(bad)


def test_chain_validation():
    with pytest.raises(InvalidInputError):
        FiniteAbelianGroup((4, 2))
    assert FiniteAbelianGroup((2, 4)).invariants == (1, 1, 2, 4)


@given(st.lists(st.integers(min_value=1, max_value=400), min_size=0, max_size=6))
def test_parse_format_roundtrip(factors):
    g = FiniteAbelianGroup.from_factors(factors)
    assert parse_group(format_group(g)) == g
    prod = 1
    for d in factors:
        prod *= d
    assert g.order == prod


@given(st.lists(st.integers(min_value=1, max_value=200), min_size=0, max_size=4))
def test_primary_assemble_inverse(factors):
    g = FiniteAbelianGroup.from_factors(factors)
    primes = sorted({p for d in factors for p in _prime_divisors(d)})
    parts = [g.primary_part(p, slots=max(4, len(g.invariants))) for p in primes]
    assert assemble_from_primary(parts, slots=max(4, len(g.invariants))) == g


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def test_group_json_shape():
    g = FiniteAbelianGroup.from_factors([3, 12])
    payload = group_to_json(g)
    assert payload == {
        "invariants": [1, 1, 3, 12],
        "primary": {"2": [0, 0, 0, 2], "3": [0, 0, 1, 1]},
    }


def test_hodge_vector_validation():
    with pytest.raises(InvalidInputError):
        HodgeVector(4, (0, 0))
    with pytest.raises(InvalidInputError):
        HodgeVector(2, (1, 0))
    assert HodgeVector(2, (0, 1, 1, 2)).order() == 16
