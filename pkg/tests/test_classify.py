import math
from itertools import product

import pytest

from abelian_points.abgroup import FiniteAbelianGroup, partitions_with_slots
from abelian_points.classify import (
    Case3Data,
    decide_case1,
    decide_case2,
    decide_case3,
    decide_case4,
    decide_group,
    enumerate_groups,
)
from abelian_points.errors import InvalidInputError
from abelian_points.numeric import INFINITY, factorize, valuation
from abelian_points.polygon import newton_polygon, slope_multiset
from abelian_points.polynomial import (
    IntPolynomial,
    detect_shape,
    poly_eval,
    substitute_one_minus_t,
    validate_weil,
)


def P(*descending):
    return IntPolynomial(tuple(reversed(descending)))


def all_valid_weil(q):
    lim = math.isqrt(16 * q)
    for a1 in range(-lim, lim + 1):
        for a2 in range(-2 * q, a1 * a1 // 4 + 2 * q + 1):
            try:
                yield validate_weil(q, [1, a1, a2, a1 * q, q * q])
            except InvalidInputError:
                continue


W1 = validate_weil(2, [1, 0, 3, 0, 4])
W2 = validate_weil(2, [1, 2, 5, 4, 4])
W3 = validate_weil(4, [1, 3, 4, 12, 16])
W4A = validate_weil(4, [1, 8, 24, 32, 16])
W4B = validate_weil(9, [1, -12, 54, -108, 81])
W5 = validate_weil(4, [1, 0, -8, 0, 16])


def test_decide_case1_examples():
    np = newton_polygon(substitute_one_minus_t(W1.polynomial()), 2)
    assert np.vertices == ((0, 3), (1, 1), (2, 0), (4, 0))
    assert decide_case1(np, (0, 0, 0, 3))
    assert decide_case1(np, (0, 0, 1, 2))
    assert not decide_case1(np, (0, 1, 1, 1))
    with pytest.raises(InvalidInputError):
        decide_case1(np, (0, 0, 0, 2))  # wrong total


def test_decide_case2_examples():
    quad = P(1, 1, 2)
    ok, split = decide_case2(quad, 2, (0, 0, 2, 2))
    assert ok and split == ((0, 2), (0, 2))
    ok, split = decide_case2(quad, 2, (0, 1, 1, 2))
    assert not ok and split is None
    ok, _ = decide_case2(quad, 2, (1, 1, 1, 1))
    assert not ok
    with pytest.raises(InvalidInputError):
        decide_case2(quad, 2, (0, 0, 1, 2))  # odd total


def test_decide_case3_examples():
    shape = detect_shape(W3)
    d2 = Case3Data.from_shape(shape, 2)
    assert (d2.m, d2.m_q, d2.ord_b_minus_2) == (2, 0, 0)
    assert decide_case3(d2, (0, 0, 0, 2))
    assert not decide_case3(d2, (0, 0, 1, 1))
    d3 = Case3Data.from_shape(shape, 3)
    assert (d3.m, d3.m_q) == (0, 1)
    assert decide_case3(d3, (0, 0, 1, 1))
    assert not decide_case3(d3, (0, 0, 0, 2))


def test_case3_infinite_ord_when_b_is_two():
    # q = 4, (t^2 - 2t + 4)(t + 2)^2: b = 2, so (a) must hold vacuously
    w = validate_weil(4, [1, 2, 0, 8, 16])
    shape = detect_shape(w)
    assert shape.case == 3 and shape.b == 2
    data = Case3Data.from_shape(shape, 3)
    assert data.ord_b_minus_2 == INFINITY
    total = data.total
    assert any(decide_case3(data, hv) for hv in partitions_with_slots(total, 4))


def test_decide_case4_examples():
    assert decide_case4(4, 1, FiniteAbelianGroup.from_factors([3, 3, 3, 3]))
    assert decide_case4(9, -1, FiniteAbelianGroup.from_factors([2, 2, 2, 2]))
    assert not decide_case4(4, 1, FiniteAbelianGroup.from_factors([9, 9]))
    with pytest.raises(InvalidInputError):
        decide_case4(2, 1, FiniteAbelianGroup.trivial())


def test_decide_group_examples():
    assert decide_group(W1, FiniteAbelianGroup.from_factors([8]))
    assert decide_group(W3, FiniteAbelianGroup.from_factors([3, 12]))
    v = decide_group(W3, FiniteAbelianGroup.from_factors([36]))
    assert not v and "case-3-condition" in v.reason and "ell=3" in v.reason
    v = decide_group(W1, FiniteAbelianGroup.from_factors([2, 2, 2]))
    assert not v and "case-1-condition" in v.reason
    v = decide_group(W1, FiniteAbelianGroup.from_factors([4]))
    assert not v and v.reason == "order-mismatch"


def test_decide_group_too_many_generators():
    g5 = FiniteAbelianGroup.from_factors([2, 2, 2, 2, 2])  # order 32, five generators
    w32 = validate_weil(4, [1, 2, 5, 8, 16])
    assert w32.group_order() == 32
    assert detect_shape(w32).case == 1
    v = decide_group(w32, g5)
    assert not v and v.reason == "too-many-generators"


def test_enumerate_worked_sets():
    assert [g.invariants for g in enumerate_groups(W1).groups] == [
        (1, 1, 1, 8),
        (1, 1, 2, 4),
    ]
    assert [g.invariants for g in enumerate_groups(W2).groups] == [(1, 1, 4, 4)]
    assert [g.invariants for g in enumerate_groups(W3).groups] == [(1, 1, 3, 12)]
    assert [g.invariants for g in enumerate_groups(W4A).groups] == [(3, 3, 3, 3)]
    assert [g.invariants for g in enumerate_groups(W4B).groups] == [(2, 2, 2, 2)]
    assert [g.invariants for g in enumerate_groups(W5).groups] == [(1, 1, 3, 3)]


def test_enumerate_per_prime_detail():
    r = enumerate_groups(W3)
    assert r.per_prime == {2: ((0, 0, 0, 2),), 3: ((0, 0, 1, 1),)}
    r2 = enumerate_groups(W2)
    assert r2.per_prime == {2: ((0, 0, 2, 2),)}
    assert r2.case2_splits == {2: {(0, 0, 2, 2): ((0, 2), (0, 2))}}


def test_enumerate_trivial_group():
    w = validate_weil(4, [1, -4, 8, -16, 16])  # (t-2)^4, f(1) = 1
    r = enumerate_groups(w)
    assert [g.invariants for g in r.groups] == [(1, 1, 1, 1)]


def _all_candidate_groups(w):
    order = w.group_order()
    fac = factorize(order)
    per_prime = [partitions_with_slots(e, 4) for _, e in fac]
    for combo in product(*per_prime):
        factors = []
        for (p, _), exps in zip(fac, combo):
            for i in range(4):
                if exps[i]:
                    factors.append(p ** exps[i])
        # rebuild an actual group aligned by slots
        inv = [1] * 4
        for (p, _), exps in zip(fac, combo):
            for i in range(4):
                inv[i] *= p ** exps[i]
        yield FiniteAbelianGroup(tuple(inv))


@pytest.mark.parametrize("w", [W1, W2, W3, W4A, W4B, W5], ids=lambda w: str(w.polynomial()))
def test_decide_iff_enumerated(w):
    enumerated = set(enumerate_groups(w).groups)
    for g in _all_candidate_groups(w):
        assert bool(decide_group(w, g)) == (g in enumerated)


def test_case3_sum_identity():
    """ord(f(1)) = m + 2*m_q holds for every case-3 polynomial and prime."""
    for q in (4, 9, 16, 25):
        for w in all_valid_weil(q):
            shape = detect_shape(w)
            if shape.case != 3:
                continue
            for ell, e in factorize(w.group_order()):
                data = Case3Data.from_shape(shape, ell)
                assert data.total == e


def test_case3_condition_equivalence():
    """(a)-(c) agree with the four-inequality form on all candidate vectors."""
    checked = 0
    for q in (4, 9, 16, 25):
        for w in all_valid_weil(q):
            shape = detect_shape(w)
            if shape.case != 3:
                continue
            for ell, e in factorize(w.group_order()):
                if e > 8:
                    continue
                data = Case3Data.from_shape(shape, ell)
                for hv in partitions_with_slots(e, 4):
                    m1, m2, m3, m4 = hv
                    mb = data.m_b(hv)
                    alt = (
                        0 <= mb
                        and mb <= data.ord_b_minus_2
                        and m1 <= mb
                        and m1 <= data.m_q
                        and m2 <= data.m_q
                        and m2 <= data.m - mb
                    )
                    assert decide_case3(data, hv) == alt
                    # the two stated sub-equivalences
                    assert (m1 <= mb) == (m3 >= data.m_q)
                    assert (m2 <= data.m - mb) == (m4 >= data.m_q)
                    checked += 1
    assert checked > 100


def test_case2_second_exponent_bound():
    """Admissible case-2 vectors have m2 <= ord(b - 2)."""
    for q in (2, 3, 4, 5):
        for w in all_valid_weil(q):
            shape = detect_shape(w)
            if shape.case != 2:
                continue
            b = shape.b
            for ell, e in factorize(w.group_order()):
                if w.q % ell == 0:
                    continue
                for hv in partitions_with_slots(e, 4):
                    ok, _ = decide_case2(shape.quadratic, ell, hv)
                    if ok:
                        assert hv[1] <= valuation(ell, b - 2)


def test_case1_unit_root_zero_slopes_at_p():
    """At ell = p, admissible vectors have at most as many nonzero entries as
    the Newton polygon of f(1-t) has nonzero slopes."""
    for q in (2, 3, 4, 5, 7, 8, 9):
        for w in all_valid_weil(q):
            shape = detect_shape(w)
            if shape.case != 1:
                continue
            order = w.group_order()
            if order % w.p != 0:
                continue
            np = newton_polygon(substitute_one_minus_t(w.polynomial()), w.p)
            d = sum(mult for slope, mult in slope_multiset(np) if slope != 0)
            e = valuation(w.p, order)
            for hv in partitions_with_slots(e, 4):
                if decide_case1(np, hv):
                    assert sum(1 for m in hv if m) <= d
