import random
from fractions import Fraction

import pytest

from abelian_points.errors import InvalidInputError
from abelian_points.polygon import (
    hodge_polygon,
    lies_on_or_above,
    newton_polygon,
    np_product_property_check,
    slope_multiset,
)
from abelian_points.polynomial import IntPolynomial


def P(*descending):
    return IntPolynomial(tuple(reversed(descending)))


def test_newton_polygon_examples():
    assert newton_polygon(P(1, -3, 4), 2).vertices == ((0, 2), (1, 0), (2, 0))
    assert newton_polygon(P(1, -4, 9, -10, 8), 2).vertices == (
        (0, 3),
        (1, 1),
        (2, 0),
        (4, 0),
    )
    assert newton_polygon(P(1, -4), 2).vertices == ((0, 2), (1, 0))


def test_newton_polygon_rejects_zero_constant():
    with pytest.raises(InvalidInputError):
        newton_polygon(P(1, 0), 2)


def test_slope_multiset_examples():
    assert slope_multiset(newton_polygon(P(1, -3, 4), 2)) == (
        (Fraction(-2), 1),
        (Fraction(0), 1),
    )
    assert slope_multiset(newton_polygon(P(1, -4, 9, -10, 8), 2)) == (
        (Fraction(-2), 1),
        (Fraction(-1), 1),
        (Fraction(0), 2),
    )
    assert slope_multiset(newton_polygon(P(1, -4), 2)) == ((Fraction(-2), 1),)


def test_slope_multiset_reconstructs_polygon():
    np = newton_polygon(P(3, 0, -12, 8), 2)
    x, y = np.vertices[0]
    rebuilt = [(x, Fraction(y))]
    for slope, mult in slope_multiset(np):
        x, yf = rebuilt[-1]
        rebuilt.append((x + mult, yf + slope * mult))
    assert [(x, Fraction(y)) for x, y in np.vertices] == rebuilt


def test_product_property_examples():
    assert np_product_property_check(P(1, -1, 2), P(1, -3, 4), 2)
    assert np_product_property_check(P(1, -4), P(1, -4), 2)
    assert np_product_property_check(P(1, -2), P(1, -3), 5)


def test_product_property_random_pairs():
    rng = random.Random(20260811)

    def random_poly():
        deg = rng.randint(1, 5)
        coeffs = [rng.randint(-60, 60) for _ in range(deg + 1)]
        while coeffs[0] == 0:
            coeffs[0] = rng.randint(-60, 60)
        while coeffs[-1] == 0:
            coeffs[-1] = rng.randint(-60, 60)
        return IntPolynomial(tuple(coeffs))

    for _ in range(500):
        q1, q2 = random_poly(), random_poly()
        for ell in (2, 3, 5):
            assert np_product_property_check(q1, q2, ell)


def test_hodge_polygon_examples():
    assert hodge_polygon((0, 0, 1, 2)).vertices == (
        (0, 3),
        (1, 1),
        (2, 0),
        (3, 0),
        (4, 0),
    )
    assert hodge_polygon((0, 0, 0, 0)).vertices == tuple((i, 0) for i in range(5))
    assert hodge_polygon((2, 2)).vertices == ((0, 4), (1, 2), (2, 0))
    with pytest.raises(InvalidInputError):
        hodge_polygon((2, 1))


def test_lies_on_or_above_examples():
    np = newton_polygon(P(1, -4, 9, -10, 8), 2)
    assert lies_on_or_above(np, hodge_polygon((0, 0, 1, 2)))
    assert not lies_on_or_above(np, hodge_polygon((0, 1, 1, 1)))
    # reflexivity
    assert lies_on_or_above(np, np)
    hp = hodge_polygon((0, 0, 1, 2))
    assert lies_on_or_above(hp, hp)


def test_lies_on_or_above_endpoint_mismatch_is_false():
    np = newton_polygon(P(1, -4, 9, -10, 8), 2)  # left endpoint (0, 3)
    assert not lies_on_or_above(np, hodge_polygon((0, 0, 0, 2)))


def test_lies_on_or_above_range_mismatch_raises():
    np = newton_polygon(P(1, -3, 4), 2)
    with pytest.raises(InvalidInputError):
        lies_on_or_above(np, hodge_polygon((0, 0, 1, 1)))


def test_antisymmetry_on_mutual_domination():
    a = hodge_polygon((0, 1, 1, 2))
    b = hodge_polygon((0, 1, 1, 2))
    assert lies_on_or_above(a, b) and lies_on_or_above(b, a)
    assert a.vertices == b.vertices
