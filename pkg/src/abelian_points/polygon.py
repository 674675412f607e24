"""Newton polygons at a prime, Hodge polygons of finite abelian l-groups, comparisons.

Both polygon kinds are stored by their integer vertices and evaluated between
vertices with exact rational interpolation, so every comparison is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInvariantError, InvalidInputError
from .numeric import valuation
from .polynomial import IntPolynomial

Vertex = tuple[int, int]


def _check_convex(vertices: tuple[Vertex, ...], strict: bool) -> None:
    if not vertices:
        raise InternalInvariantError("polygon with no vertices")
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        if x1 <= x0:
            raise InternalInvariantError("vertex abscissas must increase")
    slopes = [
        Fraction(y1 - y0, x1 - x0)
        for (x0, y0), (x1, y1) in zip(vertices, vertices[1:])
    ]
    for s0, s1 in zip(slopes, slopes[1:]):
        if (s1 <= s0) if strict else (s1 < s0):
            raise InternalInvariantError("polygon is not convex")


def _ordinate(vertices: tuple[Vertex, ...], x: int) -> Fraction:
    if x < vertices[0][0] or x > vertices[-1][0]:
        raise InvalidInputError(f"abscissa {x} outside polygon range")
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        if x0 <= x <= x1:
            return Fraction(y0 * (x1 - x) + y1 * (x - x0), x1 - x0)
    return Fraction(vertices[-1][1])


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (i, ord_l of the i-th coefficient); strict vertices only."""

    vertices: tuple[Vertex, ...]

    def __post_init__(self):
        _check_convex(self.vertices, strict=True)

    def ordinate(self, x: int) -> Fraction:
        return _ordinate(self.vertices, x)

    @property
    def x_range(self) -> tuple[int, int]:
        return self.vertices[0][0], self.vertices[-1][0]

    def to_json(self) -> list[list[int]]:
        return [[x, y] for x, y in self.vertices]


@dataclass(frozen=True)
class HodgePolygon:
    """Polygon of a finite abelian l-group with exponent type m_1 <= ... <= m_r.

    Vertices are (i, sum of the r - i smallest exponents); endpoints are
    (0, sum of all exponents) and (r, 0), and zero exponents give zero slopes.
    """

    exponents: tuple[int, ...]

    def __post_init__(self):
        _check_convex(self.vertices, strict=False)

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        r = len(self.exponents)
        return tuple((i, sum(self.exponents[: r - i])) for i in range(r + 1))

    def ordinate(self, x: int) -> Fraction:
        return _ordinate(self.vertices, x)

    @property
    def x_range(self) -> tuple[int, int]:
        return 0, len(self.exponents)

    def to_json(self) -> list[list[int]]:
        return [[x, y] for x, y in self.vertices]


def newton_polygon(f: IntPolynomial, ell: int) -> NewtonPolygon:
    """Newton polygon of f at the prime ell; requires f(0) != 0.

    Zero coefficients (infinite ordinate) are not hull input; the endpoints
    are exactly (0, ord(f(0))) and (deg f, ord(leading coefficient)).
    """
    if f.is_zero or f.coeffs[0] == 0:
        raise InvalidInputError("Newton polygon needs a nonzero constant term")
    points = [(i, valuation(ell, c)) for i, c in enumerate(f.coeffs) if c != 0]
    hull: list[Vertex] = []
    for x, y in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # pop unless the middle vertex is a strict corner of the lower hull
            if (y1 - y0) * (x - x1) >= (y - y1) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append((x, y))
    return NewtonPolygon(tuple(hull))


def slope_multiset(np: NewtonPolygon) -> tuple[tuple[Fraction, int], ...]:
    """Slopes of the polygon with multiplicities, ascending; multiplicities sum to deg."""
    out = []
    for (x0, y0), (x1, y1) in zip(np.vertices, np.vertices[1:]):
        out.append((Fraction(y1 - y0, x1 - x0), x1 - x0))
    return tuple(out)


def _merge_slopes(*multisets) -> tuple[tuple[Fraction, int], ...]:
    acc: dict[Fraction, int] = {}
    for ms in multisets:
        for slope, mult in ms:
            acc[slope] = acc.get(slope, 0) + mult
    return tuple(sorted(acc.items()))


def np_product_property_check(q1: IntPolynomial, q2: IntPolynomial, ell: int) -> bool:
    """Whether slopes of NP(q1*q2) are the multiset union of the factors' slopes."""
    left = _merge_slopes(slope_multiset(newton_polygon(q1 * q2, ell)))
    right = _merge_slopes(
        slope_multiset(newton_polygon(q1, ell)), slope_multiset(newton_polygon(q2, ell))
    )
    return left == right


def hodge_polygon(exponents) -> HodgePolygon:
    """Hodge polygon of the exponent type m_1 <= ... <= m_r (must come sorted)."""
    exps = tuple(int(m) for m in exponents)
    if any(m < 0 for m in exps):
        raise InvalidInputError("Hodge exponents must be nonnegative")
    if list(exps) != sorted(exps):
        raise InvalidInputError("Hodge exponents must be sorted ascending")
    return HodgePolygon(exps)


def lies_on_or_above(upper, lower) -> bool:
    """True iff the polygons share both endpoints and upper >= lower pointwise.

    Unequal endpoint heights give False (not an error); this is what lets the
    case-2 decider enforce the per-part order condition through the same
    comparison.  Both polygons have integer-abscissa vertices, so checking
    every integer abscissa is exact and sufficient.
    """
    uv, lv = upper.vertices, lower.vertices
    if (uv[0][0], uv[-1][0]) != (lv[0][0], lv[-1][0]):
        raise InvalidInputError("polygons span different abscissa ranges")
    if uv[0] != lv[0] or uv[-1] != lv[-1]:
        return False
    lo, hi = uv[0][0], uv[-1][0]
    return all(_ordinate(uv, x) >= _ordinate(lv, x) for x in range(lo, hi + 1))
