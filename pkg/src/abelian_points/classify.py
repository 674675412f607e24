"""Deciders and the enumerator for admissible groups of points, per factorization shape.

Given a validated Weil polynomial, a finite abelian group of order f(1) occurs
as the group of points of some variety in the isogeny class iff its per-prime
exponent vectors pass the shape-specific condition at every prime dividing
f(1).  Candidate vectors are partitions of ord_l(f(1)) into at most four
parts; the admissible sets are tiny, so enumeration is a plain filter followed
by a CRT cross product.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .abgroup import (
    SLOTS,
    FiniteAbelianGroup,
    HodgeVector,
    assemble_from_primary,
    partitions_with_slots,
)
from .errors import (
    InternalInvariantError,
    InvalidInputError,
    TooManyGeneratorsError,
)
from .numeric import Valuation, factorize, integer_sqrt_exact, valuation
from .polygon import NewtonPolygon, hodge_polygon, lies_on_or_above, newton_polygon
from .polynomial import (
    Case1,
    Case2,
    Case3,
    Case4,
    IntPolynomial,
    Shape,
    WeilPolynomial,
    detect_shape,
    poly_eval,
    substitute_one_minus_t,
)

Exponents = tuple[int, ...]
PairSplit = tuple[tuple[int, int], tuple[int, int]]


def _checked_exponents(exponents, expected_total: int) -> Exponents:
    exps = tuple(int(m) for m in exponents)
    if len(exps) != SLOTS:
        raise InvalidInputError(f"need exactly {SLOTS} exponent slots, got {len(exps)}")
    if any(m < 0 for m in exps) or list(exps) != sorted(exps):
        raise InvalidInputError("exponents must be sorted ascending and nonnegative")
    if sum(exps) != expected_total:
        raise InvalidInputError(
            f"exponents sum to {sum(exps)}, expected {expected_total}"
        )
    return exps


@dataclass(frozen=True)
class Case3Data:
    """Per-prime quantities for the case-3 condition set.

    quadratic = t^2 - b*t + q, repeated factor (t + sigma*s)^2, and at the
    prime ell: m = ord(quadratic at 1), m_q = ord(1 + sigma*s); ord(b - 2) is
    INFINITY when b = 2, which makes condition (a) hold vacuously there.
    """

    ell: int
    b: int
    sigma: int
    s: int
    m: int
    m_q: int
    ord_b_minus_2: Valuation

    @classmethod
    def from_shape(cls, shape: Case3, ell: int) -> "Case3Data":
        p1 = poly_eval(shape.quadratic, 1)
        return cls(
            ell=ell,
            b=shape.b,
            sigma=shape.sigma,
            s=shape.s,
            m=valuation(ell, p1),
            m_q=valuation(ell, shape.alpha),
            ord_b_minus_2=valuation(ell, shape.b - 2),
        )

    @property
    def total(self) -> int:
        return self.m + 2 * self.m_q

    def m_b(self, exponents: Exponents) -> int:
        return exponents[0] + exponents[2] - self.m_q


def decide_case1(np: NewtonPolygon, exponents) -> bool:
    """Case 1: the Newton polygon of f(1-t) lies on or above the Hodge polygon."""
    exps = _checked_exponents(exponents, np.vertices[0][1])
    return lies_on_or_above(np, hodge_polygon(exps))


def _pair_splittings(exps: Exponents) -> list[PairSplit]:
    m0, m1, m2, m3 = exps
    raw = [
        ((m0, m1), (m2, m3)),
        ((m0, m2), (m1, m3)),
        ((m0, m3), (m1, m2)),
    ]
    out, seen = [], set()
    for a, b in raw:
        key = tuple(sorted((a, b)))
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def decide_case2(
    quadratic: IntPolynomial, ell: int, exponents
) -> tuple[bool, PairSplit | None]:
    """Case 2: the vector must split into two pairs, each an admissible rank-2 type.

    Each pair has to sum to ord_l(P(1)) (the two polygons share endpoints per
    summand) and its rank-2 Hodge polygon must lie on or below the Newton
    polygon of P(1-t).  Returns the first admissible splitting as a witness.
    """
    p1 = poly_eval(quadratic, 1)
    if p1 == 0:
        raise InvalidInputError("quadratic factor vanishes at 1")
    n = valuation(ell, p1)
    total = sum(int(m) for m in exponents)
    if total % 2:
        raise InvalidInputError(f"odd total {total} cannot be a case-2 order")
    exps = _checked_exponents(exponents, 2 * n)
    np = newton_polygon(substitute_one_minus_t(quadratic), ell)
    for split in _pair_splittings(exps):
        if all(lies_on_or_above(np, hodge_polygon(pair)) for pair in split):
            return True, split
    return False, None


def decide_case3(data: Case3Data, exponents) -> bool:
    """Case 3: conditions (a) 0 <= m_b <= ord(b-2), (b) min(m_b, m_q) >= m_1,
    (c) min(m - m_b, m_q) >= m_2."""
    exps = _checked_exponents(exponents, data.total)
    m1, m2 = exps[0], exps[1]
    mb = data.m_b(exps)
    if mb < 0:
        return False
    if not mb <= data.ord_b_minus_2:
        return False
    if min(mb, data.m_q) < m1:
        return False
    if min(data.m - mb, data.m_q) < m2:
        return False
    return True


def decide_case4(q: int, sigma: int, group: FiniteAbelianGroup) -> bool:
    """Case 4: the group must be (Z/N)^4 with N = |1 + sigma*sqrt(q)|."""
    s = integer_sqrt_exact(q)
    if s is None:
        raise InvalidInputError(f"q = {q} is not a perfect square")
    n = abs(1 + sigma * s)
    return group == FiniteAbelianGroup.from_factors([n] * SLOTS)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _fmt_vec(exps: Exponents) -> str:
    return ",".join(str(m) for m in exps)


def decide_group(w: WeilPolynomial, group: FiniteAbelianGroup) -> Verdict:
    """Does the group occur as a group of points in the isogeny class of w?

    Order mismatches and groups whose l-part needs more than four generators
    are rejected before any polygon comparison; otherwise every prime dividing
    f(1) is dispatched to the shape's decider.
    """
    order = w.group_order()
    if group.order != order:
        return Verdict(False, "order-mismatch")
    shape = detect_shape(w)
    if isinstance(shape, Case4):
        if decide_case4(w.q, shape.sigma, group):
            return Verdict(True)
        return Verdict(False, "case-4-condition")
    for ell, _ in factorize(order):
        try:
            hv = group.primary_part(ell, SLOTS)
        except TooManyGeneratorsError:
            return Verdict(False, "too-many-generators")
        exps = hv.exponents
        if isinstance(shape, Case1):
            np = newton_polygon(substitute_one_minus_t(w.polynomial()), ell)
            ok = decide_case1(np, exps)
        elif isinstance(shape, Case2):
            ok, _ = decide_case2(shape.quadratic, ell, exps)
        else:
            ok = decide_case3(Case3Data.from_shape(shape, ell), exps)
        if not ok:
            return Verdict(
                False, f"case-{shape.case}-condition at ell={ell} vector={_fmt_vec(exps)}"
            )
    return Verdict(True)


@dataclass(frozen=True)
class ClassificationResult:
    shape: Shape
    order: int
    groups: tuple[FiniteAbelianGroup, ...]
    per_prime: dict[int, tuple[Exponents, ...]]
    case2_splits: dict[int, dict[Exponents, PairSplit]] | None = None

    def __post_init__(self):
        if not self.groups:
            raise InternalInvariantError("classification produced no group")
        if any(g.order != self.order for g in self.groups):
            raise InternalInvariantError("listed group with wrong order")


def enumerate_groups(w: WeilPolynomial) -> ClassificationResult:
    """All groups admissible for w, with per-prime detail.

    Case 4 short-circuits to its single group; otherwise partitions of
    ord_l(f(1)) into at most four parts are filtered through the shape's
    decider at each prime and recombined across primes.
    """
    order = w.group_order()
    shape = detect_shape(w)
    order_fac = factorize(order)

    if isinstance(shape, Case4):
        n = abs(shape.alpha)
        group = FiniteAbelianGroup.from_factors([n] * SLOTS)
        per_prime = {
            ell: ((valuation(ell, n),) * SLOTS,) for ell, _ in order_fac
        }
        return ClassificationResult(
            shape=shape, order=order, groups=(group,), per_prime=per_prime
        )

    per_prime: dict[int, tuple[Exponents, ...]] = {}
    case2_splits: dict[int, dict[Exponents, PairSplit]] | None = (
        {} if isinstance(shape, Case2) else None
    )
    for ell, e in order_fac:
        candidates = partitions_with_slots(e, SLOTS)
        admissible = []
        if isinstance(shape, Case1):
            np = newton_polygon(substitute_one_minus_t(w.polynomial()), ell)
            admissible = [hv for hv in candidates if decide_case1(np, hv)]
        elif isinstance(shape, Case2):
            splits = {}
            for hv in candidates:
                ok, split = decide_case2(shape.quadratic, ell, hv)
                if ok:
                    admissible.append(hv)
                    splits[hv] = split
            case2_splits[ell] = splits
        else:
            data = Case3Data.from_shape(shape, ell)
            admissible = [hv for hv in candidates if decide_case3(data, hv)]
        if not admissible:
            raise InternalInvariantError(
                f"no admissible vector at ell={ell} for {w.polynomial()}"
            )
        per_prime[ell] = tuple(admissible)

    primes = [ell for ell, _ in order_fac]
    groups = []
    for combo in product(*(per_prime[ell] for ell in primes)):
        parts = [HodgeVector(ell, exps) for ell, exps in zip(primes, combo)]
        groups.append(assemble_from_primary(parts, slots=SLOTS))
    groups.sort(key=lambda g: g.invariants)
    return ClassificationResult(
        shape=shape,
        order=order,
        groups=tuple(groups),
        per_prime=per_prime,
        case2_splits=case2_splits,
    )
