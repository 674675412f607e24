"""Integer polynomials, Weil-polynomial validation and factorization-shape detection.

A degree-4 Weil polynomial t^4 + a1*t^3 + a2*t^2 + a1*q*t + q^2 falls into
exactly one of four factorization shapes over the integers:

  case 1  no repeated roots,
  case 2  the square of a quadratic with no repeated roots,
  case 3  (quadratic with no repeated roots) * (t + sigma*s)^2 with s = sqrt(q),
  case 4  (t + sigma*s)^4 with s = sqrt(q).

Detection order is case 4, 2, 3, 1 so that (t^2 - q)^2 lands in case 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Union

from .errors import InternalInvariantError, InvalidInputError
from .numeric import integer_sqrt_exact, prime_power_decompose


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; coefficients in ascending degree order."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(
            tuple(self.coefficient(i) + other.coefficient(i) for i in range(n))
        )

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidInputError("negative polynomial power")
        out = IntPolynomial((1,))
        for _ in range(e):
            out = out * self
        return out

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                term = str(mag)
            elif i == 1:
                term = "t" if mag == 1 else f"{mag}*t"
            else:
                term = f"t^{i}" if mag == 1 else f"{mag}*t^{i}"
            parts.append((sign, term))
        first_sign, first_term = parts[0]
        text = ("-" if first_sign == "-" else "") + first_term
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text


T = IntPolynomial((0, 1))


def _coerce(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial((x,))
    raise TypeError(f"cannot coerce {x!r} to IntPolynomial")


def poly_eval(f: IntPolynomial, x: int) -> int:
    """Exact value of f at the integer x."""
    return f(x)


def poly_divmod(f: IntPolynomial, g: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Quotient and remainder of f by a monic g, over the integers."""
    if not g.is_monic:
        raise InvalidInputError("division only implemented for monic divisors")
    rem = list(f.coeffs)
    dg = g.degree
    if len(rem) <= dg:
        return IntPolynomial(()), f
    quot = [0] * (len(rem) - dg)
    for i in range(len(rem) - dg - 1, -1, -1):
        c = rem[i + dg]
        quot[i] = c
        if c:
            for j, b in enumerate(g.coeffs):
                rem[i + j] -= c * b
    return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:dg]))


def substitute_one_minus_t(f: IntPolynomial) -> IntPolynomial:
    """Exact coefficients of f(1 - t)."""
    one_minus_t = IntPolynomial((1, -1))
    out = IntPolynomial(())
    for c in reversed(f.coeffs):
        out = out * one_minus_t + c
    return out


def _rational_gcd_degree(f: IntPolynomial, g: IntPolynomial) -> int:
    """Degree of gcd(f, g) over the rationals (exact Euclid with Fractions)."""
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]

    def strip(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = strip(a), strip(b)
    while b:
        # a mod b
        lead = b[-1]
        while len(a) >= len(b):
            q = a[-1] / lead
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] -= q * c
            strip(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def is_squarefree(f: IntPolynomial) -> bool:
    """True iff gcd(f, f') over the rationals is constant."""
    if f.is_zero:
        raise InvalidInputError("squarefreeness of the zero polynomial is undefined")
    if f.degree <= 1:
        return True
    return _rational_gcd_degree(f, f.derivative()) == 0


@dataclass(frozen=True)
class WeilPolynomial:
    """Validated t^4 + a1*t^3 + a2*t^2 + a1*q*t + q^2 with q = p**n a prime power."""

    q: int
    p: int
    n: int
    a1: int
    a2: int

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial((self.q * self.q, self.a1 * self.q, self.a2, self.a1, 1))

    def group_order(self) -> int:
        """f(1), the common order of every admissible group of points."""
        return 1 + self.a1 + self.a2 + self.a1 * self.q + self.q * self.q


@dataclass(frozen=True)
class Case1:
    """Shape with no repeated roots."""

    poly: IntPolynomial
    case: ClassVar[int] = 1


@dataclass(frozen=True)
class Case2:
    """Square of a quadratic with no repeated roots."""

    quadratic: IntPolynomial
    case: ClassVar[int] = 2

    @property
    def b(self) -> int:
        # quadratic = t^2 - b*t + c
        return -self.quadratic.coefficient(1)


@dataclass(frozen=True)
class Case3:
    """quadratic * (t + sigma*s)^2 with s = sqrt(q) and quadratic squarefree."""

    quadratic: IntPolynomial
    sigma: int
    s: int
    case: ClassVar[int] = 3

    @property
    def b(self) -> int:
        return -self.quadratic.coefficient(1)

    @property
    def alpha(self) -> int:
        # 1 - F on the repeated-root plane acts as multiplication by alpha
        return 1 + self.sigma * self.s

    def repeated_factor(self) -> IntPolynomial:
        return IntPolynomial((self.sigma * self.s, 1)) ** 2


@dataclass(frozen=True)
class Case4:
    """(t + sigma*s)^4 with s = sqrt(q)."""

    sigma: int
    s: int
    case: ClassVar[int] = 4

    @property
    def alpha(self) -> int:
        return 1 + self.sigma * self.s


Shape = Union[Case1, Case2, Case3, Case4]


def validate_weil(q: int, coeffs: list[int] | tuple[int, ...]) -> WeilPolynomial:
    """Validate a monic quartic as a formal Weil polynomial for F_q.

    Checks that q is a prime power, that the coefficients satisfy the
    functional-equation form (a3 = a1*q, a4 = q^2) and that the associated
    real quadratic t^2 + a1*t + (a2 - 2q) has both roots in [-2*sqrt(q),
    2*sqrt(q)], expressed through exact integer inequalities.  Deeper
    p-adic existence conditions are deliberately not checked.
    """
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != 5 or coeffs[0] != 1:
        raise InvalidInputError(
            "expected five descending coefficients starting with 1",
            code="form-violation",
        )
    pp = prime_power_decompose(q) if q >= 2 else None
    if pp is None:
        raise InvalidInputError(f"q = {q} is not a prime power", code="not-prime-power")
    p, n = pp
    _, a1, a2, a3, a4 = coeffs
    if a3 != a1 * q or a4 != q * q:
        raise InvalidInputError(
            f"coefficients violate the functional equation: "
            f"need a3 = a1*q = {a1 * q} and a4 = q^2 = {q * q}, got a3 = {a3}, a4 = {a4}",
            code="form-violation",
        )
    disc = a1 * a1 - 4 * (a2 - 2 * q)
    if (
        disc < 0
        or a2 + 2 * q < 0
        or 4 * a1 * a1 * q > (a2 + 2 * q) ** 2
        or a1 * a1 > 16 * q
    ):
        raise InvalidInputError(
            f"roots are not all of absolute value sqrt({q})",
            code="root-bound-violation",
        )
    return WeilPolynomial(q=q, p=p, n=n, a1=a1, a2=a2)


def detect_shape(w: WeilPolynomial) -> Shape:
    """Classify a validated Weil polynomial into its factorization shape.

    The order case 4 -> 2 -> 3 -> 1 is normative: (t^2 - q)^2 matches the
    case-2 test and must not reach the case-3 test (its quotient by a double
    root is not squarefree).
    """
    f = w.polynomial()
    q = w.q
    s = integer_sqrt_exact(q)

    if s is not None:
        for sigma in (1, -1):
            if f == IntPolynomial((sigma * s, 1)) ** 4:
                return Case4(sigma=sigma, s=s)

    if w.a1 % 2 == 0:
        u = w.a1 // 2
        if (w.a2 - u * u) % 2 == 0:
            v = (w.a2 - u * u) // 2
            if 2 * u * v == w.a1 * q and v * v == q * q:
                quad = IntPolynomial((v, u, 1))
                if not is_squarefree(quad):
                    raise InternalInvariantError(
                        "square factor of a validated Weil polynomial is a perfect "
                        "square but was not detected as case 4"
                    )
                return Case2(quadratic=quad)

    if s is not None:
        for sigma in (1, -1):
            root = -sigma * s
            if f(root) == 0 and f.derivative()(root) == 0:
                square = IntPolynomial((sigma * s, 1)) ** 2
                quad, rem = poly_divmod(f, square)
                if not rem.is_zero:
                    raise InternalInvariantError("double root did not divide exactly")
                if is_squarefree(quad) and quad(root) != 0:
                    return Case3(quadratic=quad, sigma=sigma, s=s)

    if is_squarefree(f):
        return Case1(poly=f)
    raise InternalInvariantError(
        "validated Weil polynomial matched no factorization shape"
    )
