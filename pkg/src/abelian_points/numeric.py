"""Exact integer arithmetic: l-adic valuations, deterministic factorization, prime powers.

Everything runs on Python's arbitrary-precision integers; no floating point is
used anywhere in the package.
"""

from __future__ import annotations

from math import gcd, isqrt
from typing import Union

from .errors import InvalidInputError

_TRIAL_BOUND = 10**6

# Deterministic Miller-Rabin witness set, valid for n < 3.3 * 10**24; inputs
# here are bounded by f(1) <= (1 + sqrt(q))^4 at desk scale, far below that.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class _InfiniteValuation:
    """ord_l(0): greater than every integer and absorbing under addition."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"

    def __eq__(self, other):
        return isinstance(other, _InfiniteValuation)

    def __hash__(self):
        return hash("abelian_points.INFINITY")

    def __lt__(self, other):
        if isinstance(other, (int, _InfiniteValuation)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, _InfiniteValuation):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, _InfiniteValuation):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, _InfiniteValuation)):
            return True
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, _InfiniteValuation)):
            return self
        return NotImplemented

    __radd__ = __add__


INFINITY = _InfiniteValuation()

Valuation = Union[int, _InfiniteValuation]

Factorization = tuple[tuple[int, int], ...]


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed witness set)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def valuation(ell: int, n: int) -> Valuation:
    """Largest e with ell**e dividing n; INFINITY for n = 0."""
    if ell < 2 or not is_prime(ell):
        raise InvalidInputError(f"valuation base must be prime, got {ell}")
    if n == 0:
        return INFINITY
    n = abs(n)
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def _brent_rho(n: int) -> int:
    """Deterministic Brent cycle factor finder for odd composite n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise InvalidInputError(f"failed to factor {n}")  # unreachable at desk scale


def _factor_into(n: int, acc: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        acc[n] = acc.get(n, 0) + 1
        return
    d = _brent_rho(n)
    _factor_into(d, acc)
    _factor_into(n // d, acc)


def factorize(n: int) -> Factorization:
    """Complete prime factorization of n >= 1 as ((prime, exponent), ...)."""
    if n < 1:
        raise InvalidInputError(f"can only factor positive integers, got {n}")
    acc: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            n //= p
            acc[p] = acc.get(p, 0) + 1
    p = 7
    while p <= _TRIAL_BOUND and p * p <= n:
        while n % p == 0:
            n //= p
            acc[p] = acc.get(p, 0) + 1
        p += 2
    if n > 1:
        _factor_into(n, acc)
    return tuple(sorted(acc.items()))


def prime_power_decompose(q: int) -> tuple[int, int] | None:
    """(p, n) with q = p**n and p prime, or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    return fac[0]


def integer_sqrt_exact(q: int) -> int | None:
    """s with s*s == q when q is a perfect square, else None."""
    if q < 0:
        raise InvalidInputError("cannot take the square root of a negative integer")
    s = isqrt(q)
    return s if s * s == q else None
