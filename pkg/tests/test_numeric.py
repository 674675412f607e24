from hypothesis import given
from hypothesis import strategies as st
import pytest

from abelian_points.errors import InvalidInputError
from abelian_points.numeric import (
    INFINITY,
    factorize,
    integer_sqrt_exact,
    is_prime,
    prime_power_decompose,
    valuation,
)


def test_valuation_examples():
    assert valuation(2, 8) == 3
    assert valuation(3, 36) == 2
    assert valuation(5, 0) == INFINITY


def test_valuation_rejects_nonprime_base():
    for bad in (0, 1, 4, 6, -3):
        with pytest.raises(InvalidInputError):
            valuation(bad, 12)


def test_infinity_semantics():
    assert INFINITY > 10**100
    assert not (INFINITY < 10**100)
    assert INFINITY >= INFINITY
    assert not (INFINITY < INFINITY)
    assert INFINITY + 5 == INFINITY
    assert 5 + INFINITY == INFINITY
    assert min(3, INFINITY) == 3
    assert 3 <= INFINITY


@given(
    st.sampled_from([2, 3, 5, 7, 11, 13]),
    st.integers(min_value=-(10**9), max_value=10**9).filter(lambda n: n != 0),
)
def test_valuation_divides_exactly(ell, n):
    v = valuation(ell, n)
    assert n % ell**v == 0
    assert n % ell ** (v + 1) != 0


def test_factorize_examples():
    assert factorize(36) == ((2, 2), (3, 2))
    assert factorize(1) == ()
    assert factorize(16) == ((2, 4),)


def test_factorize_rejects_nonpositive():
    with pytest.raises(InvalidInputError):
        factorize(0)
    with pytest.raises(InvalidInputError):
        factorize(-12)


def test_factorize_beyond_trial_bound():
    # two primes above the trial-division bound force the rho path
    n = 10000019 * 10000079
    assert factorize(n) == ((10000019, 1), (10000079, 1))


@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_recomposes(n):
    fac = factorize(n)
    prod = 1
    for p, e in fac:
        assert is_prime(p)
        assert e >= 1
        prod *= p**e
    assert prod == n
    assert [p for p, _ in fac] == sorted({p for p, _ in fac})


def test_prime_power_examples():
    assert prime_power_decompose(4) == (2, 2)
    assert prime_power_decompose(9) == (3, 2)
    assert prime_power_decompose(6) is None
    assert prime_power_decompose(2**20) == (2, 20)
    assert prime_power_decompose(1) is None


def test_integer_sqrt_examples():
    assert integer_sqrt_exact(4) == 2
    assert integer_sqrt_exact(2) is None
    assert integer_sqrt_exact(0) == 0
    with pytest.raises(InvalidInputError):
        integer_sqrt_exact(-1)


def test_prime_power_square_iff_even_exponent():
    for q in range(2, 5000):
        pp = prime_power_decompose(q)
        if pp is None:
            continue
        _, n = pp
        assert (integer_sqrt_exact(q) is not None) == (n % 2 == 0)
