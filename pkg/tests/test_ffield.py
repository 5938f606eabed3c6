import pytest
from hypothesis import given, strategies as st

from sepnoether.ffield import (FieldError, OrderUnavailable, PrimeField, choose_prime, element_of_order,
                               is_prime, prime_factors)

PRIMES = [3, 5, 17, 97, 2**31 - 1]


def test_is_prime_matches_trial_division():
    def slow(n):
        return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))
    assert [n for n in range(300) if is_prime(n)] == [n for n in range(300) if slow(n)]


def test_rejects_composites_and_large():
    for bad in (1, 4, 91, 2**31 + 11):
        with pytest.raises(FieldError):
            PrimeField(bad)


@given(st.sampled_from(PRIMES), st.integers(), st.integers())
def test_ring_axioms(p, a, b):
    F = PrimeField(p)
    x, y = F(a), F(b)
    assert x + y == F(a + b)
    assert x * y == F(a * b)
    assert (x - y) + y == x
    assert -x + x == 0


@given(st.sampled_from(PRIMES), st.integers(min_value=1))
def test_inverse(p, a):
    F = PrimeField(p)
    x = F(a)
    if x:
        assert x * x.inverse() == 1
        assert x / x == 1
    else:
        with pytest.raises(ZeroDivisionError):
            x.inverse()


@given(st.sampled_from([17, 97, 257, 7681]), st.data())
def test_element_of_order(p, data):
    F = PrimeField(p)
    divisors = [d for d in range(1, p) if (p - 1) % d == 0]
    n = data.draw(st.sampled_from(divisors))
    z = element_of_order(F, n)
    assert z.multiplicative_order() == n
    assert z**n == 1


def test_element_of_order_is_deterministic():
    F = PrimeField(17)
    assert int(element_of_order(F, 4)) == pow(3, 4, 17)
    assert element_of_order(F, 8) == element_of_order(F, 8)


def test_order_unavailable():
    with pytest.raises(OrderUnavailable):
        element_of_order(PrimeField(13), 8)


@pytest.mark.parametrize("order,lower,expected", [(8, 7, 17), (12, 24, 37), (16, 16, 17), (24, 24, 73), (9, 9, 19),
                                                  (2, 2, 3)])
def test_choose_prime(order, lower, expected):
    F = choose_prime(order, lower)
    assert F.p == expected
    assert (F.p - 1) % order == 0 and F.p > lower


def test_prime_factors():
    assert prime_factors(720) == [2, 3, 5]
    assert prime_factors(97) == [97]


def test_signed_representative():
    F = PrimeField(17)
    assert F.signed(16) == -1
    assert F.signed(8) == 8
    assert F.signed(9) == -8
