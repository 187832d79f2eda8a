from math import gcd, isqrt, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threerank import arith
from threerank.errors import FactorizationBudgetExceeded

import oracles


def test_is_prime_small_cases():
    assert arith.is_prime(2)
    assert not arith.is_prime(1)
    assert not arith.is_prime(0)
    assert not arith.is_prime(-7)


def test_is_prime_596789():
    # trial division up to 773 finds no divisor
    assert oracles.trial_division_is_prime(596789)
    assert arith.is_prime(596789)


def test_is_prime_matches_sieve_below_one_million():
    flags = oracles.sieve(10**6)
    assert all(arith.is_prime(n) == flags[n] for n in range(10**6 + 1))


@pytest.mark.parametrize(
    "n, expected",
    [
        (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
        (3825123056546413051, False),  # strong pseudoprime to the first nine prime bases
        (318665857834031151167461, False),  # strong pseudoprime to the first twelve prime bases
        (561 * 1105, False),
        (2**61 - 1, True),
        (2**89 - 1, True),
        (2**127 - 1, True),
        ((2**61 - 1) * (2**67 - 1), False),
        (18446744073709551557, True),  # largest prime below 2^64
    ],
)
def test_is_prime_hard_cases(n, expected):
    assert arith.is_prime(n) is expected


def test_factor_examples():
    assert arith.factor(12).as_dict() == {2: 2, 3: 1}
    assert arith.factor(1).factors == ()
    assert arith.factor(2685619).as_dict() == {139: 3}
    assert 139**3 == 2685619


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        arith.factor(0)


def test_factor_budget_exceeded():
    p, q = 2**61 - 1, 2**89 - 1
    with pytest.raises(FactorizationBudgetExceeded):
        arith.factor(p * q, budget=50)


def test_factor_large_semiprime():
    p, q = 1000000007, 998244353
    assert arith.factor(p * q * 7 * 7).as_dict() == {7: 2, q: 1, p: 1}


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=10**9))
def test_factor_recomposes(n):
    f = arith.factor(n)
    assert prod(p**e for p, e in f.factors) == n
    primes = [p for p, _ in f.factors]
    assert primes == sorted(set(primes))
    assert all(arith.is_prime(p) and e >= 1 for p, e in f.factors)
    assert f.as_dict() == oracles.trial_factor(n)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=10**9))
def test_squarefree_decompose_property(n):
    a, d = arith.squarefree_decompose(n)
    assert a * a * d == n
    assert all(e == 1 for e in oracles.trial_factor(d).values())


def test_squarefree_decompose_examples():
    assert arith.squarefree_decompose(45) == (3, 5)
    assert arith.squarefree_decompose(49) == (7, 1)


def test_squarefree_decompose_family_radicand():
    n = 735840837
    assert n == 137 * (2 * 139**3 - 137)
    # frozen from the trial-division oracle: 735840837 = 3^2 * 137 * 596789
    assert oracles.trial_factor(n) == {3: 2, 137: 1, 596789: 1}
    a, d = arith.squarefree_decompose(n)
    assert (a, d) == (3, 137 * 596789)
    assert a % 3 == 0 and d % 3 != 0


def test_is_perfect_square_examples():
    assert arith.is_perfect_square(144)
    assert not arith.is_perfect_square(145)
    assert not arith.is_perfect_square(432)
    assert 20**2 < 432 < 21**2
    assert not arith.is_perfect_square(-4)
    assert arith.is_perfect_square(0)


def test_is_perfect_square_agrees_with_isqrt():
    assert all(arith.is_perfect_square(n) == (isqrt(n) ** 2 == n) for n in range(10**6 + 1))


def test_kronecker_matches_definition():
    for a in range(-60, 61):
        for n in range(-60, 61):
            assert arith.kronecker(a, n) == oracles.kronecker_by_definition(a, n), (a, n)


def test_sqrt_mod_matches_brute_force():
    for D in range(-150, 150):
        for m in range(1, 80):
            brute = [x for x in range(m) if (x * x - D) % m == 0]
            assert arith.sqrt_mod(D, oracles.trial_factor(m)) == brute, (D, m)


def test_sqrt_mod_prime_large():
    p = 10**9 + 7
    for a in (2, 3, 5, 10, 12345):
        r = arith.sqrt_mod_prime(a, p)
        if r is None:
            assert pow(a, (p - 1) // 2, p) == p - 1
        else:
            assert r * r % p == a


def test_xgcd():
    for a in range(-30, 31):
        for b in range(-30, 31):
            g, x, y = arith.xgcd(a, b)
            assert g >= 0 and a * x + b * y == g
            assert g == gcd(a, b)
