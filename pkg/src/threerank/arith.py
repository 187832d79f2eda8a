"""Exact integer utilities: primality, factorization, square roots, symbols."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, isqrt, prod

from .errors import FactorizationBudgetExceeded

DEFAULT_FACTOR_BUDGET = 2_000_000
_RHO_SEED = 20180511

# deterministic Miller-Rabin witness set, valid for n < 3.3 * 10**24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


SMALL_PRIMES = tuple(primes_up_to(1000))


def smallest_prime_factors(limit: int) -> list[int]:
    """Table spf[n] = least prime factor of n for 2 <= n <= limit (spf[0] = spf[1] = 0)."""
    spf = list(range(limit + 1))
    if limit >= 1:
        spf[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def integer_sqrt(n: int) -> int:
    return isqrt(n)


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def _miller_rabin(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas(n: int) -> bool:
    # Selfridge parameter choice: first D in 5, -7, 9, -11, ... with (D/n) = -1
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0:
            return abs(D) == n
        D = -D - 2 if D > 0 else -D + 2
        if D == 13 and is_perfect_square(n):
            return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    inv2 = (n + 1) // 2
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U = U * V % n
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic below 2**64; Miller-Rabin plus strong Lucas (BPSW) above."""
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 1_000_000:
        return True
    if not all(_miller_rabin(n, b) for b in _MR_BASES):
        return False
    if n < 1 << 64:
        return True
    return _strong_lucas(n)


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        assert prod(p**e for p, e in self.factors) == self.value

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)


def _brent(n: int, rng: random.Random, budget: int) -> tuple[int | None, int]:
    """Pollard-Brent on composite n. Returns (nontrivial factor or None, iterations used)."""
    used = 0
    while used < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            used += r
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                used += min(m, r - k)
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
                used += 1
        if 1 < g < n:
            return g, used
    return None, used


def factor(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> Factorization:
    """Complete factorization of n >= 1.

    Trial division by the primes below 1000, then Pollard-Brent with a fixed
    seed. ``budget`` caps the total number of rho iterations.
    """
    if n < 1:
        raise ValueError(f"factor() needs n >= 1, got {n}")
    found: dict[int, int] = {}
    m = n
    for p in SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    rng = random.Random(_RHO_SEED)
    remaining = budget
    stack = [m] if m > 1 else []
    while stack:
        c = stack.pop()
        if is_prime(c):
            found[c] = found.get(c, 0) + 1
            continue
        r = isqrt(c)
        if r * r == c:
            stack += [r, r]
            continue
        g, used = _brent(c, rng, remaining)
        remaining -= used
        if g is None:
            raise FactorizationBudgetExceeded(c, budget)
        stack += [g, c // g]
    return Factorization(n, tuple(sorted(found.items())))


def squarefree_decompose(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> tuple[int, int]:
    """Return (a, d) with a*a*d == n and d squarefree."""
    f = factor(n, budget)
    a = prod(p ** (e // 2) for p, e in f.factors)
    d = prod(p for p, e in f.factors if e % 2)
    return a, d


def is_squarefree(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factor(abs(n), budget).factors)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y == g == gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi(a, n)


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of a modulo an odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def sqrt_mod_prime_power(a: int, p: int, e: int) -> list[int]:
    """All x in [0, p**e) with x*x == a (mod p**e), sorted."""
    if p == 2:
        roots = [x for x in (0, 1) if (x * x - a) % 2 == 0]
    else:
        r = sqrt_mod_prime(a, p)
        if r is None:
            return []
        roots = sorted({r, (-r) % p})
    pj = p
    for _ in range(e - 1):
        nxt = pj * p
        roots = [x + t * pj for x in roots for t in range(p) if ((x + t * pj) ** 2 - a) % nxt == 0]
        if not roots:
            return []
        pj = nxt
    return sorted(roots)


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x mod m1*m2 with x = r1 (mod m1), x = r2 (mod m2), for coprime moduli."""
    inv = pow(m1, -1, m2)
    return (r1 + m1 * ((r2 - r1) * inv % m2)) % (m1 * m2)


def sqrt_mod(a: int, factors: dict[int, int]) -> list[int]:
    """All square roots of a modulo m = prod(p**e for p, e in factors), sorted."""
    roots, modulus = [0], 1
    for p, e in sorted(factors.items()):
        pe = p**e
        local = sqrt_mod_prime_power(a, p, e)
        if not local:
            return []
        roots = [crt_pair(r, modulus, s, pe) for r in roots for s in local]
        modulus *= pe
    return sorted(roots)
