"""Small exact-arithmetic helpers (trial division is plenty at this scale)."""

from __future__ import annotations


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n| in ascending order."""
    n = abs(n)
    out: list[int] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def smallest_prime_factor(n: int) -> int:
    n = abs(n)
    if n < 2:
        raise ValueError("no prime factor")
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def valuation(n: int, p: int) -> int:
    """Largest k with p**k dividing n (n nonzero)."""
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k
