"""Small integer utilities: factorisation, Euler phi, lcm."""

from __future__ import annotations

from functools import reduce
from math import gcd

__all__ = ["gcd", "lcm", "euler_phi", "factorize", "prime_divisors", "is_prime",
           "is_prime_power", "p_part"]


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division, as ``{p: exponent}``."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def is_prime_power(n: int) -> bool:
    return n > 1 and len(factorize(n)) == 1


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi is defined for n >= 1")
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result
