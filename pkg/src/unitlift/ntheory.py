"""Small integer helpers: trial-division primality, factoring, radicals."""

from functools import reduce
from math import gcd


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Return ``[(p, e), ...]`` with ascending primes, by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def prime_factors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def radical(n: int) -> int:
    return reduce(lambda a, b: a * b, prime_factors(n), 1)


def prime_power(n: int):
    """Return ``(p, k)`` if ``n == p**k`` with ``k >= 1``, else ``None``."""
    f = factorize(n) if n > 1 else []
    if len(f) == 1:
        return f[0]
    return None


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def nilpotency_index_mod(c: int, m: int):
    """Smallest ``k >= 1`` with ``c**k == 0 (mod m)``, or ``None`` if ``c`` is not nilpotent."""
    c %= m
    if c == 0:
        return 1
    if radical(m) and c % radical(m):
        return None
    k, acc = 1, c
    while acc % m:
        acc = acc * c % m
        k += 1
    return k


def ideal_gcd(c: int, e: int, m: int) -> int:
    """Generator ``gcd(c**e, m)`` of the ideal ``c**e * Z_m`` viewed in ``Z_m``."""
    return gcd(pow(c, e, m), m)
