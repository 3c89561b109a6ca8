"""Trial-division primality and factorization; desk-scale inputs only."""

from __future__ import annotations

from .errors import ParameterError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def factorize(m: int) -> list[int]:
    """Prime factors of ``m`` with multiplicity, ascending.

    >>> factorize(60)
    [2, 2, 3, 5]
    """
    if int(m) != m or m < 2:
        raise ParameterError(f"factorize needs an integer m >= 2, got {m!r}")
    m = int(m)
    out = []
    while m % 2 == 0:
        out.append(2)
        m //= 2
    d = 3
    while d * d <= m:
        while m % d == 0:
            out.append(d)
            m //= d
        d += 2
    if m > 1:
        out.append(m)
    return out


def is_power_of_two(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0
