"""Small exact-integer helpers shared across modules."""

from __future__ import annotations


def is_prime(n: int) -> bool:
    """Trial-division primality; inputs here are always small."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_power_of(value: int, base: int) -> bool:
    """True iff value == base**k for some integer k >= 0."""
    if value == 1:
        return True
    if base <= 1:
        return value == base
    while value > 1 and value % base == 0:
        value //= base
    return value == 1
