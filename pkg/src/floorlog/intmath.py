"""Exact big-integer helpers: integer roots, logarithms and powers of rationals."""
from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["iroot", "iroot_exact", "ilog", "floor_root_of_rational", "floor_log_rational"]


def iroot(y: int, n: int) -> int:
    """Return floor(y ** (1/n)) for y >= 0 and n >= 1."""
    if n < 1:
        raise ValueError("root index must be >= 1")
    if y < 0:
        raise ValueError("negative radicand")
    if n == 1 or y < 2:
        return y
    if n == 2:
        return math.isqrt(y)
    if n >= y.bit_length():
        # 2**n > y, so the root lies in [1, 2)
        return 1
    # Newton iteration from an overestimate decreases monotonically to the floor
    x = 1 << (-(-y.bit_length() // n))
    while True:
        t = ((n - 1) * x + y // x ** (n - 1)) // n
        if t >= x:
            return x
        x = t


def iroot_exact(y: int, n: int) -> tuple[int, bool]:
    """Floor of the n-th root and whether it is exact."""
    x = iroot(y, n)
    return x, x ** n == y


def ilog(k: int, n: int) -> int:
    """Return floor(log_k n) for n >= 1, by integer comparison."""
    if k < 2:
        raise ValueError("base must be >= 2")
    if n < 1:
        raise ValueError("argument must be >= 1")
    e = max(0, (n.bit_length() - 1) // k.bit_length())
    p = k ** e
    while p * k <= n:
        p *= k
        e += 1
    while p > n:
        p //= k
        e -= 1
    return e


def floor_log_rational(k: int, x: Fraction) -> int:
    """floor(log_k x) for a positive rational x."""
    if x <= 0:
        raise ValueError("argument must be positive")
    num, den = x.numerator, x.denominator
    if num >= den:
        e = ilog(k, num // den)
        # k**e <= num/den < k**(e+1) must hold on the full rational, not its floor
        while k ** (e + 1) * den <= num:
            e += 1
        return e
    # x < 1: smallest e >= 1 with k**e * num >= den, then floor is -e
    e = ilog(k, -(-den // num))
    while k ** e * num < den:
        e += 1
    return -e


def floor_root_of_rational(num: int, den: int, n: int) -> tuple[int, bool]:
    """Floor of (num/den) ** (1/n) for num >= 0, den >= 1, and an exactness flag.

    For integer z, z <= w**(1/n) iff z**n <= w iff z**n <= floor(w), so the
    integer root of the floored quotient is the answer.
    """
    if den < 1 or num < 0:
        raise ValueError("need num >= 0 and den >= 1")
    z = iroot(num // den, n)
    return z, z ** n * den == num
