"""Univariate polynomials over Q (coefficient lists, constant term first) and
reduced rational functions with integer coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

__all__ = [
    "RationalFunctionQ",
    "poly_trim",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "series_mul",
    "series_coefficients",
]


def poly_trim(p) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(a, b) -> list:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_sub(a, b) -> list:
    return poly_add(a, [-x for x in b])


def poly_mul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_divmod(a, b) -> tuple[list, list]:
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in poly_trim(a)]
    q = [Fraction(0)] * max(0, len(r) - len(b) + 1)
    lead = Fraction(b[-1])
    while len(r) >= len(b):
        c = r[-1] / lead
        s = len(r) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            r[s + i] -= c * y
        r = poly_trim(r)
    return poly_trim(q), r


def poly_gcd(a, b) -> list:
    """Monic gcd over Q."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def series_mul(a, b, n: int) -> list:
    """First n coefficients of the product of two power series."""
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def series_coefficients(num, den, n: int) -> list:
    """First n Taylor coefficients of num/den, den[0] != 0."""
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator must have a nonzero constant term")
    d0 = Fraction(den[0])
    out = []
    for m in range(n):
        s = Fraction(num[m]) if m < len(num) else Fraction(0)
        for j in range(1, min(m, len(den) - 1) + 1):
            s -= den[j] * out[m - j]
        out.append(s / d0)
    return [int(x) if x.denominator == 1 else x for x in out]


def _integerize(coeffs) -> tuple[list[int], int]:
    fr = [Fraction(c) for c in coeffs]
    den = reduce(lcm, (c.denominator for c in fr), 1)
    return [int(c * den) for c in fr], den


@dataclass(frozen=True)
class RationalFunctionQ:
    """numerator/denominator, coprime, integer coefficients with joint content 1
    and positive denominator constant term."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    @classmethod
    def make(cls, num, den) -> "RationalFunctionQ":
        num, den = poly_trim(num), poly_trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den) if num else [Fraction(1)]
        if len(g) > 1:
            num = poly_divmod(num, g)[0]
            den = poly_divmod(den, g)[0]
        if not num:
            return cls((), (1,))
        if den[0] == 0:
            raise ValueError("denominator vanishes at 0; not a power series")
        n_int, n_scale = _integerize(num)
        d_int, d_scale = _integerize(den)
        # bring both to a common integer scale
        L = lcm(n_scale, d_scale)
        n_int = [c * (L // n_scale) for c in n_int]
        d_int = [c * (L // d_scale) for c in d_int]
        cont = reduce(gcd, n_int + d_int, 0)
        sgn = 1 if d_int[0] > 0 else -1
        return cls(tuple(sgn * c // cont for c in n_int), tuple(sgn * c // cont for c in d_int))

    @property
    def num_degree(self) -> int:
        return len(self.numerator) - 1

    @property
    def den_degree(self) -> int:
        return len(self.denominator) - 1

    @property
    def degree(self) -> int:
        return max(self.num_degree, self.den_degree)

    def coefficients(self, n: int) -> list:
        """[x^0..x^(n-1)] of the Taylor expansion."""
        return series_coefficients(self.numerator, self.denominator, n)

    def __add__(self, other: "RationalFunctionQ") -> "RationalFunctionQ":
        return RationalFunctionQ.make(
            poly_add(poly_mul(self.numerator, other.denominator), poly_mul(other.numerator, self.denominator)),
            poly_mul(self.denominator, other.denominator),
        )

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "denominator": list(self.denominator)}

    def __str__(self) -> str:
        return f"({_fmt(self.numerator)}) / ({_fmt(self.denominator)})"


def _fmt(p) -> str:
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        coef = str(c) if (mono == "" or abs(c) != 1) else ("-" if c < 0 else "")
        terms.append(f"{coef}{'*' if mono and coef not in ('', '-') else ''}{mono}")
    return " + ".join(terms).replace("+ -", "- ") or "0"
