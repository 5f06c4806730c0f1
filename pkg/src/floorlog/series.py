"""Coefficients of f(x) = sum_n a(n) x^|tau(n)| and the digit transform g(x).

With theta = frac(alpha), the coefficient b(m) of f has the closed form

    b(m) = k^(m-1) * ((k-1)(m + floor(alpha)) + 1) + 1 - ceil(k^(m-theta)),   m >= 1,

and f splits as a fixed rational function plus sum_{m>=1} floor(-k^(m-theta)) x^m.
The series g has coefficients floor(-k^(m+1-theta)) - k*floor(-k^(m-theta)),
which are the base-k digits of y = frac(-k^(1-theta)).  ``digit_oracle``
recomputes those digits from y directly without touching the g path.
"""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor, isqrt

from .alpha import (
    AlphaSpec,
    classify_k_alpha,
    floor_alpha_plus_log,
    floor_and_frac_alpha,
    floor_k_power,
)
from .intmath import floor_root_of_rational
from .poly import RationalFunctionQ, poly_add, poly_mul
from .sequence import BaseKWord, sequence_array, tau

__all__ = [
    "BudgetExceededError",
    "ConsistencyError",
    "CoeffTable",
    "GTransform",
    "NCTermTable",
    "default_budget",
    "b_bruteforce",
    "b_closed_form",
    "b_special_case_k2_half",
    "coeff_table",
    "rational_part",
    "floor_term",
    "g_coefficients",
    "digit_oracle",
    "rational_digits",
    "exact_series",
    "nc_series_terms",
    "univariate_specialize",
    "commutative_projection",
    "bivariate_projection_expansion",
    "series_csv",
]

DEFAULT_BUDGET = 1 << 24
_CHUNK = 1 << 20


class BudgetExceededError(RuntimeError):
    pass


class ConsistencyError(RuntimeError):
    """An identity that must hold exactly did not; indicates an arithmetic bug."""


def default_budget() -> int:
    env = os.environ.get("FLOORLOG_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class CoeffTable:
    k: int
    alpha: AlphaSpec
    m_max: int
    b: list[int]
    method: str


@dataclass
class GTransform:
    k: int
    alpha: AlphaSpec
    m_max: int
    g: list[int]  # g[0] is g(1)


@dataclass
class NCTermTable:
    k: int
    alpha: AlphaSpec
    max_len: int
    entries: dict[BaseKWord, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "alpha": str(self.alpha),
            "max_len": self.max_len,
            "terms": [{"word": str(w), "coeff": c} for w, c in self.entries.items()],
        }


def _check_budget(k: int, m: int, budget: int | None) -> None:
    budget = default_budget() if budget is None else budget
    if k ** m > budget:
        raise BudgetExceededError(f"k^m = {k}^{m} summands exceeds budget {budget}")


def b_bruteforce(k: int, alpha: AlphaSpec, m: int, budget: int | None = None) -> int:
    """b(m) by summing a(n) over k^(m-1) <= n < k^m."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return floor_alpha_plus_log(k, alpha, 0)
    _check_budget(k, m, budget)
    lo, hi = k ** (m - 1), k ** m
    total = 0
    for start in range(lo, hi, _CHUNK):
        count = min(_CHUNK, hi - start)
        total += int(sequence_array(k, alpha, start, count).sum())
    return total


def b_closed_form(k: int, alpha: AlphaSpec, m: int) -> int:
    if m < 1:
        raise ValueError("closed form holds for m >= 1; b(0) = floor(alpha)")
    fl, _ = floor_and_frac_alpha(k, alpha)
    return k ** (m - 1) * ((k - 1) * (m + fl) + 1) + 1 - floor_k_power(k, alpha, m, 1, "ceil")


def b_special_case_k2_half(m: int) -> tuple[int, int]:
    """(c(m), b(m)) for k = 2, alpha = 1/2.

    c(m) = floor(2^(m - 1/2)) = isqrt(2^(2m-1)) is the least n with
    1/2 + log2(n+1) >= m.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    c = isqrt(1 << (2 * m - 1))
    b = (m + 1) * (1 << (m - 1)) - c
    two_block = (m - 1) * (c - (1 << (m - 1))) + m * ((1 << m) - c)
    if two_block != b:
        raise ConsistencyError(f"two-block identity fails at m={m}: {two_block} != {b}")
    return c, b


def coeff_table(k: int, alpha: AlphaSpec, m_max: int, method: str = "closed", budget: int | None = None) -> CoeffTable:
    if method not in ("brute", "closed"):
        raise ValueError("method must be 'brute' or 'closed'")
    b = [floor_alpha_plus_log(k, alpha, 0)]
    for m in range(1, m_max + 1):
        b.append(b_bruteforce(k, alpha, m, budget) if method == "brute" else b_closed_form(k, alpha, m))
    return CoeffTable(k, alpha, m_max, b, method)


def rational_part(k: int, alpha: AlphaSpec) -> RationalFunctionQ:
    """(1-x)(kx + fl(1-kx))/(1-kx)^2 + x/(1-x) as one reduced fraction."""
    fl, _ = floor_and_frac_alpha(k, alpha)
    one_minus_kx = [1, -k]
    first_num = poly_mul([1, -1], poly_add([0, k], [fl, -fl * k]))
    first_den = poly_mul(one_minus_kx, one_minus_kx)
    return RationalFunctionQ.make(
        poly_add(poly_mul(first_num, [1, -1]), poly_mul([0, 1], first_den)),
        poly_mul(first_den, [1, -1]),
    )


def floor_term(k: int, alpha: AlphaSpec, m: int) -> int:
    """floor(-k^(m - frac(alpha)))."""
    return floor_k_power(k, alpha, m, -1, "floor")


def g_coefficients(k: int, alpha: AlphaSpec, m_max: int) -> GTransform:
    g = []
    prev = floor_term(k, alpha, 1)
    for m in range(1, m_max + 1):
        nxt = floor_term(k, alpha, m + 1)
        d = nxt - k * prev
        if not 0 <= d < k:
            raise ConsistencyError(f"g({m}) = {d} is not a base-{k} digit")
        g.append(d)
        prev = nxt
    return GTransform(k, alpha, m_max, g)


def rational_digits(y: Fraction, k: int) -> tuple[list[int], list[int]]:
    """Base-k expansion of y in [0, 1) as (preperiod digits, period digits).

    Long division; the cycle is found by remembering remainders.  A
    terminating expansion has period [0].
    """
    if not 0 <= y < 1:
        raise ValueError("y must lie in [0, 1)")
    num, den = y.numerator, y.denominator
    seen: dict[int, int] = {}
    digits = []
    while num not in seen:
        seen[num] = len(digits)
        d, num = divmod(num * k, den)
        digits.append(d)
    start = seen[num]
    return digits[:start], digits[start:]


def _y_value(k: int, alpha: AlphaSpec, fl: int, v: Fraction) -> Fraction:
    # k^(1 - frac(alpha)) = k^(1 + floor(alpha)) / k^alpha
    w = Fraction(k) ** (1 + fl) / v
    return -w - floor(-w)


def _ceil_root(num: int, den: int, d: int) -> int:
    z, exact = floor_root_of_rational(num, den, d)
    return z if exact else z + 1


def digit_oracle(k: int, alpha: AlphaSpec, m_max: int) -> list[int]:
    """First m_max base-k digits of y = frac(-k^(1 - frac(alpha))), computed from y.

    Rational k^alpha: long division of the exact rational y.  Otherwise
    y = ceil(V) - V with V**d rational (d the denominator of alpha's rational
    part); floor(k^M y) comes from two integer roots at scale k^M and the
    digits are read off by repeated division.
    """
    fl = floor_alpha_plus_log(k, alpha, 0)
    cls = classify_k_alpha(k, alpha)
    if cls.is_rational:
        pre, per = rational_digits(_y_value(k, alpha, fl, cls.value), k)
        out = list(pre)
        while len(out) < m_max:
            out.extend(per)
        return out[:m_max]
    # V = k^(1 + fl - r) * q/p, so V**d = k^E * q^d / p^d
    d = alpha.r_den
    E = (1 + fl) * d - alpha.r_num
    A, B = alpha.q ** d, alpha.p ** d

    def ceil_scaled(M: int) -> int:
        e = M * d + E
        num, den = (k ** e * A, B) if e >= 0 else (A, B * k ** (-e))
        return _ceil_root(num, den, d)

    M = m_max
    Y = k ** M * ceil_scaled(0) - ceil_scaled(M)
    if not 0 <= Y < k ** M:
        raise ConsistencyError("scaled y out of range")
    out = []
    for _ in range(M):
        Y, r = divmod(Y, k)
        out.append(r)
    return out[::-1]


def exact_series(k: int, alpha: AlphaSpec) -> RationalFunctionQ:
    """f(x) as an exact rational function; requires k^alpha rational.

    The floor terms F(m) = floor(-k^(m-theta)) satisfy
    sum_{m>=1} F(m) x^m = x (G(x) + F(1)) / (1 - kx), with G the digit
    series of the rational y, which is eventually periodic.
    """
    cls = classify_k_alpha(k, alpha)
    if not cls.is_rational:
        raise ValueError(f"k^alpha is irrational for k={k}, alpha={alpha}; f is not rational")
    fl, _ = floor_and_frac_alpha(k, alpha)
    pre, per = rational_digits(_y_value(k, alpha, fl, cls.value), k)
    P, T = len(pre), len(per)
    # G = sum_{m=1}^{P} pre x^m + x^P * (sum_{j=1}^{T} per x^j) / (1 - x^T)
    head = [0] + list(pre)
    cyc = [0] * (P + 1) + list(per)
    cyc_den = [1] + [0] * (T - 1) + [-1]
    g_num = poly_add(poly_mul(head, cyc_den), cyc)
    F1 = floor_term(k, alpha, 1)
    tail_num = poly_mul([0, 1], poly_add(g_num, poly_mul([F1], cyc_den)))
    tail_den = poly_mul(cyc_den, [1, -k])
    return rational_part(k, alpha) + RationalFunctionQ.make(tail_num, tail_den)


def nc_series_terms(k: int, alpha: AlphaSpec, max_len: int, budget: int | None = None) -> NCTermTable:
    """Coefficient a(n) on the word tau(n) for all |tau(n)| <= max_len.

    Entries are ordered by length then value, which is increasing n.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    _check_budget(k, max_len, budget)
    values = sequence_array(k, alpha, 0, k ** max_len).tolist()
    return NCTermTable(k, alpha, max_len, {tau(k, n): v for n, v in enumerate(values)})


def univariate_specialize(table: NCTermTable) -> CoeffTable:
    """Set every letter to x: b(m) is the sum of coefficients on words of length m."""
    b = [0] * (table.max_len + 1)
    for w, c in table.entries.items():
        b[len(w)] += c
    return CoeffTable(table.k, table.alpha, table.max_len, b, "brute")


def commutative_projection(table: NCTermTable) -> dict[tuple[int, ...], int]:
    """Coefficient per letter multiset (i_0, ..., i_{k-1}), letting the variables commute."""
    out: dict[tuple[int, ...], int] = {}
    for w, c in table.entries.items():
        deg = [0] * table.k
        for d in w.digits:
            deg[d] += 1
        key = tuple(deg)
        out[key] = out.get(key, 0) + c
    return out


def _bmul(a: dict, b: dict, max_deg: int) -> dict:
    out: dict = {}
    for (i, j), x in a.items():
        for (s, t), y in b.items():
            if i + j + s + t <= max_deg:
                out[(i + s, j + t)] = out.get((i + s, j + t), 0) + x * y
    return {key: v for key, v in out.items() if v}


def bivariate_projection_expansion(max_deg: int) -> dict[tuple[int, int], int]:
    """Truncated expansion of x1 (1 - x0 - x1 + x0^2 + x0 x1) / ((1 - x1)(1 - x0 - x1)^2).

    Keys are (deg x0, deg x1) with total degree <= max_deg.  Uses
    [x0^a x1^b] 1/(1 - x0 - x1)^2 = (a + b + 1) * C(a + b, a).
    """
    num = {(0, 1): 1, (1, 1): -1, (0, 2): -1, (2, 1): 1, (1, 2): 1}
    geo = {(0, j): 1 for j in range(max_deg + 1)}
    sq = {(a, n - a): (n + 1) * comb(n, a) for n in range(max_deg + 1) for a in range(n + 1)}
    return _bmul(_bmul(num, geo, max_deg), sq, max_deg)


def series_csv(k: int, alpha: AlphaSpec, m_max: int, budget: int | None = None) -> str:
    """Rows m, b_brute, b_closed, rational_part_coeff, floor_term, g_m, digit_m (m >= 1).

    b_brute is left blank when the summation budget does not allow it.
    """
    rp = rational_part(k, alpha).coefficients(m_max + 1)
    g = g_coefficients(k, alpha, m_max).g
    dig = digit_oracle(k, alpha, m_max)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "b_brute", "b_closed", "rational_part_coeff", "floor_term", "g_m", "digit_m"])
    for m in range(1, m_max + 1):
        try:
            brute = b_bruteforce(k, alpha, m, budget)
        except BudgetExceededError:
            brute = ""
        w.writerow([m, brute, b_closed_form(k, alpha, m), rp[m], floor_term(k, alpha, m), g[m - 1], dig[m - 1]])
    return buf.getvalue()
