"""Exact representation of the shift alpha and exact floors of k-powers.

An exact alpha is ``r + log_k(p/q)`` with ``r`` rational and ``p/q`` a positive
rational.  Every floor and ceiling for an exact alpha is decided by comparing
big integers.  Only the best-effort DecimalInterval path uses (outward-rounded,
multiprecision) interval arithmetic.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd
from typing import Union

from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import to_rational

from .intmath import floor_log_rational, floor_root_of_rational, iroot_exact

__all__ = [
    "AlphaSpec",
    "DecimalInterval",
    "KAlphaClass",
    "AmbiguousFloorError",
    "UndecidableRepresentationError",
    "parse_alpha",
    "classify_k_alpha",
    "floor_alpha_plus_log",
    "floor_k_power",
    "floor_and_frac_alpha",
    "power_floor",
    "DEFAULT_PRECISION_CAP",
]

DEFAULT_PRECISION_CAP = 4096


class AmbiguousFloorError(ArithmeticError):
    """A decimal-interval alpha is too wide to certify a floor."""

    def __init__(self, message: str, required_bits: int | None = None):
        super().__init__(message)
        self.required_bits = required_bits


class UndecidableRepresentationError(ValueError):
    """Raised when an exact decision is requested for an interval alpha."""


@dataclass(frozen=True)
class AlphaSpec:
    """alpha = r_num/r_den + log_k(p/q), all parts gcd-reduced."""

    r_num: int = 0
    r_den: int = 1
    p: int = 1
    q: int = 1

    def __post_init__(self):
        if self.r_den < 1 or self.p < 1 or self.q < 1:
            raise ValueError("need r_den >= 1, p >= 1, q >= 1")
        if gcd(abs(self.r_num), self.r_den) != 1 or gcd(self.p, self.q) != 1:
            raise ValueError("AlphaSpec parts must be gcd-reduced; use AlphaSpec.make")

    @classmethod
    def make(cls, r=0, ratio=1) -> "AlphaSpec":
        r = Fraction(r)
        ratio = Fraction(ratio)
        if ratio <= 0:
            raise ValueError("log argument must be positive")
        return cls(r.numerator, r.denominator, ratio.numerator, ratio.denominator)

    @property
    def r(self) -> Fraction:
        return Fraction(self.r_num, self.r_den)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def is_rational(self) -> bool:
        """True when alpha itself is rational as written (no log part)."""
        return self.p == 1 and self.q == 1

    def __str__(self) -> str:
        r = str(self.r)
        if self.is_rational:
            return r
        log = f"log({self.p}/{self.q})"
        return log if self.r_num == 0 else f"{r}+{log}"


@dataclass(frozen=True)
class DecimalInterval:
    """Best-effort alpha known only to lie in [midpoint - radius, midpoint + radius]."""

    midpoint: str
    radius: Fraction

    def __post_init__(self):
        if Fraction(self.radius) <= 0:
            raise ValueError("radius must be positive")
        Fraction(self.midpoint)

    @property
    def lo(self) -> Fraction:
        return Fraction(self.midpoint) - Fraction(self.radius)

    @property
    def hi(self) -> Fraction:
        return Fraction(self.midpoint) + Fraction(self.radius)

    def __str__(self) -> str:
        return f"dec:{self.midpoint}~{self.radius}"


Alpha = Union[AlphaSpec, DecimalInterval]


@dataclass(frozen=True)
class KAlphaClass:
    """Whether k**alpha is rational; ``value`` is set exactly when it is."""

    value: Fraction | None

    @property
    def is_rational(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return f"Rational({self.value})" if self.is_rational else "Irrational"


_RAT = r"[+-]?\d+(?:/\d+)?"
_ALPHA_RE = re.compile(
    rf"^(?:(?P<r>{_RAT})(?:(?P<sign>[+-])log\((?P<arg1>{_RAT})\))?"
    rf"|(?P<neg>-)?log\((?P<arg2>{_RAT})\))$"
)
_DEC_RE = re.compile(r"^dec:(?P<mid>[+-]?\d+(?:\.\d*)?)~(?P<rad>.+)$")


def parse_alpha(text: str) -> Alpha:
    """Parse the textual alpha grammar.

    Accepted forms (whitespace ignored)::

        a/b                 rational alpha, e.g. 1/2, -1, 3
        a/b+log(p/q)        a/b plus log_k(p/q); "-log" negates the log
        log(p/q)            log_k(p/q); "-log(p/q)" also accepted
        dec:<digits>~<rad>  decimal midpoint with a rational radius, e.g. dec:0.577~1/1000

    The log base is the k of whatever computation the alpha is used with.
    """
    s = "".join(text.split())
    m = _DEC_RE.match(s)
    if m:
        try:
            radius = Fraction(m["rad"])
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad radius in alpha {text!r}") from None
        return DecimalInterval(m["mid"], radius)
    m = _ALPHA_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse alpha {text!r}")
    try:
        if m["r"] is not None:
            r = Fraction(m["r"])
            arg = Fraction(m["arg1"]) if m["arg1"] else Fraction(1)
            negate = m["sign"] == "-"
        else:
            r = Fraction(0)
            arg = Fraction(m["arg2"])
            negate = m["neg"] == "-"
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in alpha {text!r}") from None
    if arg <= 0:
        raise ValueError(f"log argument must be positive in {text!r}")
    return AlphaSpec.make(r, 1 / arg if negate else arg)


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"base k must be an integer >= 2, got {k!r}")


def _require_exact(alpha: Alpha) -> AlphaSpec:
    if isinstance(alpha, DecimalInterval):
        raise UndecidableRepresentationError(
            "undecidable representation: a decimal interval cannot be decided exactly"
        )
    return alpha


def _kpow_le(k: int, e: Fraction, x: Fraction) -> bool:
    """Decide k**e <= x for rational e and positive rational x."""
    a, b = e.numerator, e.denominator
    xn, xd = x.numerator, x.denominator
    if a >= 0:
        return k ** a * xd ** b <= xn ** b
    return xd ** b <= xn ** b * k ** (-a)


def power_floor(k: int, exponent: Fraction, ratio: Fraction) -> tuple[int, bool]:
    """floor(k**exponent * ratio) for positive ratio, plus whether the value is an integer."""
    a, b = exponent.numerator, exponent.denominator
    pn, pd = ratio.numerator, ratio.denominator
    if a >= 0:
        num, den = k ** a * pn ** b, pd ** b
    else:
        num, den = pn ** b, pd ** b * k ** (-a)
    return floor_root_of_rational(num, den, b)


def classify_k_alpha(k: int, alpha: Alpha) -> KAlphaClass:
    """Decide whether k**alpha is rational, returning its exact value if so."""
    _check_k(k)
    alpha = _require_exact(alpha)
    root, exact = iroot_exact(k ** abs(alpha.r_num), alpha.r_den)
    if not exact:
        return KAlphaClass(None)
    kr = Fraction(root) if alpha.r_num >= 0 else Fraction(1, root)
    return KAlphaClass(kr * alpha.ratio)


def _floor_exact(k: int, alpha: AlphaSpec, n: int) -> int:
    x = alpha.ratio * (n + 1)
    j = floor(alpha.r) + floor_log_rational(k, x)
    # true value lies in [j, j + 2)
    if _kpow_le(k, j + 1 - alpha.r, x):
        j += 1
    return j


def _to_fraction(raw) -> Fraction:
    num, den = to_rational(raw)
    return Fraction(int(num), int(den))


def _enclosure(k: int, lo: Fraction, hi: Fraction, n: int, prec: int) -> tuple[Fraction, Fraction]:
    """Outward-rounded rational bounds on [lo, hi] + log_k(n + 1) at ``prec`` bits."""
    ctx = MPIntervalContext()  # private context: no shared precision state
    ctx.prec = prec
    x = ctx.mpf([(ctx.mpf(lo.numerator) / lo.denominator).a, (ctx.mpf(hi.numerator) / hi.denominator).b])
    y = x + ctx.log(n + 1) / ctx.log(k)
    a, b = y._mpi_
    return _to_fraction(a), _to_fraction(b)


def _floor_interval(k: int, alpha: DecimalInterval, n: int, precision_cap: int) -> int:
    lo, hi = alpha.lo, alpha.hi
    mid = Fraction(alpha.midpoint)
    prec = 64
    while prec <= precision_cap:
        a, b = _enclosure(k, lo, hi, n, prec)
        if floor(a) == floor(b):
            return floor(a)
        # once the log enclosure is much tighter than the input radius, more
        # working precision cannot help: the input interval itself straddles
        ma, mb = _enclosure(k, mid, mid, n, prec)
        if mb - ma < alpha.radius / 4:
            near = min(abs(ma - round(ma)), abs(mb - round(mb)))
            straddles = floor(ma) != floor(mb) or near <= mb - ma
            if straddles:
                raise AmbiguousFloorError(
                    f"ambiguous floor at n={n}: alpha + log_k(n+1) is within {float(mb - ma):.3g} "
                    f"of an integer; not certifiable within {precision_cap} bits",
                    required_bits=None,
                )
            bits = (1 / near).__ceil__().bit_length() + 1
            raise AmbiguousFloorError(
                f"ambiguous floor at n={n}: radius {alpha.radius} too wide, "
                f"needs radius <= 2^-{bits} (about {bits} bits)",
                required_bits=bits,
            )
        prec *= 2
    raise AmbiguousFloorError(
        f"ambiguous floor at n={n}: not certifiable within {precision_cap} bits",
        required_bits=None,
    )


def floor_alpha_plus_log(k: int, alpha: Alpha, n: int, precision_cap: int = DEFAULT_PRECISION_CAP) -> int:
    """Return floor(alpha + log_k(n + 1)).

    This is the unique j with k**(j - alpha) <= n + 1 < k**(j + 1 - alpha); an
    exact tie resolves to j.  Exact alphas are decided by big-integer
    comparison.  A decimal interval is evaluated with outward-rounded interval
    arithmetic, doubling the working precision up to ``precision_cap`` bits,
    and :class:`AmbiguousFloorError` is raised rather than returning an
    uncertified floor.
    """
    _check_k(k)
    if n < 0:
        raise ValueError("n must be >= 0")
    if isinstance(alpha, AlphaSpec):
        return _floor_exact(k, alpha, n)
    return _floor_interval(k, alpha, n, precision_cap)


@lru_cache(maxsize=1024)
def floor_and_frac_alpha(k: int, alpha: AlphaSpec) -> tuple[int, AlphaSpec]:
    """Split alpha into floor(alpha) and frac(alpha).

    The fractional part comes back normalized: its rational part lies in [0, 1)
    with any integer part folded into the log argument.
    """
    _check_k(k)
    alpha = _require_exact(alpha)
    fl = _floor_exact(k, alpha, 0)
    rest = alpha.r - fl
    i = floor(rest)
    ratio = alpha.ratio * Fraction(k) ** i
    return fl, AlphaSpec.make(rest - i, ratio)


def floor_k_power(k: int, alpha: AlphaSpec, m: int, sign: int = 1, mode: str = "floor") -> int:
    """Exact floor or ceiling of sign * k**(m - frac(alpha)).

    ``sign`` is +1 or -1 (or the strings '+'/'-'); ``mode`` is 'floor' or 'ceil'.
    """
    if sign in ("+", "-"):
        sign = 1 if sign == "+" else -1
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if mode not in ("floor", "ceil"):
        raise ValueError("mode must be 'floor' or 'ceil'")
    if m < 0:
        raise ValueError("m must be >= 0")
    _, theta = floor_and_frac_alpha(k, alpha)
    # k**(m - theta) = k**(m - f) * q/p   where theta = f + log_k(p/q)
    fl, exact = power_floor(k, m - theta.r, 1 / theta.ratio)
    ceil = fl if exact else fl + 1
    if sign == 1:
        return fl if mode == "floor" else ceil
    return -ceil if mode == "floor" else -fl
