"""Bounded searches for constant-recursive, rational, eventually periodic and
polynomial-recursive structure in exact integer sequences.

A ``None`` result means the exact nullspace is trivial within the stated
bounds; it is never a statement about unbounded orders or horizons.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from .linalg import nullspace_q, solve_q
from .poly import RationalFunctionQ

__all__ = [
    "LinearRecurrence",
    "PRecCandidate",
    "PeriodReport",
    "guess_linear_recurrence",
    "series_to_rational",
    "detect_period",
    "guess_polynomial_recurrence",
    "result_json",
    "LINEAR_HOLDOUT",
    "POLY_HOLDOUT",
]

LINEAR_HOLDOUT = 4
POLY_HOLDOUT = 8


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


@dataclass(frozen=True)
class LinearRecurrence:
    """u(m + order) = sum_j coeffs[j-1] * u(m + order - j) for m >= valid_from."""

    order: int
    coeffs: tuple[Fraction, ...]
    valid_from: int = 0

    def holds_on(self, seq: Sequence[int]) -> bool:
        r = self.order
        return all(
            sum(c * seq[m + r - j] for j, c in enumerate(self.coeffs, 1)) == seq[m + r]
            for m in range(self.valid_from, len(seq) - r)
        )

    def extend(self, seq: Sequence[int], n: int) -> list:
        out = list(seq)
        while len(out) < n:
            v = sum(c * out[-j] for j, c in enumerate(self.coeffs, 1))
            out.append(int(v) if Fraction(v).denominator == 1 else v)
        return out

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [_num(c) for c in self.coeffs], "valid_from": self.valid_from}

    def __str__(self) -> str:
        r = self.order
        rhs = " + ".join(f"{c}*u(m+{r - j})" for j, c in enumerate(self.coeffs, 1) if c)
        return f"u(m+{r}) = {rhs or '0'}"


@dataclass(frozen=True)
class PRecCandidate:
    """sum_i p_i(m) u(m+i) = 0, with polys[i][t] the coefficient of m^t in p_i."""

    order: int
    degree: int
    polys: tuple[tuple[int, ...], ...]

    def residual(self, seq: Sequence[int], m: int) -> int:
        return sum(
            sum(c * m ** t for t, c in enumerate(p)) * seq[m + i] for i, p in enumerate(self.polys)
        )

    def holds_on(self, seq: Sequence[int]) -> bool:
        return all(self.residual(seq, m) == 0 for m in range(len(seq) - self.order))

    def to_json(self) -> dict:
        return {"order": self.order, "degree": self.degree, "polys": [list(p) for p in self.polys]}


@dataclass(frozen=True)
class PeriodReport:
    preperiod: int | None
    period: int | None
    horizon: int

    @property
    def found(self) -> bool:
        return self.period is not None

    def to_json(self) -> dict:
        return {"preperiod": self.preperiod, "period": self.period, "horizon": self.horizon}


def guess_linear_recurrence(seq: Sequence[int], max_order: int) -> LinearRecurrence | None:
    """Minimal-order constant-coefficient recurrence valid from index 0.

    Fitted on all but the last ``LINEAR_HOLDOUT`` terms by an exact Hankel
    solve; the holdout must also satisfy it.
    """
    seq = [int(x) for x in seq]
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    if len(seq) < 2 * max_order + LINEAR_HOLDOUT:
        raise ValueError(f"need at least {2 * max_order + LINEAR_HOLDOUT} terms for max_order={max_order}")
    fit = seq[:-LINEAR_HOLDOUT]
    for r in range(1, max_order + 1):
        rows = [[fit[m + r - j] for j in range(1, r + 1)] for m in range(len(fit) - r)]
        rhs = [fit[m + r] for m in range(len(fit) - r)]
        sol = solve_q(rows, rhs)
        if sol is None:
            continue
        rec = LinearRecurrence(r, tuple(sol))
        if rec.holds_on(seq):
            return rec
    return None


def series_to_rational(seq: Sequence[int], max_deg: int | None = None) -> RationalFunctionQ | None:
    """Rational function with numerator and denominator degree <= max_deg whose
    Taylor coefficients are exactly ``seq``.

    Tries denominators of increasing degree d: D(x) S(x) must have no terms
    of degree max_deg+1 .. len(seq)-1 with D(0) != 0.
    """
    seq = [int(x) for x in seq]
    L = len(seq)
    if max_deg is None:
        max_deg = (L - 2) // 2
    if max_deg < 0 or L < 2 * max_deg + 2:
        raise ValueError(f"need at least {2 * max_deg + 2} terms for max_deg={max_deg}")
    for d in range(max_deg + 1):
        rows = [[seq[n - j] for j in range(d + 1)] for n in range(max_deg + 1, L)]
        basis = nullspace_q(rows, d + 1)
        den = next((v for v in basis if v[0] != 0), None)
        if den is None:
            continue
        den = [x / den[0] for x in den]
        num = [sum(den[j] * seq[n - j] for j in range(min(d, n) + 1)) for n in range(max_deg + 1)]
        rf = RationalFunctionQ.make(num, den)
        if rf.num_degree <= max_deg and rf.den_degree <= max_deg and rf.coefficients(L) == seq:
            return rf
    return None


def detect_period(digits: Sequence[int], horizon: int, max_span: int | None = None) -> PeriodReport:
    """Lexicographically least (preperiod, period) fitting digits[:horizon]
    with at least three full periods after the preperiod.

    ``max_span`` bounds preperiod + period and defaults to horizon // 3, so
    the repeating tail covers at least two thirds of the horizon; without it
    any stream ends in three equal digits often enough to report junk.
    """
    if horizon < 8 or len(digits) < horizon:
        raise ValueError("need len(digits) >= horizon >= 8")
    if max_span is None:
        max_span = horizon // 3
    d = list(digits[:horizon])
    for pre in range(horizon - 2):
        for per in range(1, (horizon - pre) // 3 + 1):
            if max_span is not None and pre + per > max_span:
                break
            if all(d[i] == d[i + per] for i in range(pre, horizon - per)):
                return PeriodReport(pre, per, horizon)
    return PeriodReport(None, None, horizon)


def _primitive(v: list[Fraction]) -> list[int]:
    scale = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * scale) for x in v]
    g = reduce(gcd, ints, 0) or 1
    ints = [x // g for x in ints]
    lead = next(x for x in reversed(ints) if x)
    return [-x for x in ints] if lead < 0 else ints


def guess_polynomial_recurrence(seq: Sequence[int], max_order: int, max_degree: int) -> PRecCandidate | None:
    """Search (order, degree) pairs in increasing order for sum_i p_i(m) u(m+i) = 0.

    The nullspace is taken on the fitting window; a nontrivial one must
    survive the last ``POLY_HOLDOUT`` positions as well.
    """
    seq = [int(x) for x in seq]
    N = len(seq)
    need = (max_order + 1) * (max_degree + 1) + max_order + POLY_HOLDOUT
    if N < need:
        raise ValueError(f"need at least {need} terms")

    def row(m: int, rho: int, deg: int) -> list[int]:
        return [m ** t * seq[m + i] for i in range(rho + 1) for t in range(deg + 1)]

    for rho in range(max_order + 1):
        for deg in range(max_degree + 1):
            n_unknown = (rho + 1) * (deg + 1)
            fit_rows = [row(m, rho, deg) for m in range(N - POLY_HOLDOUT - rho)]
            if not nullspace_q(fit_rows, n_unknown):
                continue
            all_rows = fit_rows + [row(m, rho, deg) for m in range(N - POLY_HOLDOUT - rho, N - rho)]
            basis = nullspace_q(all_rows, n_unknown)
            if not basis:
                continue
            v = _primitive(basis[0])
            polys = tuple(tuple(v[i * (deg + 1):(i + 1) * (deg + 1)]) for i in range(rho + 1))
            return PRecCandidate(rho, deg, polys)
    return None


def result_json(kind: str, bounds: dict, found, validated: bool | None = None) -> dict:
    """Uniform detector result: {kind, bounds, found, parameters?, validated}."""
    out = {"kind": kind, "bounds": bounds, "found": found is not None}
    if found is not None:
        out["parameters"] = found.to_json()
    out["validated"] = bool(found is not None if validated is None else validated)
    return out
