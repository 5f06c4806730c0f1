"""The sequence a(n) = floor(alpha + log_k(n+1)), base-k words and exponent groups."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .alpha import AlphaSpec, floor_alpha_plus_log
from .intmath import ilog

__all__ = [
    "BaseKWord",
    "SequenceWindow",
    "tau",
    "tau_length",
    "word_value",
    "sequence_terms",
    "sequence_array",
    "thresholds",
    "grouped_by_exponent",
    "window_csv",
]


@dataclass(frozen=True)
class BaseKWord:
    """Digits of n in base k, least significant first (the order of tau)."""

    k: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.digits and self.digits[-1] == 0:
            raise ValueError("a nonempty word cannot end in digit 0")
        if any(not 0 <= d < self.k for d in self.digits):
            raise ValueError("digit out of range")

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        return word_value(self.k, self.digits)

    def letters(self) -> str:
        """Render as x_{d0} x_{d1} ..., or the empty-word symbol."""
        return " ".join(f"x{d}" for d in self.digits) or "ε"

    def msb_first(self) -> str:
        """Conventional positional string for display."""
        return "".join(str(d) if d < 10 else f"[{d}]" for d in reversed(self.digits))

    def __str__(self) -> str:
        return "".join(str(d) if d < 10 else f"[{d}]" for d in self.digits)


@dataclass
class SequenceWindow:
    k: int
    alpha: AlphaSpec
    start: int
    values: list[int] = field(default_factory=list)

    def __len__(self):
        return len(self.values)

    def indices(self) -> range:
        return range(self.start, self.start + len(self.values))


def tau(k: int, n: int) -> BaseKWord:
    if n < 0:
        raise ValueError("n must be >= 0")
    digits = []
    while n:
        n, d = divmod(n, k)
        digits.append(d)
    return BaseKWord(k, tuple(digits))


def word_value(k: int, digits) -> int:
    v = 0
    for d in reversed(digits):
        v = v * k + d
    return v


def tau_length(k: int, n: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    return 0 if n == 0 else ilog(k, n) + 1


def _first_index_at_least(k: int, alpha: AlphaSpec, j: int, lo: int, hi: int) -> int:
    """Smallest n in [lo, hi] with a(n) >= j, or hi + 1 if none (a is nondecreasing)."""
    if floor_alpha_plus_log(k, alpha, hi) < j:
        return hi + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if floor_alpha_plus_log(k, alpha, mid) >= j:
            hi = mid
        else:
            lo = mid + 1
    return lo


def thresholds(k: int, alpha: AlphaSpec, start: int, stop: int) -> tuple[int, list[int]]:
    """Jump points of a on [start, stop).

    Returns ``(a(start), jumps)`` where ``jumps[t]`` is the first n in the window
    with a(n) >= a(start) + t + 1.  Located by bisection on the exact floor, so
    the cost is logarithmic in the window length per jump.
    """
    if stop <= start:
        return floor_alpha_plus_log(k, alpha, start), []
    v0 = floor_alpha_plus_log(k, alpha, start)
    v1 = floor_alpha_plus_log(k, alpha, stop - 1)
    jumps = []
    lo = start
    for j in range(v0 + 1, v1 + 1):
        lo = _first_index_at_least(k, alpha, j, lo, stop - 1)
        jumps.append(lo)
    return v0, jumps


def sequence_array(k: int, alpha: AlphaSpec, start: int, count: int) -> np.ndarray:
    """a(start), ..., a(start + count - 1) as an int64 array."""
    if count < 0 or start < 0:
        raise ValueError("start and count must be >= 0")
    if count == 0:
        return np.zeros(0, dtype=np.int64)
    v0, jumps = thresholds(k, alpha, start, start + count)
    out = np.full(count, v0, dtype=np.int64)
    for t in jumps:
        out[t - start:] += 1
    return out


def sequence_terms(k: int, alpha: AlphaSpec, start: int, count: int) -> SequenceWindow:
    return SequenceWindow(k, alpha, start, sequence_array(k, alpha, start, count).tolist())


def grouped_by_exponent(k: int, alpha: AlphaSpec, m_max: int) -> list[tuple[int, list[int]]]:
    """Values of a(n) grouped by the length m of tau(n), for m = 0..m_max."""
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    groups = [(0, [floor_alpha_plus_log(k, alpha, 0)])]
    for m in range(1, m_max + 1):
        lo = k ** (m - 1)
        groups.append((m, sequence_array(k, alpha, lo, k ** m - lo).tolist()))
    return groups


def window_csv(window: SequenceWindow) -> str:
    """CSV with columns n, a(n), |tau(n)|, tau(n) (LSB-first digit string)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "a", "tau_len", "tau"])
    for n, v in zip(window.indices(), window.values):
        w.writerow([n, v, tau_length(window.k, n), str(tau(window.k, n))])
    return buf.getvalue()
