"""Rank growth of the k-kernel as empirical evidence about k-regularity.

The k-kernel of a is the set of subsequences n -> a(k**e * n + i) with
0 <= i < k**e.  A k-regular sequence has a finitely generated kernel module,
so the rank over Q of the truncated kernel rows stays bounded.  Unbounded
growth is evidence, never proof, of non-regularity at any finite truncation.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .alpha import AlphaSpec
from .linalg import IncrementalRank
from .sequence import sequence_array

__all__ = ["KernelIndex", "RankProfile", "kernel_row", "rank_profile", "rank_profile_generic", "truncation_scan"]


@dataclass(frozen=True)
class KernelIndex:
    e: int
    i: int

    def __post_init__(self):
        if self.e < 0:
            raise ValueError("e must be >= 0")


@dataclass
class RankProfile:
    k: int
    trunc_len: int
    ranks: list[int]
    stabilized: bool
    alpha: str | None = None
    wall_time_ms: float = field(default=0.0, compare=False)

    @property
    def plateau(self) -> int | None:
        return self.ranks[-1] if self.stabilized else None

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "k": self.k,
            "alpha": self.alpha,
            "trunc_len": self.trunc_len,
            "ranks": list(self.ranks),
            "stabilized": self.stabilized,
            "verdict": "evidence of a plateau" if self.stabilized else "no plateau within bounds (evidence only)",
        }
        if timing:
            out["wall_time_ms"] = round(self.wall_time_ms, 3)
        return out


def _check_index(k: int, idx: KernelIndex) -> None:
    if not 0 <= idx.i < k ** idx.e:
        raise ValueError(f"kernel index needs 0 <= i < k^e, got {idx}")


def kernel_row(k: int, alpha: AlphaSpec, idx: KernelIndex, trunc_len: int) -> list[int]:
    """[a(k^e n + i) for n in range(trunc_len)]."""
    _check_index(k, idx)
    if trunc_len <= 0:
        return []
    step = k ** idx.e
    arr = sequence_array(k, alpha, 0, step * (trunc_len - 1) + idx.i + 1)
    return arr[idx.i::step].tolist()


def _as_int_array(values, n: int) -> np.ndarray:
    arr = np.asarray(values)
    if arr.shape != (n,):
        raise ValueError(f"sequence provider returned {arr.shape}, expected ({n},)")
    if arr.dtype == object:
        if all(abs(int(x)) < (1 << 31) for x in arr):
            return arr.astype(np.int64)
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        raise TypeError("kernel analysis needs exact integer terms")
    return arr.astype(np.int64)


def rank_profile_generic(
    seq_provider: Callable[[int], Sequence[int]],
    k: int,
    e_max: int,
    trunc_len: int,
    require_stability: bool = True,
    alpha_label: str | None = None,
) -> RankProfile:
    """Rank over Q of all kernel rows with exponent <= e, for e = 0..e_max.

    ``seq_provider(N)`` must return the first N terms a(0..N-1).  Duplicate
    columns and rows are dropped before elimination; neither changes any
    prefix rank.  ``stabilized`` means the last three ranks are equal.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if trunc_len < 1 or e_max < 0:
        raise ValueError("need trunc_len >= 1 and e_max >= 0")
    if require_stability and e_max < 2:
        raise ValueError("stabilization needs e_max >= 2 (three kernel levels)")
    t0 = time.perf_counter()
    n_terms = k ** e_max * trunc_len
    seq = _as_int_array(seq_provider(n_terms), n_terms)

    blocks, levels = [], []
    for e in range(e_max + 1):
        step = k ** e
        blocks.append(seq[: step * trunc_len].reshape(trunc_len, step).T)
        levels.append(np.full(step, e))
    M = np.vstack(blocks)
    level = np.concatenate(levels)
    if M.dtype != object:
        M = np.unique(M, axis=1)
        _, first = np.unique(M, axis=0, return_index=True)
        keep = np.sort(first)
        M, level = M[keep], level[keep]

    eng = IncrementalRank(M.shape[1])
    ranks = [eng.add_rows(M[level == e]) for e in range(e_max + 1)]
    stabilized = e_max >= 2 and ranks[-1] == ranks[-2] == ranks[-3]
    return RankProfile(k, trunc_len, ranks, stabilized, alpha_label, (time.perf_counter() - t0) * 1e3)


def rank_profile(
    k: int, alpha: AlphaSpec, e_max: int, trunc_len: int, require_stability: bool = True
) -> RankProfile:
    return rank_profile_generic(
        lambda n: sequence_array(k, alpha, 0, n),
        k,
        e_max,
        trunc_len,
        require_stability=require_stability,
        alpha_label=str(alpha),
    )


def truncation_scan(k: int, alpha: AlphaSpec, e_max: int, trunc_lens: Sequence[int]) -> dict:
    """Rank profiles at several truncation lengths.

    A plateau that is the same at every length is evidence of a finite
    kernel rank; a final rank that keeps moving with the truncation says the
    plateau is an artifact of the window.
    """
    profiles = [rank_profile(k, alpha, e_max, L, require_stability=False) for L in trunc_lens]
    finals = [p.ranks[-1] for p in profiles]
    return {
        "trunc_lens": list(trunc_lens),
        "final_ranks": finals,
        "profiles": profiles,
        "plateau_stable": all(p.stabilized for p in profiles) and len(set(finals)) == 1,
    }
