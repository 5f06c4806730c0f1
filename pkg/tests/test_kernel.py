import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
import sympy

from floorlog.alpha import AlphaSpec, floor_alpha_plus_log
from floorlog.kernel import KernelIndex, kernel_row, rank_profile, rank_profile_generic, truncation_scan
from floorlog.linalg import IncrementalRank, nullspace_q, rank_q, solve_q
from floorlog.sequence import sequence_terms

GOLDEN = json.loads((Path(__file__).parent / "golden" / "kernel_k2_alpha0.json").read_text())
HALF = AlphaSpec.make(Fraction(1, 2))


def test_kernel_row_examples():
    assert kernel_row(2, AlphaSpec(), KernelIndex(0, 0), 4) == [0, 1, 1, 2]
    # a(0), a(2), a(4), a(6) read off the grouped values 0 | 1 | 2 2 | 2 3 3 3
    assert kernel_row(2, HALF, KernelIndex(1, 0), 4) == [0, 2, 2, 3]
    assert kernel_row(3, HALF, KernelIndex(0, 0), 50) == sequence_terms(3, HALF, 0, 50).values
    assert kernel_row(2, HALF, KernelIndex(3, 5), 6) == [floor_alpha_plus_log(2, HALF, 8 * n + 5) for n in range(6)]


def test_kernel_index_bounds():
    with pytest.raises(ValueError):
        kernel_row(2, HALF, KernelIndex(1, 2), 4)


def test_generic_constant_zero_identity():
    assert rank_profile_generic(lambda n: [7] * n, 2, 4, 64).ranks == [1] * 5
    assert rank_profile_generic(lambda n: [0] * n, 3, 3, 30).ranks == [0] * 4
    ident = rank_profile_generic(lambda n: list(range(n)), 2, 5, 64)
    assert ident.ranks == [1, 2, 2, 2, 2, 2] and ident.stabilized
    # span{n, 2n + i} = span{n, 1}; confirm by independent elimination
    rows = [[2 * n + i for n in range(64)] for i in range(2)] + [list(range(64))]
    assert sympy.Matrix(rows).rank() == 2


def test_generic_matches_specific():
    prof = rank_profile(2, HALF, 5, 256)
    gen = rank_profile_generic(lambda n: sequence_terms(2, HALF, 0, n).values, 2, 5, 256)
    assert prof.ranks == gen.ranks


def test_generic_big_integer_provider():
    # terms up to 2^159 force the object path; a(2^e n + i) = 2^i (2^e)^n, so each
    # level contributes the single new direction (2^e)^n
    prof = rank_profile_generic(lambda n: [2 ** j for j in range(n)], 2, 2, 40, require_stability=False)
    assert prof.ranks == [1, 2, 3]


def test_stability_needs_three_levels():
    with pytest.raises(ValueError):
        rank_profile(2, HALF, 1, 64)
    assert not rank_profile(2, HALF, 1, 64, require_stability=False).stabilized


def test_golden_plateau_alpha0():
    prof = rank_profile(GOLDEN["k"], AlphaSpec(), GOLDEN["e_max"], GOLDEN["trunc_len"])
    assert prof.ranks == GOLDEN["ranks"]
    assert prof.stabilized and prof.plateau == GOLDEN["plateau"]


def _reference_rank(k, alpha, e, L):
    seq = np.array(sequence_terms(k, alpha, 0, k ** e * L).values)
    M = np.vstack([seq[: k ** j * L].reshape(L, k ** j).T for j in range(e + 1)])
    M = np.unique(np.unique(M, axis=1), axis=0)
    return sympy.Matrix(M.tolist()).rank()


@pytest.mark.parametrize("alpha", [AlphaSpec(), HALF, AlphaSpec.make(0, 3), AlphaSpec.make(Fraction(1, 3))], ids=str)
def test_ranks_match_sympy(alpha):
    prof = rank_profile(2, alpha, 5, 512)
    assert prof.ranks == [_reference_rank(2, alpha, e, 512) for e in range(6)]


@pytest.mark.parametrize("L", [1024, 4096, 16384])
def test_truncation_robust_alpha0(L):
    assert rank_profile(2, AlphaSpec(), 6, L).ranks == GOLDEN["ranks"]


def test_ranks_monotone_in_e_and_truncation():
    a = rank_profile(2, HALF, 6, 512, require_stability=False).ranks
    b = rank_profile(2, HALF, 6, 2048, require_stability=False).ranks
    assert a == sorted(a) and b == sorted(b)
    assert all(x <= y for x, y in zip(a, b))
    assert all(r <= min(512, 2 ** (e + 1) - 1) for e, r in enumerate(a))


def test_row_mixing_invariance():
    rng = np.random.default_rng(7)
    L = 128
    rows = np.array([kernel_row(2, HALF, KernelIndex(e, i), L) for e in range(4) for i in range(2 ** e)])
    base = rank_q(rows)
    mixed = rng.integers(-4, 5, size=(rows.shape[0], rows.shape[0])) @ rows
    assert rank_q(np.vstack([rows, mixed])) == base
    assert rank_q(mixed) <= base


def test_truncation_scan_distinguishes():
    rational = truncation_scan(2, AlphaSpec.make(0, 3), 7, [256, 1024, 4096])
    irrational = truncation_scan(2, HALF, 7, [256, 1024, 4096])
    assert rational["plateau_stable"]
    assert not irrational["plateau_stable"]
    assert irrational["final_ranks"] == sorted(irrational["final_ranks"])


def test_profile_json():
    out = rank_profile(2, AlphaSpec(), 3, 64).to_json()
    assert set(out) >= {"k", "alpha", "trunc_len", "ranks", "stabilized", "wall_time_ms"}
    assert "evidence" in out["verdict"]


# ---- exact linear algebra

def test_incremental_rank_large_entries():
    rng = np.random.default_rng(3)
    A = rng.integers(-(10 ** 9), 10 ** 9, size=(8, 12)).astype(object) * (10 ** 12)
    B = A[:3] * 5 - A[4:7] * 11
    eng = IncrementalRank(12)
    assert eng.add_rows(A) == 8
    assert eng.add_rows(B) == 8


def test_nullspace_and_solve():
    M = [[1, 2, 3], [2, 4, 6]]
    ns = nullspace_q(M)
    assert len(ns) == 2
    for v in ns:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    assert solve_q([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve_q([[1, 1], [1, 1]], [1, 2]) is None
