"""Acceptance criteria, each run at its stated tolerance and time limit.

Every criterion is a plain function returning (passed, detail). The pytest
wrappers assert on it, and a terminal-summary hook in conftest prints one
PASS/FAIL line per criterion. Running this file directly prints the same
lines without pytest.
"""
import json
import math
import sys
import time
from fractions import Fraction

import pytest

from floorlog.alpha import AlphaSpec, classify_k_alpha, parse_alpha
from floorlog.cli import main as cli_main
from floorlog.kernel import rank_profile, truncation_scan
from floorlog.recurrence import (
    detect_period,
    guess_linear_recurrence,
    guess_polynomial_recurrence,
    series_to_rational,
)
from floorlog.series import (
    b_bruteforce,
    b_closed_form,
    b_special_case_k2_half,
    bivariate_projection_expansion,
    coeff_table,
    commutative_projection,
    default_budget,
    digit_oracle,
    exact_series,
    floor_term,
    g_coefficients,
    nc_series_terms,
    rational_part,
)

ALPHA_TEXTS = ["0", "1", "-1/2", "1/2", "1/3", "log(3)", "1/2+log(5/3)"]
KS = [2, 3, 5, 10]
HALF = AlphaSpec.make(Fraction(1, 2))

RESULTS: dict[int, tuple[bool, str]] = {}


def _pairs():
    for k in KS:
        for text in ALPHA_TEXTS:
            yield k, text, parse_alpha(text)


def _timed(limit_s, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if limit_s is not None and dt >= limit_s:
        return False, f"{detail}; took {dt:.2f}s, limit {limit_s}s"
    return ok, f"{detail} ({dt:.2f}s)"


def criterion_1():
    expected = [1, 4, 11, 29, 74, 179, 422, 971, 2198]
    brute = [b_bruteforce(2, HALF, m) for m in range(1, 10)]
    closed = [b_closed_form(2, HALF, m) for m in range(1, 10)]
    return brute == expected and closed == expected, f"brute={brute} closed={closed}"


def criterion_2():
    checked, bad = 0, []
    budget = default_budget()
    for k, text, alpha in _pairs():
        for m in range(1, 21):
            if k ** m > budget:
                break
            checked += 1
            if b_closed_form(k, alpha, m) != b_bruteforce(k, alpha, m):
                bad.append((k, text, m))
    return not bad, f"{checked} (k, alpha, m) cells, mismatches={bad[:5]}"


def criterion_3():
    bad = []
    for m in range(1, 21):
        lhs = (m + 1) * 2 ** (m - 1) - math.isqrt(2 ** (2 * m - 1))
        c, two_block = b_special_case_k2_half(m)
        if not (lhs == two_block == (m - 1) * (c - 2 ** (m - 1)) + m * (2 ** m - c) == b_closed_form(2, HALF, m)):
            bad.append(m)
        elif m <= 20 and 2 ** m <= default_budget() and lhs != b_bruteforce(2, HALF, m):
            bad.append(m)
    return not bad, f"m=1..20, mismatches={bad}"


def criterion_4():
    bad, budget = [], default_budget()
    for k, text, alpha in _pairs():
        rp = rational_part(k, alpha).coefficients(31)
        for m in range(1, 31):
            # direct summation where the budget allows, the closed form beyond
            b = b_bruteforce(k, alpha, m) if k ** m <= budget else b_closed_form(k, alpha, m)
            if rp[m] + floor_term(k, alpha, m) != b:
                bad.append((k, text, m))
    return not bad, f"28 (k, alpha) pairs x m=1..30, mismatches={bad[:5]}"


def criterion_5():
    bad = []
    for k, text, alpha in _pairs():
        g = g_coefficients(k, alpha, 64).g
        if g != digit_oracle(k, alpha, 64) or not all(0 <= d < k for d in g):
            bad.append((k, text))
    return not bad, f"28 pairs through m=64, failures={bad}"


def criterion_6():
    bad, n_rat, n_irr = [], 0, 0
    for k, text, alpha in _pairs():
        g = g_coefficients(k, alpha, 64).g
        if classify_k_alpha(k, alpha).is_rational:
            n_rat += 1
            d = exact_series(k, alpha).degree
            b = coeff_table(k, alpha, 2 * d + 2, "closed").b
            if not detect_period(g, 64).found or series_to_rational(b, d) is None:
                bad.append((k, text, "rational"))
        else:
            n_irr += 1
            b = coeff_table(k, alpha, 59, "closed").b
            if (guess_linear_recurrence(b, 20) is not None
                    or detect_period(g, 64, max_span=20).found
                    or guess_polynomial_recurrence(g, 3, 3) is not None):
                bad.append((k, text, "irrational"))
    return not bad, f"{n_rat} rational and {n_irr} irrational pairs, failures={bad}"


def criterion_7():
    base = rank_profile(2, AlphaSpec(), 6, 4096)
    scan = truncation_scan(2, AlphaSpec(), 6, [1024, 4096, 16384])
    half = rank_profile(2, HALF, 8, 16384, require_stability=False)
    increasing = all(half.ranks[e] < half.ranks[e + 1] for e in range(2, 8))
    ok0 = base.stabilized and scan["plateau_stable"]
    return ok0 and increasing, (
        f"alpha=0 ranks={base.ranks} plateau finals={scan['final_ranks']} ok={ok0}; "
        f"alpha=1/2 ranks={half.ranks} strictly increasing on 2..8: {increasing}"
    )


def criterion_8():
    proj = commutative_projection(nc_series_terms(2, AlphaSpec(), 12))
    expansion = bivariate_projection_expansion(12)
    keys = [key for key in set(proj) | set(expansion) if sum(key) <= 12]
    bad = [key for key in keys if proj.get(key, 0) != expansion.get(key, 0)]
    return not bad, f"{len(keys)} monomials of total degree <= 12, mismatches={bad[:5]}"


def criterion_9():
    import io
    from contextlib import redirect_stdout

    outs, codes = [], []
    for _ in range(2):
        buf = io.StringIO()
        with redirect_stdout(buf):
            codes.append(cli_main(["report", "--k", "2", "--alpha", "1/2", "--seed", "11"]))
        outs.append(buf.getvalue().encode("utf-8"))
    data = json.loads(outs[0])
    props = data["sections"]["properties"]["all_pass"]
    return outs[0] == outs[1] and codes == [0, 0] and props, (
        f"exit codes={codes}, byte-identical={outs[0] == outs[1]}, properties pass={props}"
    )


CRITERIA = {
    1: (criterion_1, 1),
    2: (criterion_2, 120),
    3: (criterion_3, None),
    4: (criterion_4, None),
    5: (criterion_5, 30),
    6: (criterion_6, 120),
    7: (criterion_7, 180),
    8: (criterion_8, None),
    9: (criterion_9, None),
}


def run_criterion(n):
    fn, limit = CRITERIA[n]
    ok, detail = _timed(limit, fn)
    RESULTS[n] = (ok, detail)
    return ok, detail


@pytest.mark.parametrize("n", sorted(CRITERIA), ids=lambda n: f"criterion_{n}")
def test_acceptance(n):
    ok, detail = run_criterion(n)
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        ok, detail = run_criterion(n)
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}", flush=True)
    sys.exit(1 if failed else 0)
