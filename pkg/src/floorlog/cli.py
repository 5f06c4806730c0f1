"""Command-line experiments: terms, coeffs, digits, kernel, guess, report.

Exit codes: 0 success, 2 usage or parse error, 3 budget exceeded,
4 internal-consistency failure (an exact identity did not hold).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from pathlib import Path

from . import __version__
from .alpha import (
    AlphaSpec,
    AmbiguousFloorError,
    UndecidableRepresentationError,
    classify_k_alpha,
    floor_alpha_plus_log,
    floor_k_power,
    parse_alpha,
)
from .kernel import rank_profile, truncation_scan
from .linalg import rank_q
from .recurrence import (
    detect_period,
    guess_linear_recurrence,
    guess_polynomial_recurrence,
    result_json,
    series_to_rational,
)
from .sequence import grouped_by_exponent, sequence_terms, tau, window_csv
from .series import (
    BudgetExceededError,
    ConsistencyError,
    b_bruteforce,
    b_closed_form,
    coeff_table,
    digit_oracle,
    floor_term,
    g_coefficients,
    rational_part,
)

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_CONSISTENCY = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _exact(alpha) -> AlphaSpec:
    if not isinstance(alpha, AlphaSpec):
        raise UsageError("this command needs an exact alpha (a/b, log(p/q), a/b+log(p/q))")
    return alpha


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- terms

def cmd_terms(args) -> int:
    win = sequence_terms(args.k, args.alpha, args.start, args.count)
    groups = grouped_by_exponent(args.k, args.alpha, args.groups) if args.groups else []
    if args.format == "csv":
        sys.stdout.write(window_csv(win))
    elif args.format == "json":
        print(_dump({
            "schema": SCHEMA,
            "k": args.k,
            "alpha": str(args.alpha),
            "start": args.start,
            "values": win.values,
            "tau": [str(tau(args.k, n)) for n in win.indices()],
            "groups": [{"m": m, "values": vals} for m, vals in groups],
        }))
    else:
        for n, v in zip(win.indices(), win.values):
            print(f"{n}\t{v}\t{tau(args.k, n).letters()}")
        for m, vals in groups:
            print(f"x^{m}: {''.join(map(str, vals)) if max(vals, default=0) < 10 else vals}")
    return EXIT_OK


# ---------------------------------------------------------------- coeffs

def _coeff_rows(k, alpha, m_max, budget=None) -> list[dict]:
    rows = [{"m": 0, "b_brute": floor_alpha_plus_log(k, alpha, 0), "b_closed": floor_alpha_plus_log(k, alpha, 0)}]
    rows[0]["match"] = True
    rp = rational_part(k, alpha).coefficients(m_max + 1)
    rows[0].update(rational_part_coeff=rp[0], floor_term=None)
    for m in range(1, m_max + 1):
        brute = b_bruteforce(k, alpha, m, budget)
        closed = b_closed_form(k, alpha, m)
        ft = floor_term(k, alpha, m)
        rows.append({
            "m": m,
            "b_brute": brute,
            "b_closed": closed,
            "match": brute == closed and rp[m] + ft == closed,
            "rational_part_coeff": rp[m],
            "floor_term": ft,
        })
    return rows


def cmd_coeffs(args) -> int:
    alpha = _exact(args.alpha)
    rows = _coeff_rows(args.k, alpha, args.mmax)
    cols = ["m", "b_brute", "b_closed", "match", "rational_part_coeff", "floor_term"]
    if args.format == "json":
        print(_dump({"schema": SCHEMA, "k": args.k, "alpha": str(alpha), "rows": rows,
                     "all_match": all(r["match"] for r in rows)}))
    elif args.format == "csv":
        sys.stdout.write(_csv([cols] + [[r[c] for c in cols] for r in rows]))
    else:
        for r in rows:
            print("\t".join(str(r[c]) for c in cols))
    return EXIT_OK if all(r["match"] for r in rows) else EXIT_CONSISTENCY


# ---------------------------------------------------------------- digits

def _digits_section(k, alpha, m_max, horizon) -> dict:
    g = g_coefficients(k, alpha, m_max).g
    oracle = digit_oracle(k, alpha, m_max)
    period = detect_period(g, min(horizon, m_max)) if min(horizon, m_max) >= 8 else None
    return {
        "g": g,
        "digit_oracle": oracle,
        "match": g == oracle,
        "period": period.to_json() if period else None,
        "class": str(classify_k_alpha(k, alpha)),
    }


def cmd_digits(args) -> int:
    alpha = _exact(args.alpha)
    sec = _digits_section(args.k, alpha, args.mmax, args.horizon or args.mmax)
    if args.format == "json":
        print(_dump({"schema": SCHEMA, "k": args.k, "alpha": str(alpha), **sec}))
    else:
        rows = [["m", "g", "digit", "match"]] + [
            [m, x, y, x == y] for m, (x, y) in enumerate(zip(sec["g"], sec["digit_oracle"]), 1)
        ]
        if args.format == "csv":
            sys.stdout.write(_csv(rows))
        else:
            for r in rows:
                print("\t".join(map(str, r)))
            p = sec["period"]
            found = p and p["period"] is not None
            print(f"# period: {(p['preperiod'], p['period']) if found else 'none within horizon (evidence only)'}")
            print(f"# k^alpha: {sec['class']}")
    return EXIT_OK if sec["match"] else EXIT_CONSISTENCY


# ---------------------------------------------------------------- kernel

def cmd_kernel(args) -> int:
    alpha = _exact(args.alpha)
    if args.emax < 2:
        raise UsageError("stabilization needs --emax >= 2")
    prof = rank_profile(args.k, alpha, args.emax, args.trunc)
    out = {"schema": SCHEMA, **prof.to_json(timing=not args.no_timing)}
    if args.format == "json":
        print(_dump(out))
    elif args.format == "csv":
        sys.stdout.write(_csv([["e", "rank"]] + [[e, r] for e, r in enumerate(prof.ranks)]))
    else:
        for e, r in enumerate(prof.ranks):
            print(f"e={e}\trank={r}")
        print(f"# stabilized: {prof.stabilized} ({out['verdict']})")
    return EXIT_OK


# ---------------------------------------------------------------- guess

def _read_sequence(path: str) -> list[int]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise UsageError(f"{path}: expected whitespace/newline separated integers") from None


def _generate(kind: str, k: int, alpha: AlphaSpec, count: int) -> list[int]:
    if kind == "a":
        return sequence_terms(k, alpha, 0, count).values
    if kind == "b":
        return coeff_table(k, alpha, count - 1, "closed").b
    if kind == "g":
        return g_coefficients(k, alpha, count).g
    raise UsageError(f"unknown generator {kind!r}")


def run_detectors(seq: list[int], max_order: int, max_deg: int | None, poly_order: int, poly_degree: int) -> dict:
    """Linear, rational and polynomial detectors, bounds clipped to what the data supports."""
    L = len(seq)
    out = {}
    lin_order = min(max_order, (L - 4) // 2)
    if lin_order >= 1:
        rec = guess_linear_recurrence(seq, lin_order)
        out["linear"] = result_json("linear_recurrence", {"max_order": lin_order, "terms": L}, rec)
    else:
        out["linear"] = {"kind": "linear_recurrence", "skipped": "too few terms", "found": False}
    deg = (L - 2) // 2 if max_deg is None else min(max_deg, (L - 2) // 2)
    if deg >= 0 and L >= 2:
        rf = series_to_rational(seq, deg)
        out["rational"] = result_json("rational_series", {"max_deg": deg, "terms": L}, rf)
    else:
        out["rational"] = {"kind": "rational_series", "skipped": "too few terms", "found": False}
    rho, d = poly_order, poly_degree
    while (rho + 1) * (d + 1) + rho + 8 > L and (rho or d):
        if d >= rho and d > 0:
            d -= 1
        else:
            rho -= 1
    if (rho + 1) * (d + 1) + rho + 8 <= L:
        pc = guess_polynomial_recurrence(seq, rho, d)
        out["polynomial"] = result_json(
            "polynomial_recurrence", {"max_order": rho, "max_degree": d, "terms": L}, pc
        )
    else:
        out["polynomial"] = {"kind": "polynomial_recurrence", "skipped": "too few terms", "found": False}
    return out


def cmd_guess(args) -> int:
    if args.file:
        seq = _read_sequence(args.file)
    elif args.generate:
        seq = _generate(args.generate, args.k, _exact(args.alpha), args.count)
    else:
        raise UsageError("give --file PATH or --generate {a,b,g}")
    if not seq:
        raise UsageError("empty sequence")
    res = run_detectors(seq, args.max_order, args.max_deg, args.poly_order, args.poly_degree)
    if args.format == "json":
        print(_dump({"schema": SCHEMA, "terms": len(seq), "detectors": res}))
    else:
        for name, r in res.items():
            if r.get("skipped"):
                print(f"{name}: skipped ({r['skipped']})")
            elif r["found"]:
                print(f"{name}: found {json.dumps(r['parameters'], sort_keys=True)}")
            else:
                print(f"{name}: none within bounds {json.dumps(r['bounds'], sort_keys=True)}")
    return EXIT_OK


# ---------------------------------------------------------------- report

def property_checks(k: int, alpha: AlphaSpec, seed: int, samples: int = 25) -> dict:
    """Seeded randomized spot checks of the exact-arithmetic invariants."""
    rng = random.Random(seed)
    ns = sorted(rng.randrange(0, 10 ** 5) for _ in range(samples))
    steps = all(
        0 <= floor_alpha_plus_log(k, alpha, n + 1) - floor_alpha_plus_log(k, alpha, n) <= 1 for n in ns
    )
    ms = [rng.randrange(1, 60) for _ in range(samples)]
    ceil_floor = all(
        floor_k_power(k, alpha, m, 1, "ceil") == -floor_k_power(k, alpha, m, -1, "floor") for m in ms
    )
    nesting = all(
        k * floor_k_power(k, alpha, m - 1) <= floor_k_power(k, alpha, m) < k * (floor_k_power(k, alpha, m - 1) + 1)
        for m in ms
    )
    rows = [[floor_alpha_plus_log(k, alpha, k * n + i) for n in range(32)] for i in range(k)]
    rows.append(sequence_terms(k, alpha, 0, 32).values)
    mixed = []
    for _ in range(len(rows)):
        coef = [rng.randint(-3, 3) for _ in rows]
        mixed.append([sum(c * r[j] for c, r in zip(coef, rows)) for j in range(32)])
    mix_ok = rank_q(rows) == rank_q(rows + mixed)
    return {
        "seed": seed,
        "unit_steps": steps,
        "ceil_is_neg_floor_neg": ceil_floor,
        "power_nesting": nesting,
        "row_mixing_rank_invariant": mix_ok,
        "all_pass": steps and ceil_floor and nesting and mix_ok,
    }


def build_report(k: int, alpha: AlphaSpec, m_max: int, brute_max: int, e_max: int, trunc: int,
                 seed: int, timing: bool = False) -> tuple[dict, int]:
    sections: dict = {}
    code = EXIT_OK

    def run(name, fn):
        nonlocal code
        t0 = time.perf_counter()
        try:
            body = fn()
            body["status"] = "ok"
        except BudgetExceededError as exc:
            body = {"status": f"budget: {exc}"}
            code = max(code, EXIT_BUDGET)
        except ConsistencyError as exc:
            body = {"status": f"consistency: {exc}"}
            code = EXIT_CONSISTENCY
        if timing:
            body["wall_time_ms"] = round((time.perf_counter() - t0) * 1e3, 3)
        sections[name] = body

    def terms():
        return {
            "values": sequence_terms(k, alpha, 0, 16).values,
            "groups": [{"m": m, "values": v} for m, v in grouped_by_exponent(k, alpha, min(4, m_max))],
        }

    def coeffs():
        rows = _coeff_rows(k, alpha, brute_max)
        closed = coeff_table(k, alpha, m_max, "closed").b
        return {"rows": rows, "b_closed": closed, "match": all(r["match"] for r in rows)}

    def digits():
        return _digits_section(k, alpha, 64, 64)

    def kernel():
        prof = rank_profile(k, alpha, e_max, trunc)
        scan = truncation_scan(k, alpha, e_max, [max(1, trunc // 16), max(1, trunc // 4), trunc])
        return {
            **prof.to_json(timing=timing),
            "truncation_scan": {"trunc_lens": scan["trunc_lens"], "final_ranks": scan["final_ranks"],
                                "plateau_stable": scan["plateau_stable"]},
        }

    def guess():
        b = coeff_table(k, alpha, m_max, "closed").b
        res = run_detectors(b, 20, None, 3, 3)
        g = g_coefficients(k, alpha, 64).g
        res["g_polynomial"] = result_json(
            "polynomial_recurrence", {"max_order": 3, "max_degree": 3, "terms": 64},
            guess_polynomial_recurrence(g, 3, 3),
        )
        res["note"] = "negative results mean no recurrence within the stated bounds, not a proof"
        return res

    run("terms", terms)
    run("coeffs", coeffs)
    run("digits", digits)
    run("kernel", kernel)
    run("guess", guess)
    run("properties", lambda: property_checks(k, alpha, seed))
    if code == EXIT_OK and not (sections["coeffs"].get("match") and sections["digits"].get("match")
                                and sections["properties"].get("all_pass")):
        code = EXIT_CONSISTENCY
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "config": {"k": k, "alpha": str(alpha), "mmax": m_max, "brute_mmax": brute_max,
                   "emax": e_max, "trunc": trunc, "seed": seed},
        "class": str(classify_k_alpha(k, alpha)),
        "sections": sections,
    }
    return report, code


def cmd_report(args) -> int:
    alpha = _exact(args.alpha)
    brute = args.brute_mmax if args.brute_mmax is not None else min(args.mmax, 12)
    report, code = build_report(args.k, alpha, args.mmax, brute, args.emax, args.trunc, args.seed, args.timing)
    text = _dump(report) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


# ---------------------------------------------------------------- parser

def _alpha_arg(text: str):
    try:
        return parse_alpha(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=2, help="base k >= 2")
    common.add_argument("--alpha", type=_alpha_arg, default=AlphaSpec(), help="e.g. 1/2, log(3/1), 1/2+log(5/3)")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="floorlog", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"floorlog {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("terms", parents=[common], help="a(n), tau(n) and exponent groups")
    p.add_argument("--start", type=_positive, default=0)
    p.add_argument("--count", type=_positive, default=16)
    p.add_argument("--groups", type=_positive, default=0, help="show exponent groups up to this m")
    p.set_defaults(func=cmd_terms)

    p = sub.add_parser("coeffs", parents=[common], help="b(m) brute force vs closed form")
    p.add_argument("--mmax", type=_positive, default=9)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("digits", parents=[common], help="g(m) vs independent digit oracle")
    p.add_argument("--mmax", type=_positive, default=64)
    p.add_argument("--horizon", type=_positive, default=None)
    p.set_defaults(func=cmd_digits)

    p = sub.add_parser("kernel", parents=[common], help="kernel rank profile")
    p.add_argument("--emax", type=int, default=6)
    p.add_argument("--trunc", type=int, default=4096)
    p.add_argument("--no-timing", action="store_true", help="omit wall_time_ms")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("guess", parents=[common], help="run recurrence detectors on a sequence")
    p.add_argument("--file", help="whitespace/newline separated integers")
    p.add_argument("--generate", choices=["a", "b", "g"], help="generate a(n), b(m) or g(m) instead")
    p.add_argument("--count", type=_positive, default=61)
    p.add_argument("--max-order", type=int, default=20)
    p.add_argument("--max-deg", type=int, default=None)
    p.add_argument("--poly-order", type=int, default=3)
    p.add_argument("--poly-degree", type=int, default=3)
    p.set_defaults(func=cmd_guess)

    p = sub.add_parser("report", parents=[common], help="full deterministic JSON bundle")
    p.add_argument("--mmax", type=_positive, default=30)
    p.add_argument("--brute-mmax", type=_positive, default=None)
    p.add_argument("--emax", type=int, default=6)
    p.add_argument("--trunc", type=int, default=1024)
    p.add_argument("--timing", action="store_true", help="include wall times (breaks byte-identity)")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.k < 2:
        print("error: --k must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, UndecidableRepresentationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceededError, AmbiguousFloorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
