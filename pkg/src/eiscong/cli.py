"""Command-line driver: problem files, presets and JSON reports.

Exit codes: 0 every check passed, 1 a mathematical check failed,
2 bad input, 3 precision or Bernoulli budget exhausted.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from .bernoulli import DEFAULT_BUDGET, BernoulliCache
from .bound import compute_P
from .conditions import CongruenceProblem, check_all
from .errors import BudgetError, EisCongError, ParseError, PrecisionError
from .padic_family import check_valuation_bounds, eval_taylor, taylor_coeffs
from .parser import parse_expression, parse_polynomial
from .verifier import (
    DEFAULT_GUARD,
    PRESETS,
    ESeriesPlan,
    VerifyReport,
    build_preset,
    verify_range,
    verify_star_parts,
)
from .arith import primes_between

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3

_OPTION_KEYS = {"n_max": "nmax", "p_max": "pmax", "guard": "guard", "budget": "budget"}


# ---------------------------------------------------------------- problem files


def _split_list(value: str, key: str, lineno: int) -> list[str]:
    value = value.strip()
    if not (value.startswith("[") and value.endswith("]")):
        raise ParseError(f"line {lineno}: {key} must be a bracketed list", 0)
    items = [x.strip() for x in value[1:-1].split(",")]
    if items == [""]:
        return []
    if any(not x for x in items):
        raise ParseError(f"line {lineno}: empty entry in {key}", 0)
    return items


def read_problem_file(text: str) -> tuple[CongruenceProblem, dict]:
    """Parse the key/value problem format; return the problem and options.

    ::

        N = 2
        f = [t + 3, t^3 + 3]
        g = [1, -1]
        g0 = 0
        n_max = 30      # optional: n_max, p_max, guard, budget
    """
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value'", 0)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in ("N", "f", "g", "g0") and key not in _OPTION_KEYS:
            raise ParseError(f"line {lineno}: unknown key {key!r}", 0)
        if key in fields:
            raise ParseError(f"line {lineno}: duplicate key {key!r}", 0)
        fields[key] = value
        fields[f"_{key}_line"] = str(lineno)
    for key in ("N", "f", "g"):
        if key not in fields:
            raise ParseError(f"missing required key {key!r}", 0)
    try:
        N = int(fields["N"])
    except ValueError:
        raise ParseError("N must be an integer", 0) from None
    f = [parse_polynomial(s) for s in _split_list(fields["f"], "f", int(fields["_f_line"]))]
    g = [parse_expression(s) for s in _split_list(fields["g"], "g", int(fields["_g_line"]))]
    g0 = parse_expression(fields.get("g0", "0"))
    options = {}
    for key in _OPTION_KEYS:
        if key in fields:
            try:
                options[key] = int(fields[key])
            except ValueError:
                raise ParseError(f"{key} must be an integer", 0) from None
    return CongruenceProblem(N, tuple(f), tuple(g), g0), options


def write_problem_file(problem: CongruenceProblem, **options) -> str:
    lines = [
        f"N = {problem.N}",
        "f = [" + ", ".join(str(fi) for fi in problem.f) + "]",
        "g = [" + ", ".join(str(gi) for gi in problem.g) + "]",
        f"g0 = {problem.g0}",
    ]
    lines += [f"{k} = {v}" for k, v in options.items()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- JSON


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    return str(obj)


def dump_report(report: dict) -> bytes:
    return (json.dumps(to_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def problem_echo(problem: CongruenceProblem) -> dict:
    return {
        "N": problem.N,
        "f": [str(fi) for fi in problem.f],
        "g": [str(gi) for gi in problem.g],
        "g0": str(problem.g0),
    }


def conditions_section(rep) -> dict:
    return {
        "M": rep.M,
        "S1": list(rep.S1),
        "entries": [
            {
                "condition": e.condition,
                "l": e.l,
                "m": e.m,
                "observed": e.observed,
                "required": e.required,
                "pass": e.passed,
                "vacuous": e.vacuous,
            }
            for e in rep.entries
        ],
        "ignored": list(rep.ignored),
        "notes": list(rep.notes),
        "overall": rep.overall,
    }


def verify_section(results, primes) -> tuple[list, dict]:
    out, timing = [], {}
    for p, r in zip(primes, results):
        if isinstance(r, Exception):
            out.append({"p": p, "error": str(r), "error_type": type(r).__name__})
            continue
        out.append(
            {
                "p": r.p,
                "N": r.N,
                "n_max": r.n_max,
                "margins": list(r.margins),
                "pass": r.passed,
                "precision": r.precision,
                "route": r.route,
                "strategies": {str(k): v for k, v in r.strategies.items()},
                "certified": r.certified,
            }
        )
        timing[str(p)] = round(r.seconds, 6)
    return out, timing


# ---------------------------------------------------------------- commands


def _load_problem(args, cache):
    options = {}
    if args.problem:
        path = Path(args.problem)
        problem, options = read_problem_file(path.read_text(encoding="utf-8"))
    elif args.preset in ("von-staudt", "kummer"):
        problem = _preset_problem(args)
    else:
        raise ParseError("give --problem FILE or --preset von-staudt|kummer", 0)
    if args.N is not None:
        problem = CongruenceProblem(args.N, problem.f, problem.g, problem.g0)
    return problem, options


def _preset_problem(args):
    if args.f is None:
        raise ParseError(f"preset {args.preset} needs --f", 0)
    params = {"f": parse_polynomial(args.f)}
    if args.preset == "kummer":
        if args.g is None:
            raise ParseError("preset kummer needs --g", 0)
        params["g"] = parse_polynomial(args.g)
    return build_preset(args.preset, **params)


def _opt(args, options, name, default):
    value = getattr(args, _OPTION_KEYS.get(name, name), None)
    if value is not None:
        return value
    return options.get(name, default)


def _print_conditions(rep, out):
    M = "inf" if rep.M == math.inf else rep.M
    print(f"M = {M}   S1 = {{{', '.join(map(str, rep.S1))}}}", file=out)
    for e in rep.entries:
        if e.vacuous:
            where = f" l={e.l}" if e.l is not None else ""
            print(f"  {e.condition}{where}: vacuous", file=out)
            continue
        where = "".join(f" {k}={v}" for k, v in (("l", e.l), ("m", e.m)) if v is not None)
        obs = "inf" if e.observed == math.inf else e.observed
        status = "pass" if e.passed else "FAIL"
        print(f"  {e.condition}{where}: v_t = {obs} >= {e.required}  {status}", file=out)
    for note in rep.notes:
        print(f"  note: {note}", file=out)
    print(f"conditions: {'all hold' if rep.overall else 'NOT all hold'}", file=out)


def _print_bound(b, out):
    parts = ", ".join(f"{k}={v}" for k, v in b.as_dict().items() if k != "P")
    print(f"P = {b.P}   ({parts})", file=out)


def _verify_common(args, star: bool, out):
    cache = BernoulliCache(args.budget or DEFAULT_BUDGET)
    problem, options = _load_problem(args, cache)
    if "budget" in options and args.budget is None:
        cache = BernoulliCache(options["budget"])
    rep = check_all(problem, cache)
    bound = compute_P(problem, cache)
    n_max = _opt(args, options, "n_max", 50)
    guard = _opt(args, options, "guard", DEFAULT_GUARD)
    p_max = _opt(args, options, "p_max", bound.P + 100)
    _print_conditions(rep, out)
    _print_bound(bound, out)
    if not rep.overall:
        print("*** conditions not certified: results are empirical only ***", file=out)
    primes = list(primes_between(max(bound.P, 2), p_max))
    report = {
        "schema": SCHEMA_VERSION,
        "command": args.command,
        "problem": problem_echo(problem),
        "conditions": conditions_section(rep),
        "bound": bound.as_dict(),
        "options": {"n_max": n_max, "p_max": p_max, "guard": guard, "budget": cache.budget},
    }
    if star:
        results = []
        for p in primes:
            try:
                results.append(verify_star_parts(problem, p, n_max, guard, cache))
            except PrecisionError as exc:
                results.append(exc)
        section = []
        for p, r in zip(primes, results):
            if isinstance(r, Exception):
                section.append({"p": p, "error": str(r), "error_type": type(r).__name__})
                print(f"p = {p}: ERROR {r}", file=out)
                continue
            section.append(dataclasses.asdict(r) | {"pass": r.passed})
            print(
                f"p = {p}: a0 part margin {r.a0_margin} {'pass' if r.a0_passed else 'FAIL'}; "
                f"a_n part min margin {min(r.an_margins, default=math.inf)} "
                f"{'pass' if r.an_passed else 'FAIL'}",
                file=out,
            )
        report["star"] = section
        passed = [r.passed for r in results if not isinstance(r, Exception)]
    else:
        results = verify_range(problem, p_max, n_max, guard, cache, workers=args.workers)
        section, timing = verify_section(results, primes)
        report["verify"] = section
        report["timing"] = timing
        for p, r in zip(primes, results):
            if isinstance(r, Exception):
                print(f"p = {p}: ERROR {r}", file=out)
            else:
                bad = r.failures()
                detail = "" if not bad else f" (first failing n = {bad[0]}, margin {r.margins[bad[0]]})"
                strat = ", ".join(f"{k}:{v}" for k, v in r.strategies.items())
                print(
                    f"p = {p}: {'pass' if r.passed else 'FAIL'}{detail}  "
                    f"[{r.route}, {r.precision} digits; {strat}]",
                    file=out,
                )
        passed = [r.passed for r in results if not isinstance(r, Exception)]
    errors = sum(isinstance(r, Exception) for r in results)
    print(f"{sum(passed)}/{len(primes)} primes pass", file=out)
    if not all(passed):
        code = EXIT_FAIL
    elif errors:
        code = EXIT_PRECISION
    else:
        code = EXIT_OK
    report["exit_code"] = code
    return code, report


def cmd_check_conditions(args, out):
    cache = BernoulliCache(args.budget or DEFAULT_BUDGET)
    problem, _ = _load_problem(args, cache)
    rep = check_all(problem, cache)
    _print_conditions(rep, out)
    code = EXIT_OK if rep.overall else EXIT_FAIL
    return code, {
        "schema": SCHEMA_VERSION,
        "command": args.command,
        "problem": problem_echo(problem),
        "conditions": conditions_section(rep),
        "exit_code": code,
    }


def cmd_compute_bound(args, out):
    cache = BernoulliCache(args.budget or DEFAULT_BUDGET)
    problem, _ = _load_problem(args, cache)
    b = compute_P(problem, cache)
    _print_bound(b, out)
    return EXIT_OK, {
        "schema": SCHEMA_VERSION,
        "command": args.command,
        "problem": problem_echo(problem),
        "bound": b.as_dict(),
        "exit_code": EXIT_OK,
    }


def cmd_verify(args, out):
    return _verify_common(args, False, out)


def cmd_star_verify(args, out):
    return _verify_common(args, True, out)


def cmd_taylor(args, out):
    for name in ("n", "p", "l", "W"):
        if getattr(args, name) is None:
            raise ParseError(f"taylor needs --{name}", 0)
    tc = taylor_coeffs(args.n, args.p, args.l, args.W, args.mmax)
    checks = check_valuation_bounds(tc)
    print(f"a_m^({tc.n})(p={tc.p}, l={tc.l}) mod {tc.p}^{tc.W}, m = 0..{tc.m_max}", file=out)
    for c, b in zip(tc.coeffs, checks):
        val = "inf" if c.is_zero else c.val
        ok = b.general_ok and b.strong_ok is not False
        print(f"  m={b.m}: val {val}, unit {c.unit}  bounds {'ok' if ok else 'VIOLATED'}", file=out)
    ok = all(b.general_ok and b.strong_ok is not False for b in checks)
    report = {
        "schema": SCHEMA_VERSION,
        "command": args.command,
        "taylor": {
            "n": tc.n,
            "p": tc.p,
            "l": tc.l,
            "W": tc.W,
            "m_max": tc.m_max,
            "coeffs": [{"m": m, "val": c.val, "unit": c.unit} for m, c in enumerate(tc.coeffs)],
            "bounds": [dataclasses.asdict(b) for b in checks],
        },
    }
    if args.k is not None:
        value = eval_taylor(tc, args.k)
        print(f"series at k = {args.k}: {value.residue()} mod {tc.p}^{tc.W}", file=out)
        report["taylor"]["eval"] = {"k": args.k, "value": value.residue()}
    code = EXIT_OK if ok else EXIT_FAIL
    report["exit_code"] = code
    return code, report


def cmd_preset(args, out):
    if args.preset is None:
        raise ParseError(f"preset needs --preset ({', '.join(PRESETS)})", 0)
    if args.preset in ("von-staudt", "kummer"):
        return _verify_common(args, False, out)
    cache = BernoulliCache(args.budget or DEFAULT_BUDGET)
    params = {"p": args.p, "k": args.k, "r": args.r, "l": args.l, "cache": cache}
    for name in ("p", "k", "r"):
        if params[name] is None:
            raise ParseError(f"preset {args.preset} needs --{name}", 0)
    plan: ESeriesPlan = build_preset(args.preset, **params)
    n_max = args.nmax if args.nmax is not None else 50
    check = plan.run(n_max, cache)
    rhs = "1" if plan.kind == "e-trivial" else f"E_{plan.l}"
    print(
        f"E_{plan.k} = {rhs} mod {plan.p}^{plan.r}: {'pass' if check.passed else 'FAIL'}"
        f" (min margin {min(check.margins)})",
        file=out,
    )
    code = EXIT_OK if check.passed else EXIT_FAIL
    return code, {
        "schema": SCHEMA_VERSION,
        "command": args.command,
        "plan": {"kind": plan.kind, "p": plan.p, "r": plan.r, "k": plan.k, "l": plan.l},
        "check": {"margins": list(check.margins), "pass": check.passed},
        "exit_code": code,
    }


COMMANDS = {
    "check-conditions": cmd_check_conditions,
    "compute-bound": cmd_compute_bound,
    "verify": cmd_verify,
    "star-verify": cmd_star_verify,
    "taylor": cmd_taylor,
    "preset": cmd_preset,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="eiscong",
        description="Check and verify congruences of Eisenstein series with polynomial indexes.",
    )
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--problem", metavar="FILE", help="problem file")
    ap.add_argument("--preset", choices=PRESETS)
    ap.add_argument("--f", metavar="EXPR", help="polynomial for presets")
    ap.add_argument("--g", metavar="EXPR", help="second polynomial (kummer preset)")
    ap.add_argument("--N", type=int, help="override the modulus exponent N")
    ap.add_argument("--pmax", type=int, help="largest prime to verify (default P + 100)")
    ap.add_argument("--nmax", type=int, help="q-expansion truncation (default 50)")
    ap.add_argument("--guard", type=int, help=f"extra p-adic digits (default {DEFAULT_GUARD})")
    ap.add_argument("--budget", type=int, help=f"exact Bernoulli budget (default {DEFAULT_BUDGET})")
    ap.add_argument("--workers", type=int, default=1, help="threads for verify")
    ap.add_argument("--json", metavar="PATH", help="write a JSON report")
    ap.add_argument("--p", type=int, help="prime (taylor, E presets)")
    ap.add_argument("--k", type=int, help="weight (E presets; evaluation point for taylor)")
    ap.add_argument("--l", type=int, help="branch (taylor) or second weight (e-kummer)")
    ap.add_argument("--r", type=int, help="exponent (E presets)")
    ap.add_argument("--n", type=int, help="q-coefficient index (taylor)")
    ap.add_argument("--W", type=int, help="precision (taylor)")
    ap.add_argument("--mmax", type=int, help="Taylor truncation (taylor)")
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        code, report = COMMANDS[args.command](args, out)
    except (PrecisionError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (EisCongError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        Path(args.json).write_bytes(dump_report(report))
    return code


def main():  # pragma: no cover
    sys.exit(run())
