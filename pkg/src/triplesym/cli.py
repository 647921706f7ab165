"""Command-line front end.

Verbs: legendre, cubic-symbol, redei, triple-cubic, milnor,
magnus {expand,mu,degree,normal-form}, verify-heisenberg, paper-table.

Exit codes: 0 success, 2 precondition failure, 3 degenerate input,
4 search exhausted, 5 internal inconsistency.  The default search bound
comes from --bound, then a JSON config file (--config), then the
TRIPLESYM_BOUND environment variable, then 10000.

Batch mode reads one prime per line; with --keep-going failures become
error records and the exit code stays 0.  On batch and table paths,
--figure PATH renders a chart next to the delimited output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import kummer_cover, magnus, report, triple_symbols
from .eisenstein import EisensteinInt, EisensteinPrime, cubic_residue_symbol
from .errors import TriplesymError
from .residue_symbols import legendre

DEFAULT_BOUND = 10_000
BOUND_ENV_VAR = "TRIPLESYM_BOUND"

#: reference values for the (-17, -53) family: pi3 -> (mu3(sigma;123), mu3(123))
VERIFICATION_TABLE = {
    -71: (1, 2),
    -89: (2, 1),
    -107: (1, 2),
    -179: (2, 1),
    -197: (2, 1),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triplesym",
        description="Exact power residue symbols, triple symbols and the "
        "machinery behind them.",
    )
    parser.add_argument("--config", help="JSON config file (keys match flags)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("legendre", help="Legendre symbol (a/p)")
    p.add_argument("a", type=int)
    p.add_argument("p", type=int)
    _output_flags(p)

    p = sub.add_parser("cubic-symbol", help="cubic residue symbol (x/pi)_3")
    p.add_argument("x", help="Eisenstein integer, e.g. -17 or 4+1*w")
    p.add_argument("pi", help="Eisenstein prime (any associate)")
    _output_flags(p)

    p = sub.add_parser("redei", help="quadratic triple symbol [p1,p2,p3]")
    p.add_argument("p1", type=int)
    p.add_argument("p2", type=int)
    p.add_argument("p3", type=int, nargs="?")
    _batch_flags(p)

    p = sub.add_parser("triple-cubic", help="cubic triple symbol [pi1,pi2,pi3]_3")
    p.add_argument("pi1")
    p.add_argument("pi2")
    p.add_argument("pi3", nargs="?")
    _batch_flags(p)

    p = sub.add_parser("milnor", help="invariant mu_l(I) of longitude words")
    p.add_argument("--l", type=int, required=True, choices=(2, 3))
    p.add_argument("--index", "--I", dest="index", required=True,
                   help="comma-separated multi-index, e.g. 1,2,3")
    p.add_argument("longitudes", nargs="+",
                   help="one word per generator, e.g. '[x1,x2]'")
    _output_flags(p)

    p = sub.add_parser("magnus", help="truncated mod-l Magnus expansion tools")
    msub = p.add_subparsers(dest="magnus_op", required=True)
    for op in ("expand", "mu", "degree", "normal-form"):
        mp = msub.add_parser(op)
        mp.add_argument("--l", type=int, required=True, choices=(2, 3))
        mp.add_argument("--d", type=int, default=2, help="degree cap")
        mp.add_argument("--r", type=int, help="generator count (default inferred)")
        if op == "mu":
            mp.add_argument("--index", "--I", dest="index", required=True)
        mp.add_argument("word")
        _output_flags(mp)

    p = sub.add_parser("verify-heisenberg",
                       help="exact relation checks for one covering instance")
    p.add_argument("--l", type=int, required=True, choices=(2, 3))
    p.add_argument("--c", required=True, help="branch constant, e.g. 8 or 1+2*w")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _output_flags(p)

    p = sub.add_parser("paper-table",
                       help="recompute the bundled reference table of triple "
                            "cubic symbols for (-17,-53) and report PASS/FAIL")
    _output_flags(p)
    p.add_argument("--bound", type=int, help="search bound for form solutions")
    p.add_argument("--figure", help="render a chart of the rows to this file")

    return parser


def _output_flags(p):
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--witnesses", action="store_true",
                   help="include witness details in the output")


def _batch_flags(p):
    _output_flags(p)
    p.add_argument("--bound", type=int, help="search bound for form solutions")
    p.add_argument("--batch", help="file with one third prime per line")
    p.add_argument("--keep-going", action="store_true",
                   help="record per-item failures and keep exit code 0")
    p.add_argument("--figure", help="render a chart of the rows to this file")


def _resolve_bound(args, config) -> int:
    if getattr(args, "bound", None):
        return args.bound
    if "bound" in config:
        return int(config["bound"])
    env = os.environ.get(BOUND_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_BOUND


def _load_config(path):
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _emit(row, fmt):
    report.write_rows([row], fmt, sys.stdout)


def _redei_row(p1, p2, p3, bound, witnesses):
    rep = triple_symbols.redei_symbol(p1, p2, p3, bound=bound)
    row = {
        "command": "redei",
        "l": 2,
        "p1": p1,
        "p2": p2,
        "p3": p3,
        "value": rep.value.render(),
        "exponent": rep.value.exponent,
        "mu2_123": rep.milnor,
        "mu2_sigma_123": rep.frobenius_milnor,
        "solution": rep.solution.as_dict(),
        "status": "ok",
    }
    if witnesses:
        row["witnesses"] = [list(w) for w in rep.witnesses]
    return row


def _triple_cubic_row(pi1, pi2, pi3, bound, witnesses):
    rep = triple_symbols.cubic_triple_symbol(pi1, pi2, pi3, bound=bound)
    row = {
        "command": "triple-cubic",
        "l": 3,
        "pi1": str(rep.solution.pi1),
        "pi2": str(rep.solution.pi2),
        "pi3": str(EisensteinPrime.from_element(EisensteinInt.coerce(pi3))),
        "value": rep.value.render(),
        "exponent": rep.value.exponent,
        "mu3_123": rep.milnor,
        "mu3_sigma_123": rep.frobenius_milnor,
        "solution": rep.solution.as_dict(),
        "status": "ok",
    }
    if witnesses:
        row["witnesses"] = [[list(c), e] for c, e in rep.witnesses]
    return row


def _run_batch(args, items, evaluate, label_key, fmt):
    rows = []
    failures = 0
    for item in items:
        try:
            rows.append(evaluate(item))
        except (TriplesymError, ValueError) as exc:
            code = getattr(exc, "exit_code", 2)
            failures += 1
            rows.append({
                "command": args.command,
                label_key: str(item),
                "status": "error",
                "error": str(exc),
                "exit_code": code,
            })
            if not args.keep_going:
                report.write_rows(rows, fmt, sys.stdout)
                return code
    report.write_rows(rows, fmt, sys.stdout)
    if args.figure:
        report.render_rows_figure(
            rows, args.figure, f"{args.command} batch", 2 if args.command == "redei" else 3
        )
    return 0 if (args.keep_going or not failures) else 2


def cmd_legendre(args, config):
    value = legendre(args.a, args.p)
    if args.format == "text":
        print(value.render())
    else:
        _emit({"command": "legendre", "a": args.a, "p": args.p,
               "exponent": value.exponent, "value": value.render()},
              args.format)
    return 0


def cmd_cubic_symbol(args, config):
    x = EisensteinInt.parse(args.x)
    pi = EisensteinPrime.parse(args.pi)
    value = cubic_residue_symbol(x, pi)
    if args.format == "text":
        print(value.render())
    else:
        _emit({"command": "cubic-symbol", "x": str(x), "pi": str(pi),
               "exponent": value.exponent, "value": value.render()},
              args.format)
    return 0


def cmd_redei(args, config):
    bound = _resolve_bound(args, config)
    detail = args.witnesses or args.format == "json"
    if args.batch:
        with open(args.batch) as fh:
            primes = [int(line.strip()) for line in fh if line.strip()]
        return _run_batch(
            args, primes,
            lambda p3: _redei_row(args.p1, args.p2, p3, bound, detail),
            "p3", args.format,
        )
    if args.p3 is None:
        raise TriplesymError("p3 is required unless --batch is given")
    row = _redei_row(args.p1, args.p2, args.p3, bound, detail)
    _emit(row, args.format)
    if args.figure:
        report.render_rows_figure([row], args.figure, "redei", 2)
    return 0


def cmd_triple_cubic(args, config):
    bound = _resolve_bound(args, config)
    detail = args.witnesses or args.format == "json"
    if args.batch:
        with open(args.batch) as fh:
            primes = [line.strip() for line in fh if line.strip()]
        return _run_batch(
            args, primes,
            lambda p3: _triple_cubic_row(args.pi1, args.pi2, p3, bound, detail),
            "pi3", args.format,
        )
    if args.pi3 is None:
        raise TriplesymError("pi3 is required unless --batch is given")
    row = _triple_cubic_row(args.pi1, args.pi2, args.pi3, bound, detail)
    _emit(row, args.format)
    if args.figure:
        report.render_rows_figure([row], args.figure, "triple-cubic", 3)
    return 0


def cmd_milnor(args, config):
    index = tuple(int(s) for s in args.index.split(","))
    longitudes = [magnus.parse_word(w) for w in args.longitudes]
    rank = max([len(longitudes)] + [w.r for w in longitudes])
    longitudes = [w.with_rank(rank) for w in longitudes]
    value = magnus.milnor_of_element(longitudes, index, args.l)
    if args.format == "text":
        print(value)
    else:
        _emit({"command": "milnor", "l": args.l, "index": list(index),
               "value": value}, args.format)
    return 0


def cmd_magnus(args, config):
    word = magnus.parse_word(args.word, r=args.r)
    if args.magnus_op == "expand":
        series = magnus.expand(word, args.l, word.r, args.d)
        if args.format == "text":
            print(series)
        else:
            _emit({"command": "magnus-expand", "l": args.l, "d": args.d,
                   "series": str(series),
                   "coefficients": {"".join(map(str, k)): v
                                    for k, v in series.terms()}},
                  args.format)
        return 0
    if args.magnus_op == "mu":
        index = tuple(int(s) for s in args.index.split(","))
        value = magnus.mu(index, word, args.l)
        print(value) if args.format == "text" else _emit(
            {"command": "magnus-mu", "l": args.l, "index": list(index),
             "value": value}, args.format)
        return 0
    if args.magnus_op == "degree":
        deg = magnus.zassenhaus_degree(word, args.l, args.d)
        text = str(deg) if deg is not None else f">={args.d + 1}"
        print(text) if args.format == "text" else _emit(
            {"command": "magnus-degree", "l": args.l, "cap": args.d,
             "degree": deg, "rendered": text}, args.format)
        return 0
    form = magnus.normal_form_deg2(word, args.l)
    if args.format == "text":
        print(" ".join(f"{k}={v}" for k, v in form.as_dict().items()))
    else:
        _emit({"command": "magnus-normal-form", "l": args.l,
               "exponents": form.as_dict()}, args.format)
    return 0


def cmd_verify_heisenberg(args, config):
    result = kummer_cover.verify_relations(
        args.l, kummer_cover.Qw.parse(args.c), trials=args.trials, seed=args.seed
    )
    print(json.dumps(result, sort_keys=True, indent=2))
    return 0 if result["ok"] else 5


def cmd_paper_table(args, config):
    bound = _resolve_bound(args, config)
    start = time.monotonic()
    rows = []
    all_pass = True
    for pi3, (expect_sigma, expect_mu) in sorted(
        VERIFICATION_TABLE.items(), key=lambda kv: -kv[0]
    ):
        rep = triple_symbols.cubic_triple_symbol(-17, -53, pi3, bound=bound)
        ok = (rep.frobenius_milnor, rep.milnor) == (expect_sigma, expect_mu)
        all_pass = all_pass and ok
        rows.append({
            "pi3": pi3,
            "mu3_sigma_123": rep.frobenius_milnor,
            "expected_sigma": expect_sigma,
            "mu3_123": rep.milnor,
            "expected_123": expect_mu,
            "value": rep.value.render(),
            "status": "PASS" if ok else "FAIL",
        })
    elapsed = time.monotonic() - start
    report.write_rows(rows, args.format, sys.stdout)
    if args.format == "text":
        print(f"# {sum(r['status'] == 'PASS' for r in rows)}/{len(rows)} rows pass "
              f"in {elapsed:.2f}s")
    if args.figure:
        report.render_table_figure(rows, args.figure)
    return 0 if all_pass else 1


_COMMANDS = {
    "legendre": cmd_legendre,
    "cubic-symbol": cmd_cubic_symbol,
    "redei": cmd_redei,
    "triple-cubic": cmd_triple_cubic,
    "milnor": cmd_milnor,
    "magnus": cmd_magnus,
    "verify-heisenberg": cmd_verify_heisenberg,
    "paper-table": cmd_paper_table,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        return _COMMANDS[args.command](args, config)
    except TriplesymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
