"""Command-line interface: ``linksym {fv,linksym,fubini,macdonald,nabla-p1n,verify}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import conjectures
from .macdonald import b_mu, htilde, mac_expand, nabla, t_mu
from .poincare import (
    Method,
    f_barred_fubini,
    f_recurrence,
    f_truncated_infinite,
    f_via_inner_product,
)
from .qt_arith import Poly, format_poly, format_rqat, q_series, rqat_to_json
from .symfunc import (
    DenominatorError,
    basis_p,
    format_expansion,
    link_sym,
    link_sym_normalized,
    parse_partition,
)
from .words import enumerate_barred_fubini, parse_binary, word_str

DEFAULT_MAX_N = 6
THREADS_ENV = "LINKSYM_THREADS"


class UsageError(Exception):
    pass


def _word(s: str):
    try:
        return parse_binary(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _partition(s: str):
    try:
        return parse_partition(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(s: str) -> int:
    k = int(s)
    if k < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return k


def _check_size(n: int, args, what: str = "word"):
    if n > DEFAULT_MAX_N and not args.unsafe_max:
        raise UsageError(
            f"{what} of size {n} exceeds the default limit {DEFAULT_MAX_N}; "
            "the enumerations grow roughly like (n+2)^n, so this may take very long. "
            "Pass --unsafe-max to run it anyway."
        )


def _emit(args, plain: str, latex: str | None, obj) -> None:
    if args.format == "json":
        print(json.dumps(obj, indent=2))
    elif args.format == "latex":
        print(latex if latex is not None else plain)
    else:
        print(plain)


def _value_text(value, latex=False) -> str:
    if isinstance(value, Poly):
        return format_poly(value, latex)
    return format_rqat(value, latex)


# -- commands ----------------------------------------------------------------


def cmd_fv(args) -> int:
    v = args.word
    _check_size(len(v), args)
    exact = {
        "recurrence": lambda: f_recurrence(v),
        "barred_fubini": lambda: f_barred_fubini(v),
        "inner_product": lambda: f_via_inner_product(v),
    }
    if args.method != "all":
        if args.method == Method.TRUNCATED_INFINITE.value:
            value = f_truncated_infinite(v, args.order)
        else:
            value = exact[args.method]()
        obj = {"v": word_str(v), "method": args.method, "value": rqat_to_json(value)}
        if args.method == Method.TRUNCATED_INFINITE.value:
            obj["order"] = args.order
        _emit(args, _value_text(value), _value_text(value, True), obj)
        return 0

    values = {name: fn() for name, fn in exact.items()}
    trunc = f_truncated_infinite(v, args.order)
    agree = len(set(values.values())) == 1 and q_series(values["barred_fubini"], args.order) == trunc
    verdict = "AGREE" if agree else "DISAGREE"
    if args.format == "json":
        obj = {
            "v": word_str(v),
            "routes": {name: rqat_to_json(x) for name, x in values.items()},
            "truncated_infinite": {"order": args.order, "value": rqat_to_json(trunc)},
            "verdict": verdict,
        }
        print(json.dumps(obj, indent=2))
    else:
        latex = args.format == "latex"
        for name, x in values.items():
            print(f"{name}: {_value_text(x, latex)}")
        print(f"truncated_infinite (q^<={args.order}): {_value_text(trunc, latex)}")
        print(verdict)
    return 0 if agree else 1


def cmd_linksym(args) -> int:
    v = args.word
    _check_size(len(v), args)
    if args.normalized:
        try:
            f = link_sym_normalized(v)
        except DenominatorError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    else:
        f = link_sym(v)
    items = f.sorted_items()
    _emit(args, format_expansion(items, "m"), format_expansion(items, "m", latex=True), f.to_json())
    return 0


def cmd_fubini(args) -> int:
    v = args.word
    _check_size(len(v), args)
    rows = enumerate_barred_fubini(v)
    if args.format == "json":
        print(json.dumps([
            {**bw.to_json(), "area": bw.area, "bar": bw.bar_count, "dinv": list(bw.dinv_vector())}
            for bw in rows
        ], indent=2))
        return 0
    print(f"{'word':<{2 * len(v) + 2}} area  bar  dinv_i")
    for bw in rows:
        print(f"{str(bw):<{2 * len(v) + 2}} {bw.area:>4}  {bw.bar_count:>3}  {list(bw.dinv_vector())}")
    print(f"{len(rows)} barred Fubini words for v = {word_str(v)}")
    return 0


def cmd_macdonald(args) -> int:
    mu = args.partition
    # the cell alphabet is cheap; only the filling sum is size-limited
    compute_h = sum(mu) <= DEFAULT_MAX_N or args.unsafe_max
    h = htilde(mu) if compute_h else None
    if args.format == "json":
        obj = {"partition": list(mu), "cells": [str(p) for p in b_mu(mu).polys()],
               "T": str(t_mu(mu))}
        if h is not None:
            obj["htilde"] = h.to_json()
        print(json.dumps(obj, indent=2))
        return 0
    latex = args.format == "latex"
    print(f"B_mu = {b_mu(mu)}")
    print(f"T_mu = {format_poly(t_mu(mu), latex)}")
    if h is None:
        print(f"Ht[{','.join(map(str, mu))}] skipped: size {sum(mu)} exceeds {DEFAULT_MAX_N} "
              "(pass --unsafe-max to compute it)")
    else:
        print(f"Ht[{','.join(map(str, mu))}] = {format_expansion(h.sorted_items(), 'm', latex)}")
    return 0


def cmd_nabla_p1n(args) -> int:
    n = args.n
    _check_size(n, args, "degree")
    f = nabla(basis_p((1,) * n))
    if args.format == "json":
        print(json.dumps({
            "n": n,
            "nabla_p1n": f.to_json(),
            "htilde": mac_expand(basis_p((1,) * n)).to_json(),
        }, indent=2))
        return 0
    latex = args.format == "latex"
    print(format_expansion(f.sorted_items(), "m", latex))
    return 0


def cmd_verify(args) -> int:
    workers = int(os.environ.get(THREADS_ENV, "1") or 1)
    start = time.perf_counter()
    reports = conjectures.run_suite(args.scope, args.max_n, args.order, workers=workers)
    elapsed = time.perf_counter() - start
    failed = [r for r in reports if not r.passed]
    if args.format == "json":
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for r in reports:
            print(r.summary())
        print(f"checked {len(reports)}, passed {len(reports) - len(failed)}, "
              f"failed {len(failed)} ({elapsed:.1f}s)")
    if failed and args.strict:
        return 1
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linksym",
        description="Exact link symmetric functions and Poincare series, with Macdonald-operator checks.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "latex"), default="plain")
    common.add_argument("--unsafe-max", action="store_true",
                        help=f"allow sizes above {DEFAULT_MAX_N}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fv", parents=[common], help="Poincare series f_v(q,a,t)")
    p.add_argument("word", type=_word)
    p.add_argument("--method", default="barred_fubini",
                   choices=[m.value for m in Method] + ["all"])
    p.add_argument("--order", type=_nonneg, default=8,
                   help="q-truncation order for the truncated_infinite route")
    p.set_defaults(func=cmd_fv)

    p = sub.add_parser("linksym", parents=[common], help="link symmetric function L_v")
    p.add_argument("word", type=_word)
    p.add_argument("--normalized", action="store_true", help="multiply by (1-q)^(zeros of v)")
    p.set_defaults(func=cmd_linksym)

    p = sub.add_parser("fubini", parents=[common], help="barred Fubini words for v")
    p.add_argument("word", type=_word)
    p.set_defaults(func=cmd_fubini)

    p = sub.add_parser("macdonald", parents=[common], help="modified Macdonald polynomial")
    p.add_argument("partition", type=_partition, help='comma-separated parts, e.g. "4,3,1"')
    p.set_defaults(func=cmd_macdonald)

    p = sub.add_parser("nabla-p1n", parents=[common], help="nabla applied to p_1^n")
    p.add_argument("n", type=_nonneg)
    p.set_defaults(func=cmd_nabla_p1n)

    p = sub.add_parser("verify", parents=[common], help="run identity and conjecture checks")
    p.add_argument("scope", nargs="?", default="all", choices=conjectures.SCOPES)
    p.add_argument("--max-n", type=_nonneg, default=4)
    p.add_argument("--order", type=_nonneg, default=10, help="q-order for e-positivity")
    p.add_argument("--strict", action="store_true", help="exit 1 if any check fails")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
