"""Command-line front end: ``jsum field|jacobi|dickson|coeffs|verify``.

Output is JSON by default.  Errors are printed as ``{"error": code, "detail": ...}``
with exit status 2 (usage or precondition) or 3 (I/O or cache corruption);
``verify`` exits 1 when any check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import charsums as cs
from .cycring import CycInt
from .fieldtab import CacheError, cache_path, check_field_params, load_or_build
from .kernels import default_threads
from .verify import DEFAULT_SEED, SUITES, PreconditionError, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: str, detail: str, status: int):
        super().__init__(detail)
        self.code, self.detail, self.status = code, detail, status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message, EXIT_USAGE)


def default_cache_dir() -> Path:
    env = os.environ.get("JSUM_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "jsum"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--cache", type=Path, default=None, help="index-table cache directory")
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for field sweeps (default: all cores)")

    fieldp = _Parser(add_help=False)
    fieldp.add_argument("--p", type=int, required=True)
    fieldp.add_argument("--r", type=int, default=1)

    lp = _Parser(add_help=False)
    lp.add_argument("--l", type=int, default=None)

    parser = _Parser(prog="jsum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("field", parents=[common, fieldp], help="build or load a field index table")

    pj = sub.add_parser("jacobi", parents=[common, fieldp, lp], help="Jacobi sum J_e(i, j)")
    pj.add_argument("--e", type=int, default=None, help="order (default 2l^2)")
    pj.add_argument("--i", type=int, required=True)
    pj.add_argument("--j", type=int, required=True)
    pj.add_argument("--method", choices=("direct", "cycnums"), default="direct")

    pd = sub.add_parser("dickson", parents=[common, fieldp, lp], help="Dickson-Hurwitz sums B_e(i, j)")
    pd.add_argument("--e", type=int, default=None, help="order (default 2l^2)")
    pd.add_argument("--matrix", action="store_true")
    pd.add_argument("--i", type=int, default=None)
    pd.add_argument("--j", type=int, default=None)

    pc = sub.add_parser("coeffs", parents=[common, fieldp, lp], help="coefficient families b, d, c")
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--family", choices=("b", "d", "c"), required=True)

    pv = sub.add_parser("verify", parents=[common, fieldp, lp], help="run the verification suites")
    pv.add_argument("--suite", default="all",
                    help="all or a comma-separated subset of: " + ",".join(SUITES))
    pv.add_argument("--seed", type=int, default=DEFAULT_SEED)
    pv.add_argument("--timings", action="store_true", help="include per-check elapsed seconds")
    return parser


def _field(args):
    try:
        check_field_params(args.p, args.r)
    except ValueError as exc:
        raise CliError("precondition", str(exc), EXIT_USAGE) from None
    cache = args.cache or default_cache_dir()
    return load_or_build(args.p, args.r, cache), cache


def _order(args, field) -> int:
    if args.e is not None:
        e = args.e
    elif args.l is not None:
        e = 2 * args.l * args.l
    else:
        raise CliError("usage", "give --e or --l", EXIT_USAGE)
    if e < 1 or (field.q - 1) % e:
        raise CliError("precondition", f"e={e} does not divide q-1={field.q - 1}", EXIT_USAGE)
    return e


def _need_l(args, field) -> int:
    if args.l is None:
        raise CliError("usage", "--l is required", EXIT_USAGE)
    l = args.l
    if l < 3 or any(l % f == 0 for f in range(2, int(l**0.5) + 1)):
        raise CliError("precondition", f"l={l} must be an odd prime", EXIT_USAGE)
    if (field.q - 1) % (2 * l * l):
        raise CliError("precondition", f"q={field.q} is not 1 mod 2l^2={2 * l * l}", EXIT_USAGE)
    return l


def cmd_field(args) -> tuple[dict, int]:
    field, cache = _field(args)
    out = field.summary()
    out["cache_path"] = str(cache_path(cache, field.p, field.r))
    return out, EXIT_OK


def cmd_jacobi(args) -> tuple[dict, int]:
    field, _ = _field(args)
    e = _order(args, field)
    if args.method == "direct":
        J = cs.jacobi_direct(field, e, args.i, args.j, threads=args.threads)
    else:
        J = cs.jacobi_from_cycnums(cs.cyclotomic_numbers(field, e, threads=args.threads), args.i, args.j)
    return J.to_json(), EXIT_OK


def cmd_dickson(args) -> tuple[dict, int]:
    field, _ = _field(args)
    e = _order(args, field)
    if not args.matrix and (args.i is None or args.j is None):
        raise CliError("usage", "give --matrix or both --i and --j", EXIT_USAGE)
    dh = cs.dickson_hurwitz(cs.cyclotomic_numbers(field, e, threads=args.threads))
    if args.matrix:
        return dh.to_json(), EXIT_OK
    return {"e": e, "q": field.q, "i": args.i % e, "j": args.j % e, "value": dh(args.i, args.j)}, EXIT_OK


def cmd_coeffs(args) -> tuple[dict, int]:
    field, _ = _field(args)
    l = _need_l(args, field)
    out = {"family": args.family, "l": l, "n": args.n, "q": field.q}
    if args.family == "b":
        dh = cs.dickson_hurwitz(cs.cyclotomic_numbers(field, l * l, threads=args.threads))
        out["coeffs"] = cs.coefficient_vector_json(cs.coeffs_b(dh, l, args.n))
    elif args.family == "d":
        dh = cs.dickson_hurwitz(cs.cyclotomic_numbers(field, 2 * l * l, threads=args.threads))
        d = cs.coeffs_d(dh, l, args.n)
        out["coeffs"] = cs.coefficient_vector_json(d)
        out["matches_reduction"] = d == cs.reduce_b_vector(dh, args.n)
        out["sign_exponent"] = cs.dickson_sign_exponent(dh, args.n)
    else:
        J = cs.jacobi_direct(field, l * l, 1, args.n, threads=args.threads)
        residues, valid = cs.extract_c(J, l)
        out["residues"] = residues
        out["valid"] = valid
    return out, EXIT_OK


def _suites(spec: str) -> list[str]:
    if spec == "all":
        return list(SUITES)
    names = [s.strip() for s in spec.split(",") if s.strip()]
    bad = [s for s in names if s not in SUITES]
    if bad or not names:
        raise CliError("usage", f"unknown suite(s): {', '.join(bad) or spec!r}", EXIT_USAGE)
    return names


def cmd_verify(args) -> tuple[dict, int]:
    if args.l is None:
        raise CliError("usage", "--l is required", EXIT_USAGE)
    suites = _suites(args.suite)
    try:
        report = run_all(args.l, args.p, args.r, suites, seed=args.seed,
                         cache_dir=args.cache or default_cache_dir(), threads=args.threads)
    except PreconditionError as exc:
        raise CliError("precondition", str(exc), EXIT_USAGE) from None
    return report.to_dict(timings=args.timings), EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {"field": cmd_field, "jacobi": cmd_jacobi, "dickson": cmd_dickson,
            "coeffs": cmd_coeffs, "verify": cmd_verify}


def _csv(obj: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "checks" in obj:
        w.writerow(["name", "category", "status"])
        for c in obj["checks"]:
            w.writerow([c["name"], c["category"], c["status"]])
    elif "bvals" in obj or "cells" in obj:
        w.writerows(obj.get("bvals", obj.get("cells")))
    elif "coeffs" in obj:
        w.writerow(obj["coeffs"])
    else:
        for k, v in obj.items():
            w.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
    return buf.getvalue()


def _pretty(obj: dict) -> str:
    if "checks" in obj:
        lines = [f"params: {json.dumps(obj['params'])}  seed: {obj['seed']}"]
        for c in obj["checks"]:
            lines.append(f"  {c['status'].upper():7s} {c['category']:10s} {c['name']}")
        s = obj["summary"]
        lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
        return "\n".join(lines) + "\n"
    if "coeffs" in obj and "e" in obj:
        J = CycInt.from_json(obj)
        terms = [f"{c}*z^{i}" for i, c in enumerate(J.coeffs) if c]
        return (" + ".join(terms) or "0") + f"   (z = zeta_{J.e})\n"
    return json.dumps(obj, indent=2) + "\n"


def render(obj: dict, fmt: str) -> str:
    if fmt == "csv":
        return _csv(obj)
    if fmt == "pretty":
        return _pretty(obj)
    return json.dumps(obj, indent=2) + "\n"


def main(argv=None) -> int:
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        if args.threads is None:
            args.threads = default_threads()
        out, status = COMMANDS[args.command](args)
    except CliError as exc:
        return _error(exc.code, exc.detail, exc.status)
    except CacheError as exc:
        return _error("cache_corrupt", f"{type(exc).__name__}: {exc}", EXIT_IO)
    except OSError as exc:
        return _error("io", str(exc), EXIT_IO)
    except ValueError as exc:
        return _error("precondition", str(exc), EXIT_USAGE)
    sys.stdout.write(render(out, fmt))
    return status


def _error(code: str, detail: str, status: int) -> int:
    sys.stdout.write(json.dumps({"error": code, "detail": detail}) + "\n")
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
