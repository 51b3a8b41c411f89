"""``pbf`` command-line interface.

Input is one JSON object::

    {"kind": "toeplitz", "a": "6", "b": "11", "c": "6", "size": 12, "arithmetic": "exact"}
    {"kind": "bands", "c": [c_0, c_1, ...], "b": [b_1, ...], "a": [a_2, ...]}
    {"kind": "alphas", "alphas": [alpha_1, alpha_2, ...]}

Band arrays start at index 0 (c), 1 (b) and 2 (a).  Numbers may be JSON
numbers, decimal strings or ``"p/q"`` strings; ``arithmetic`` is
``"exact"`` (default) or ``"float64"``.

Exit status: 0 on success, 1 on usage, parse or validation errors, 2 when
the mathematics fails (vanishing minor, zero pivot, zero denominator).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional

from . import contfrac, pbf, tn, transforms
from .core import BandSpec, make_bands, to_scalar, toeplitz_bands
from .errors import (DivisionByZero, GateViolation, PBFError, SingularMinor, SizeExceeded,
                     ZeroPivot)
from .gauss_borel import gauss_borel

DEFAULT_INFINITE_DEPTH = 10
EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 1, 2


class InputError(Exception):
    """Malformed input file; the message carries file/line/field context."""


# -- numbers ------------------------------------------------------------------


def fmt(x):
    """Exact values as ``"p/q"`` (or ``"p"``), floats as their shortest repr."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return x


def fmt_all(xs):
    return [fmt(x) for x in xs]


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- input --------------------------------------------------------------------


class MatrixSpec:
    """A parsed input file."""

    def __init__(self, kind: str, exact: bool, bands: Optional[BandSpec] = None,
                 alphas: Optional[tuple] = None, abc: Optional[tuple] = None,
                 size: Optional[int] = None):
        self.kind = kind
        self.exact = exact
        self.bands = bands
        self.alphas = alphas
        self.abc = abc
        self.size = size


def _number(raw, field: str, exact: bool, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (str, int, float)):
        raise InputError(f"{where}: field '{field}': expected a number, got {json.dumps(raw)}")
    try:
        return to_scalar(raw, exact)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: field '{field}': cannot parse number {raw!r}") from None


def _array(obj, key, exact, where, required=True):
    if key not in obj:
        if required:
            raise InputError(f"{where}: missing field '{key}'")
        return []
    raw = obj[key]
    if not isinstance(raw, list):
        raise InputError(f"{where}: field '{key}': expected a list")
    return [_number(x, f"{key}[{i}]", exact, where) for i, x in enumerate(raw)]


def parse_spec(text: str, where: str = "<input>", exact: Optional[bool] = None) -> MatrixSpec:
    """Parse the JSON input; ``exact`` overrides the file's ``arithmetic`` field."""
    try:
        # keep numeric literals as text so exact mode never sees a rounded float
        obj = json.loads(text, parse_float=str, parse_int=str)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise InputError(f"{where}: top level must be a JSON object")
    arithmetic = obj.get("arithmetic", "exact")
    if arithmetic not in ("exact", "float64"):
        raise InputError(f"{where}: field 'arithmetic': expected 'exact' or 'float64', got {arithmetic!r}")
    if exact is None:
        exact = arithmetic == "exact"
    kind = obj.get("kind")
    try:
        if kind == "toeplitz":
            for key in ("a", "b", "c"):
                if key not in obj:
                    raise InputError(f"{where}: missing field '{key}'")
            a, b, c = (_number(obj[key], key, exact, where) for key in ("a", "b", "c"))
            size = obj.get("size")
            if size is not None:
                try:
                    size = int(size)
                except (TypeError, ValueError):
                    raise InputError(f"{where}: field 'size': expected an integer") from None
                if size < 0:
                    raise InputError(f"{where}: field 'size': must be >= 0")
            return MatrixSpec(kind, exact, toeplitz_bands(a, b, c, size), abc=(a, b, c), size=size)
        if kind == "bands":
            c = _array(obj, "c", exact, where)
            b = _array(obj, "b", exact, where)
            a = _array(obj, "a", exact, where, required=len(c) > 2)
            return MatrixSpec(kind, exact, make_bands(c, b, a))
        if kind == "alphas":
            alphas = _array(obj, "alphas", exact, where)
            if len(alphas) < 1 or (len(alphas) - 1) % 3:
                raise InputError(f"{where}: field 'alphas': need 3N+1 entries, got {len(alphas)}")
            return MatrixSpec(kind, exact, alphas=tuple(alphas))
    except PBFError as exc:
        raise InputError(f"{where}: {exc}") from None
    raise InputError(f"{where}: field 'kind': expected 'toeplitz', 'bands' or 'alphas', got {kind!r}")


def spec_dict(bands: BandSpec, depth: int, exact: bool, toeplitz_hint: bool = False) -> dict:
    """Re-ingestable JSON form of ``bands`` through index ``depth``."""
    c, b, a = bands.arrays(depth)
    arithmetic = "exact" if exact else "float64"
    if toeplitz_hint and depth >= 2 and len(set(c)) == 1 and len(set(b)) == 1 and len(set(a)) == 1:
        out = {"kind": "toeplitz", "a": fmt(a[0]), "b": fmt(b[0]), "c": fmt(c[0]),
               "arithmetic": arithmetic}
        if bands.length is not None:
            out["size"] = bands.length
        return out
    return {"kind": "bands", "c": fmt_all(c), "b": fmt_all(b), "a": fmt_all(a),
            "arithmetic": arithmetic}


def _depth(spec: MatrixSpec, requested: Optional[int]) -> int:
    length = spec.bands.length
    if requested is None:
        return length if length is not None else DEFAULT_INFINITE_DEPTH
    if requested < 0:
        raise InputError(f"--depth must be >= 0, got {requested}")
    if length is not None and requested > length:
        raise InputError(f"--depth {requested} exceeds the input size {length}")
    return requested


# -- commands -----------------------------------------------------------------


def _cf_block(ev: contfrac.CFEvaluation) -> dict:
    return {"k": ev.k, "convergents": fmt_all(ev.convergents), "monotone": ev.monotone_ok,
            "limit_estimate": fmt(ev.limit_estimate), "gap": fmt(ev.gap),
            "status": ev.status.value,
            "aitken": None if ev.aitken is None else repr(float(ev.aitken))}


def cmd_analyze(spec: MatrixSpec, depth: Optional[int], brute_force: bool = False,
                tol="0", jobs: int = 1) -> tuple:
    if spec.kind == "alphas":
        spec = MatrixSpec("bands", spec.exact, pbf.reconstruct_bands(spec.alphas))
    N = _depth(spec, depth)
    bands = spec.bands
    method = "minors" if brute_force else "auto"

    def verdict(n):
        v = tn.is_oscillatory_hessenberg(bands, n, method=method)
        row = {"depth": n, "oscillatory": v.is_oscillatory, "method": v.method,
               "nonsingular": v.is_nonsingular}
        if v.witness is not None:
            row["witness"] = {"rows": list(v.witness[0]), "cols": list(v.witness[1]),
                              "value": fmt(v.witness_value)}
        return row

    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        rows = list(pool.map(verdict, range(N + 1)))
    report = {"command": "analyze", "depth": N,
              "arithmetic": "exact" if spec.exact else "float64",
              "oscillatory": rows[-1]["oscillatory"], "per_depth": rows}
    status = EXIT_OK
    try:
        f = gauss_borel(bands, N)
        report["gauss_borel"] = {"alpha_upper": fmt_all(f.alpha_u), "m": fmt_all(f.m),
                                 "l": fmt_all(f.l)}
        if N >= 1:
            tol_value = to_scalar(tol, spec.exact)
            ev = contfrac.evaluate_convergents(f.l, f.m, 1, tol_value, N + 1)
            report["continued_fraction"] = _cf_block(ev)
    except (SingularMinor, DivisionByZero) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        status = EXIT_MATH
    return report, status


def cmd_factorize(spec: MatrixSpec, alpha2, depth: Optional[int]) -> tuple:
    if spec.kind == "alphas":
        bands = pbf.reconstruct_bands(spec.alphas)
        return {"command": "factorize", "reconstructed": spec_dict(bands, bands.length, spec.exact)}, EXIT_OK
    N = _depth(spec, depth)
    if alpha2 is not None:
        alpha2 = to_scalar(alpha2, spec.exact)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", GateViolation)
        fac = pbf.pbf_factorize(spec.bands, alpha2, N)
    if spec.exact:
        check = "exact" if pbf.check_product(fac, spec.bands) else "failed"
    else:
        check = "rtol=1e-12" if pbf.check_product(fac, spec.bands) else "failed"
    report = {"command": "factorize", "depth": N, "alpha2": fmt(fac.alpha2),
              "gate": fmt(fac.gate), "gate_violation": bool(caught),
              "alphas": fmt_all(fac.alphas), "all_positive": fac.all_positive,
              "product_check": check}
    return report, EXIT_OK


def cmd_transform(spec: MatrixSpec, retract=None, tail=None, check=False,
                  shifted=None, depth: Optional[int] = None) -> tuple:
    if spec.kind == "alphas":
        spec = MatrixSpec("bands", spec.exact, pbf.reconstruct_bands(spec.alphas))
    bands = spec.bands
    if retract is not None:
        s = to_scalar(retract, spec.exact)
        out, desc = transforms.retract(bands, s), {"kind": "retraction", "s": fmt(s)}
    elif tail is not None:
        out, desc = transforms.tail_matrix(bands, tail), {"kind": "tail", "k": tail}
    elif shifted is not None:
        out, desc = transforms.check_matrix_shifted(bands, shifted), {"kind": "check_shifted", "k": shifted}
    else:
        out, desc = transforms.check_matrix(bands), {"kind": "check"}
    if depth is None:
        depth = out.length if out.length is not None else DEFAULT_INFINITE_DEPTH
    elif out.length is not None and depth > out.length:
        raise InputError(f"--depth {depth} exceeds the transformed size {out.length}")
    report = {"command": "transform", "transform": desc,
              "output": spec_dict(out, depth, spec.exact, toeplitz_hint=spec.kind == "toeplitz")}
    return report, EXIT_OK


def cmd_convergents(spec: MatrixSpec, k: int, max_n: int, tol="0", fmt_name="json") -> tuple:
    if spec.kind == "alphas":
        spec = MatrixSpec("bands", spec.exact, pbf.reconstruct_bands(spec.alphas))
    if k < 1:
        raise InputError(f"--k must be >= 1, got {k}")
    if max_n <= k:
        raise InputError(f"--max-n must exceed --k ({max_n} <= {k})")
    if spec.bands.length is not None and max_n - 1 > spec.bands.length:
        raise InputError(f"--max-n {max_n} needs bands through index {max_n - 1}")
    f = gauss_borel(spec.bands, max_n - 1)
    ev = contfrac.evaluate_convergents(f.l, f.m, k, to_scalar(tol, spec.exact), max_n)
    rows = []
    prev = None
    for n, value in zip(ev.depths, ev.convergents):
        rows.append((n, fmt(value), None if prev is None else fmt(prev - value)))
        prev = value
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "convergent", "gap"])
        for n, v, g in rows:
            w.writerow([n, v, "" if g is None else g])
        return buf.getvalue(), EXIT_OK
    report = {"command": "convergents", "k": k, "status": ev.status.value,
              "rows": [{"n": n, "convergent": v, "gap": g} for n, v, g in rows]}
    return report, EXIT_OK


# -- argument handling --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pbf", description="Oscillation and bidiagonal factorization of "
                                             "tetradiagonal Hessenberg matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("file", help="JSON matrix specification ('-' for stdin)")
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--exact", dest="exact", action="store_const", const=True, default=None)
        mode.add_argument("--float", dest="exact", action="store_const", const=False)

    p = sub.add_parser("analyze", help="oscillation verdicts, factors and convergents")
    common(p)
    p.add_argument("--depth", type=int)
    p.add_argument("--brute-force", action="store_true", help="always enumerate minors")
    p.add_argument("--tol", default="0")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("factorize", help="bidiagonal factorization L1 L2 U")
    common(p)
    p.add_argument("--alpha2")
    p.add_argument("--depth", type=int)

    p = sub.add_parser("transform", help="retraction, tail or check matrix")
    common(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--retract", metavar="S")
    which.add_argument("--tail", type=int, metavar="K")
    which.add_argument("--check", action="store_true")
    p.add_argument("--shifted", type=int, metavar="K", help="with --check: shifted check matrix")
    p.add_argument("--depth", type=int, help="output depth for semi-infinite results")

    p = sub.add_parser("convergents", help="K[n,k] sequence as JSON or CSV")
    common(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--tol", default="0")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "transform" and args.shifted is not None and not args.check:
        parser.error("--shifted requires --check")
    try:
        spec = parse_spec(_read(args.file), args.file, args.exact)
        if args.command == "analyze":
            out, status = cmd_analyze(spec, args.depth, args.brute_force, args.tol, args.jobs)
        elif args.command == "factorize":
            out, status = cmd_factorize(spec, args.alpha2, args.depth)
        elif args.command == "transform":
            out, status = cmd_transform(spec, args.retract, args.tail, args.check,
                                        args.shifted, args.depth)
        else:
            out, status = cmd_convergents(spec, args.k, args.max_n, args.tol, args.format)
    except InputError as exc:
        print(f"pbf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ZeroPivot as exc:
        print(f"pbf: ZeroPivot at n={exc.n}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (SingularMinor, DivisionByZero) as exc:
        print(f"pbf: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (SizeExceeded, PBFError, ValueError) as exc:
        print(f"pbf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out if isinstance(out, str) else dumps(out))
    return status


if __name__ == "__main__":
    sys.exit(main())
