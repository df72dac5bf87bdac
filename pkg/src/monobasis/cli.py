"""Command-line front end: ``monobasis {basis,verify,expand,gram}``.

Exit codes: 0 success, 1 verification failure (including non-monogenic
input to ``expand``), 2 usage, parse or I/O error. Output is JSON (or CSV
for ``gram``) with a canonical term order, so identical arguments produce
identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from fractions import Fraction

from . import serialization as ser
from .expansions import NonMonogenicError, fourier, taylor_quat, taylor_spinor
from .inner_products import gram
from .quaternion_appell import (
    appell_basis,
    g_basis_embedding,
    g_basis_explicit,
    h_basis,
)
from .spinor_gt import gt_basis_ck, gt_basis_spinor, hat_basis
from .suites import SUITES, run_suite

DEFAULT_MAX_DEGREE = 16

ROUTES = {
    "spinor": ("closed-form", "ck"),
    "hat": ("closed-form",),
    "h": ("embedding",),
    "g": ("embedding", "explicit", "recurrence"),
    "appell": ("recurrence", "embedding", "explicit"),
}


class UsageError(Exception):
    pass


def max_degree() -> int:
    raw = os.environ.get("MONOBASIS_MAX_DEGREE", str(DEFAULT_MAX_DEGREE))
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"MONOBASIS_MAX_DEGREE must be an integer, got {raw!r}")
    if cap < 0:
        raise UsageError("MONOBASIS_MAX_DEGREE must be non-negative")
    return cap


def _check_degree(d: int, what: str = "degree"):
    if d < 0:
        raise UsageError(f"{what} must be non-negative")
    cap = max_degree()
    if d > cap:
        raise UsageError(f"{what} {d} exceeds MONOBASIS_MAX_DEGREE={cap}")


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}")


def _weight_str(w: Fraction) -> str:
    return f"{w.numerator}/{w.denominator}"


# --- basis -----------------------------------------------------------------------

def _quat_elements(kind: str, n: int, route: str) -> list:
    """``g^n_j`` (kind g, index j) or ``A^l_n`` (kind appell, index l)."""
    if route == "recurrence":
        A = appell_basis(n).elements
        g = [A[n - j] for j in range(n + 1)]
    elif route == "embedding":
        g = g_basis_embedding(n).elements
    else:
        g = g_basis_explicit(n).elements
    if kind == "g":
        return g
    return [g[n - l] for l in range(n + 1)]


def cmd_basis(args) -> int:
    kind = args.kind
    deg = args.k if args.k is not None else args.n
    if deg is None:
        raise UsageError("basis needs --k or --n")
    _check_degree(deg)
    routes = ROUTES[kind]
    route = args.route or routes[0]
    if route not in routes:
        raise UsageError(f"route {route!r} is not available for kind {kind!r} (choose from {routes})")
    doc = {"kind": kind, "route": route}
    if kind in ("spinor", "hat"):
        doc.update(k=deg, sign=args.sign)
        if kind == "spinor":
            elems = gt_basis_spinor(deg, args.sign).elements if route == "closed-form" \
                else gt_basis_ck(deg, args.sign)
        else:
            elems = hat_basis(deg, args.sign).elements
        doc["elements"] = [
            {"j": j, "weight": _weight_str(Fraction(2 * deg + 1 - 2 * j, 2)), "poly": ser.encode(f)}
            for j, f in enumerate(elems)
        ]
    elif kind == "h":
        doc["k"] = deg
        doc["elements"] = [
            {"j": j, "weight": _weight_str(Fraction(2 * deg + 1 - 2 * j, 2)), "poly": ser.encode(f)}
            for j, f in enumerate(h_basis(deg).elements)
        ]
    else:
        key = "j" if kind == "g" else "l"
        doc["k" if kind == "g" else "n"] = deg
        doc["elements"] = [
            {key: i, "poly": ser.encode_poly(p, "quaternion")}
            for i, p in enumerate(_quat_elements(kind, deg, route))
        ]
    _emit(ser.dumps(doc), args.out)
    return 0


# --- verify ----------------------------------------------------------------------

def read_points(path: str) -> list:
    """Spherical points ``r,theta,phi`` from CSV; a non-numeric first row is a header."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    pts = []
    for i, row in enumerate(rows):
        try:
            vals = [float(c) for c in row]
        except ValueError:
            if i == 0:
                continue
            raise UsageError(f"{path}: row {i + 1} is not numeric: {row}")
        if len(vals) != 3:
            raise UsageError(f"{path}: row {i + 1} needs 3 columns (r,theta,phi)")
        pts.append(tuple(vals))
    if not pts:
        raise UsageError(f"{path}: no points")
    return pts


def cmd_verify(args) -> int:
    _check_degree(args.max_k, "max-k")
    if args.tol <= 0:
        raise UsageError("--tol must be positive")
    points = read_points(args.points) if args.points else None
    checks = run_suite(args.suite, args.max_k, args.product, args.tol, points)
    ok = all(c["status"] == "pass" for c in checks)
    doc = {
        "suite": args.suite,
        "max_k": args.max_k,
        "product": args.product,
        "tol": args.tol,
        "ok": ok,
        "checks": checks,
    }
    _emit(ser.dumps(doc), args.out)
    return 0 if ok else 1


# --- expand ----------------------------------------------------------------------

def _read_input(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    try:
        return ser.loads_poly(text)
    except ser.FormatError as exc:
        raise UsageError(f"{path}: {exc}")


def cmd_expand(args) -> int:
    obj = _read_input(args.input)
    if obj.degree() > max_degree():
        raise UsageError(f"input degree {obj.degree()} exceeds MONOBASIS_MAX_DEGREE={max_degree()}")
    spinor = hasattr(obj, "plus")
    if args.kind == "taylor-s":
        if not spinor:
            raise UsageError("taylor-s expects a spinor polynomial {plus, minus}")
        if obj and obj.vars != "x":
            raise UsageError("taylor-s expects variables x")
    else:
        if spinor:
            raise UsageError(f"{args.kind} expects a quaternion polynomial")
        if obj and obj.vars != "y":
            raise UsageError(f"{args.kind} expects variables y")
    try:
        if args.kind == "taylor-q":
            tc = taylor_quat(obj)
            doc = {"taylor_q": [{"n": n, "l": l, "t": ser.encode_coeff(t)}
                                for (n, l), t in sorted(tc.coeffs.items())]}
        elif args.kind == "taylor-s":
            tc = taylor_spinor(obj, args.sign)
            doc = {"sign": args.sign,
                   "taylor_s": [{"k": k, "j": j, "t": ser.encode_coeff(t)}
                                for (k, j), t in sorted(tc.coeffs.items())]}
        else:
            if args.max_n is not None:
                _check_degree(args.max_n, "max-n")
            fc = fourier(obj, args.max_n)
            doc = {"fourier": [{"n": n, "l": l, "alpha": [float(v) for v in fc.coeffs[(n, l)]]}
                               for (n, l) in sorted(fc.exact)]}
    except NonMonogenicError as exc:
        res = exc.residual
        err = {"error": "input is not monogenic", "residual": ser.encode(res)}
        sys.stderr.write(ser.dumps(err))
        return 1
    _emit(ser.dumps(doc), args.out)
    return 0


# --- gram ------------------------------------------------------------------------

def cmd_gram(args) -> int:
    _check_degree(args.k)
    if args.kind == "spinor":
        elems = gt_basis_spinor(args.k, args.sign, check=False).elements
    elif args.kind == "hat":
        elems = hat_basis(args.k, args.sign).elements
    elif args.kind == "h":
        elems = h_basis(args.k).elements
    else:
        elems = _quat_elements(args.kind, args.k, "recurrence")
    G = gram(elems, args.product)
    _emit(G.to_csv() if args.format == "csv" else G.to_json() + "\n", args.out)
    return 0


# --- parser ----------------------------------------------------------------------

def _sign(v: str) -> str:
    if v not in ("+", "-"):
        raise argparse.ArgumentTypeError("sign must be '+' or '-'")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monobasis", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="write a basis in the JSON polynomial format")
    b.add_argument("--kind", required=True, choices=sorted(ROUTES))
    b.add_argument("--k", type=int)
    b.add_argument("--n", type=int)
    b.add_argument("--sign", type=_sign, default="-")
    b.add_argument("--route")
    b.add_argument("--out")
    b.set_defaults(func=cmd_basis)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--max-k", type=int, default=6)
    v.add_argument("--product", choices=("ball", "sphere", "fischer"), default="ball")
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--points", help="CSV of spherical points r,theta,phi (legendre suite)")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("expand", help="Taylor or Fourier coefficients of a monogenic polynomial")
    e.add_argument("--kind", required=True, choices=("taylor-q", "taylor-s", "fourier"))
    e.add_argument("input")
    e.add_argument("--sign", type=_sign, default="-")
    e.add_argument("--max-n", type=int)
    e.add_argument("--out")
    e.set_defaults(func=cmd_expand)

    g = sub.add_parser("gram", help="exact Gram matrix of a basis")
    g.add_argument("--kind", required=True, choices=("spinor", "hat", "h", "g", "appell"))
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--sign", type=_sign, default="-")
    g.add_argument("--product", choices=("ball", "sphere", "fischer"), default="ball")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gram)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"monobasis: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
