"""Command-line entry point.

    littlewood field info --p 2 --e 3
    littlewood poly build --kind quadratic --p 7 --sizes 7
    littlewood poly norms --kind additive --p 2 --e 5 --sizes 31 --method oracle
    littlewood limit eval --kind quadratic --e 1 --sigma 1 --tau 1/4
    littlewood limit minimize --kind quadratic --e 2
    littlewood survey --kind quadratic --sigma 1 --tau 0 --primes-max 1000 --out fekete.csv
    littlewood verify spectral bounds

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction

import numpy as np

from . import optimize, survey, verify
from .asymptotics import limit_ratio4
from .field import make_field
from .norms import METHODS, report
from .polybuild import (
    KINDS,
    AdditivePolySpec,
    LimitProfile,
    MultiplicativePolySpec,
    build,
    unimodularize,
)


class UsageError(Exception):
    pass


def _ints(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(v) for v in text.replace(";", ",").split(",") if v.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _fracs(text: str | None) -> tuple[Fraction, ...] | None:
    if text is None:
        return None
    try:
        return tuple(Fraction(v.strip()) for v in text.replace(";", ",").split(",") if v.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


# --- specs from flags --------------------------------------------------------------


POLY_KINDS = KINDS + ("add", "mult")


def spec_from_args(kind: str, p: int, e: int, char_index: int | None, sizes, translations):
    if kind not in POLY_KINDS:
        raise UsageError(f"--kind must be one of {POLY_KINDS}")
    if p is None:
        raise UsageError("--p is required")
    F = make_field(p, e)
    if kind == "add":
        kind = "additive"
    elif kind == "mult":
        # the character index decides; default is the quadratic character when there is one
        half = (F.q - 1) // 2 if F.q % 2 else None
        d = half if char_index is None else char_index % (F.q - 1)
        kind = "quadratic" if d is not None and d == half else "nonquadratic"
        char_index = d if d is not None else char_index
    if kind == "additive":
        s = sizes[0] if sizes else F.q - 1
        t = translations[0] if translations else 0
        if sizes and len(sizes) != 1 or translations and len(translations) != 1:
            raise UsageError("additive polynomials take one size and one translation")
        return AdditivePolySpec(F, 1 if char_index is None else char_index, s, t)
    sizes = sizes or (p,) * e
    if len(sizes) == 1 and e > 1:
        sizes = sizes * e
    if kind == "quadratic":
        if p == 2:
            raise UsageError("no quadratic character in characteristic 2")
        d = (F.q - 1) // 2
        if char_index is not None and char_index % (F.q - 1) != d:
            raise UsageError(f"the quadratic character has index {d}")
    else:
        d = 1 if char_index is None else char_index
        if F.q % 2 == 1 and d % (F.q - 1) == (F.q - 1) // 2:
            raise UsageError("character index selects the quadratic character; use --kind quadratic")
    if translations is not None and len(translations) == 1 and e > 1:
        translations = translations * e
    return MultiplicativePolySpec(F, d, tuple(sizes), translations)


def _array_to_json(a: np.ndarray) -> dict:
    if np.iscomplexobj(a):
        coeffs = np.stack([a.real, a.imag], axis=-1).tolist()
        return {"shape": list(a.shape), "dtype": "complex", "coefficients": coeffs}
    return {"shape": list(a.shape), "dtype": "int", "coefficients": a.tolist()}


def _array_to_text(a: np.ndarray) -> str:
    lines = ["shape " + " ".join(str(s) for s in a.shape)]
    for row in a.reshape(-1, a.shape[-1]):
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def load_array(path: str) -> np.ndarray:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        arr = np.array(obj["coefficients"])
        if obj.get("dtype") == "complex":
            arr = arr[..., 0] + 1j * arr[..., 1]
        return arr.reshape(obj["shape"])
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines[0].startswith("shape"):
        raise UsageError(f"{path}: expected JSON or 'shape ...' text")
    shape = tuple(int(v) for v in lines[0].split()[1:])
    vals = [int(v) for ln in lines[1:] for v in ln.split()]
    return np.array(vals, dtype=np.int64).reshape(shape)


# --- subcommands ---------------------------------------------------------------------


def cmd_field_info(args) -> int:
    F = make_field(args.p, args.e)
    info = F.info()
    if args.json:
        _emit(json.dumps(info, indent=2), args.out)
    else:
        _emit("\n".join(f"{k}: {v}" for k, v in info.items()), args.out)
    return 0


def _build_from_args(args) -> np.ndarray:
    spec = spec_from_args(args.kind, args.p, args.e, args.char_index, _ints(args.sizes), _ints(args.translations))
    a = build(spec)
    return unimodularize(a) if args.unimodular else a


def cmd_poly_build(args) -> int:
    a = _build_from_args(args)
    if np.iscomplexobj(a) or args.json:
        _emit(json.dumps(_array_to_json(a)), args.out)
    else:
        _emit(_array_to_text(a), args.out)
    return 0


_BATCH_COLUMNS = ("kind", "p", "e", "char_index", "sizes", "translations")


def cmd_poly_norms(args) -> int:
    if args.batch:
        return _poly_norms_batch(args)
    a = load_array(args.input) if args.input else _build_from_args(args)
    _emit(json.dumps(report(a, args.method).to_dict(), indent=None if args.out else 2), args.out)
    return 0


def _poly_norms_batch(args) -> int:
    """Each input CSV row describes one polynomial; one norm row is written per input row."""
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w")
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow([*_BATCH_COLUMNS, "l2sq", "l4p4", "ratio4", "merit_factor", "method"])
        with open(args.batch) as fh:
            for row in csv.DictReader(fh):
                ci = row.get("char_index") or None
                spec = spec_from_args(row["kind"], int(row["p"]), int(row.get("e") or 1),
                                      int(ci) if ci else None, _ints(row.get("sizes") or None),
                                      _ints(row.get("translations") or None))
                a = build(spec)
                rep = report(unimodularize(a) if args.unimodular else a, args.method)
                w.writerow([row.get(k, "") for k in _BATCH_COLUMNS]
                           + [rep.l2sq, rep.l4p4, f"{rep.ratio4:.12g}",
                              "" if rep.merit_factor is None else f"{rep.merit_factor:.12g}", rep.method])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _profile_from_args(args) -> LimitProfile:
    sigma = _fracs(args.sigma) or (Fraction(1),)
    tau = _fracs(args.tau)
    if args.kind == "quadratic" and tau is None:
        tau = (Fraction(0),)
    return LimitProfile(args.kind, args.e, sigma, tau)


def cmd_limit_eval(args) -> int:
    prof = _profile_from_args(args)
    val = limit_ratio4(prof)
    out = {"kind": prof.kind, "e": prof.e, "sigma": _jsonable(prof.sigma), "tau": _jsonable(prof.tau),
           "ratio4": str(val), "ratio4_float": float(val), "ratio": float(val) ** 0.25}
    _emit(json.dumps(out, indent=2), args.out)
    return 0


def cmd_limit_minimize(args) -> int:
    res = optimize.minimize(args.e, args.kind)
    _emit(json.dumps(res.to_dict(), indent=2), args.out)
    return 0


def cmd_survey(args) -> int:
    prof = _profile_from_args(args)
    rows = survey.run_survey(prof, args.primes_max, args.primes_min, raw=args.raw, method=args.method,
                             jobs=args.jobs)
    if args.out in (None, "-"):
        survey.write_csv(rows, sys.stdout)
    else:
        with open(args.out, "w") as fh:
            survey.write_csv(rows, fh)
    return 0


def cmd_verify(args) -> int:
    for name in args.suites:
        if name not in verify.SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(verify.SUITES)}")
    rep = verify.run(args.suites)
    _emit(rep.to_json(), args.out)
    return 0 if rep.passed else 1


# --- parser --------------------------------------------------------------------------


def _add_poly_flags(sp):
    sp.add_argument("--kind", choices=POLY_KINDS, default="quadratic")
    sp.add_argument("--p", type=int)
    sp.add_argument("--e", type=int, default=1)
    sp.add_argument("--char-index", type=int)
    sp.add_argument("--sizes", help="comma-separated box sides")
    sp.add_argument("--translations", help="comma-separated translations")
    sp.add_argument("--unimodularize", "--unimodular", dest="unimodular", action="store_true",
                    help="replace zero coefficients by 1")


def _add_profile_flags(sp, default_kind="quadratic"):
    sp.add_argument("--kind", choices=KINDS, default=default_kind)
    sp.add_argument("--e", type=int, default=1)
    sp.add_argument("--sigma", help="limiting sizes, e.g. 1 or 1,1/2")
    sp.add_argument("--tau", help="limiting translations (quadratic only)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="littlewood", description="Character polynomials and their L4 norms.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    fp = sub.add_parser("field", help="finite field tables").add_subparsers(dest="action", required=True)
    sp = fp.add_parser("info")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--e", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_field_info)

    pp = sub.add_parser("poly", help="character polynomials").add_subparsers(dest="action", required=True)
    sp = pp.add_parser("build")
    _add_poly_flags(sp)
    sp.add_argument("--json", action="store_true", help="JSON even for integer coefficients")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_poly_build)
    sp = pp.add_parser("norms")
    _add_poly_flags(sp)
    sp.add_argument("--input", help="array file written by 'poly build'")
    sp.add_argument("--batch", help="CSV with columns " + ",".join(_BATCH_COLUMNS))
    sp.add_argument("--method", choices=METHODS)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_poly_norms)

    lp = sub.add_parser("limit", help="limit formulas").add_subparsers(dest="action", required=True)
    sp = lp.add_parser("eval")
    _add_profile_flags(sp)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_limit_eval)
    sp = lp.add_parser("minimize")
    sp.add_argument("--kind", choices=KINDS, default="quadratic")
    sp.add_argument("--e", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_limit_minimize)

    sp = sub.add_parser("survey", help="convergence survey over a prime range (CSV)")
    _add_profile_flags(sp)
    sp.add_argument("--primes-max", type=int, required=True)
    sp.add_argument("--primes-min", type=int, default=2)
    sp.add_argument("--method", choices=METHODS)
    sp.add_argument("--raw", action="store_true", help="keep zero coefficients")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--json", action="store_true", help=argparse.SUPPRESS)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_survey)

    sp = sub.add_parser("verify", help="run verification suites (JSON report)")
    sp.add_argument("suites", nargs="*", default=[], help=", ".join(verify.SUITES))
    sp.add_argument("--json", action="store_true", help=argparse.SUPPRESS)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"littlewood: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
