"""Command-line interface.

Exit codes: 0 success, 1 negative verdict, 2 usage error, 3 internal error.
Payloads go to stdout (JSON unless CSV/SVG is requested); diagnostics go to
stderr. Nothing is written to stdout on an error path.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

from . import enriques_lattice as enr
from .checks import SUITES, run_suite
from .coxeter_rep import RepSide, ReducedWord, generator_matrix, rep_matrix
from .errors import CoxlatError, InvalidInput, InvalidRank, NotEffectiveLike, ShapeError
from .exact_linalg import char_poly, spectral_radius
from .limit_set import (box_counting_dimension, circles_to_csv, circles_to_svg, gasket_circles,
                        gasket_cloud, orbit_points)
from .tits_cone import Basis, LatticeClass, NotInCone, NotReducible, reduce_boundary_point, reduce_flat
from .wehler_model import WehlerContext, movable_effective_member

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

# flags whose values may start with '-' (e.g. --class "-1,2,2")
_VALUE_FLAGS = {"--class", "--point", "--points", "--seed", "--word", "--scales"}

DEFAULT_SCALES = "0.125,0.0625,0.03125,0.015625,0.0078125"


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _emit(payload, out: str = "-"):
    text = payload if isinstance(payload, str) else json.dumps(payload, sort_keys=True) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _word(n: int, text: str) -> ReducedWord:
    letters = _ints(text)
    if any(not 1 <= x <= n for x in letters):
        raise UsageError(f"word letters must lie in 1..{n}")
    return ReducedWord(n, letters)


def cmd_generator(args):
    if args.n < 1 or not 1 <= args.j <= args.n:
        raise UsageError(f"need 1 <= j <= n, got n={args.n}, j={args.j}")
    M = generator_matrix(args.n, args.j, RepSide(args.side))
    _emit({"n": args.n, "j": args.j, "side": args.side, "matrix": M.to_json()})
    return EXIT_OK


def cmd_reduce(args):
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    coeffs = _ints(args.class_)
    if len(coeffs) != args.n + 1:
        raise UsageError(f"--class needs {args.n + 1} coefficients")
    ctx = WehlerContext(args.n)
    res = movable_effective_member(ctx, coeffs) if args.max_steps is None else _reduce_budget(ctx, coeffs, args.max_steps)
    payload = {"n": args.n, "class": list(coeffs), **res.to_json()}
    _emit(payload)
    if not res.is_member:
        print(f"not in the movable effective cone: {res.reason}", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


def _reduce_budget(ctx, coeffs, max_steps):
    from .wehler_model import Membership, Verdict, make_nef

    try:
        res = make_nef(ctx, coeffs, max_steps)
    except NotEffectiveLike as e:
        return Membership(Verdict.NON_MEMBER, reason=f"pairwise violation: a_{e.i} + a_{e.j} < 0")
    if isinstance(res, NotReducible):
        return Membership(Verdict.NON_MEMBER, reason=res.reason)
    return Membership(Verdict.MEMBER, res)


def cmd_reduce_point(args):
    v = _ints(args.point)
    if len(v) != args.n:
        raise UsageError(f"--point needs {args.n} coordinates")
    if not any(v):
        raise UsageError("--point must be nonzero")
    res = reduce_boundary_point(LatticeClass.alpha(v), args.max_steps)
    _emit({"n": args.n, "point": list(v), **res.to_json()})
    if isinstance(res, NotInCone):
        print(f"not in the Tits cone: {res.reason}", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


def cmd_reduce_flat(args):
    pts = [_ints(chunk) for chunk in args.points.split(";") if chunk.strip()]
    if not pts or any(len(p) != args.n for p in pts):
        raise UsageError(f"--points needs ';'-separated vectors of length {args.n}")
    res = reduce_flat([LatticeClass.alpha(p) for p in pts])
    _emit({"n": args.n, **res.to_json()})
    if isinstance(res, NotReducible):
        print(f"flat not reducible: {res.reason}", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


def cmd_orbit(args):
    if args.n < 3:
        raise UsageError("--n must be >= 3")
    if args.depth < 0:
        raise UsageError("--depth must be >= 0")
    seed = _ints(args.seed)
    if len(seed) != args.n or not any(seed):
        raise UsageError(f"--seed needs {args.n} coordinates, not all zero")
    cloud = orbit_points(args.n, LatticeClass(args.n, seed, Basis(args.basis)), args.depth)
    if args.format == "csv":
        _emit(cloud.to_csv(), args.out)
    else:
        _emit({"n": args.n, "depth": args.depth, "skipped": cloud.skipped,
               "points": [{"word": w.to_json(), "chart": list(p)} for w, p in zip(cloud.words, cloud.points)]},
              args.out)
    return EXIT_OK


def cmd_gasket(args):
    if args.depth < 0:
        raise UsageError("--depth must be >= 0")
    circles = gasket_circles(args.depth)
    _emit(circles_to_svg(circles) if args.format == "svg" else circles_to_csv(circles), args.out)
    return EXIT_OK


def cmd_dimension(args):
    if args.depth < 0:
        raise UsageError("--depth must be >= 0")
    if args.spacing <= 0:
        raise UsageError("--spacing must be positive")
    scales = _floats(args.scales)
    if len(scales) < 2 or any(s <= 0 for s in scales):
        raise UsageError("--scales needs at least two positive sizes")
    cloud = gasket_cloud(gasket_circles(args.depth), spacing=args.spacing)
    bc = box_counting_dimension(cloud, scales)
    _emit({"depth": args.depth, "points": len(cloud), **bc.to_json()})
    return EXIT_OK


def cmd_spectrum(args):
    if args.rep == "enriques":
        word = _word(3, args.word)
        M = enr.word_matrix(word.letters)
    else:
        if args.n is None or args.n < 1:
            raise UsageError("--rep ucn needs --n >= 1")
        word = _word(args.n, args.word)
        M = rep_matrix(word, RepSide.DUAL)
    radius = spectral_radius(M, args.tol)
    _emit({"rep": args.rep, "word": word.to_json(), "char_poly": char_poly(M),
           "radius": radius, "entropy": max(0.0, math.log(radius)) if radius > 0 else 0.0})
    return EXIT_OK


def cmd_enriques(args):
    if args.what == "lattice":
        L = enr.build_lattice()
        _emit({"gram": L.gram.to_json(), "labels": list(L.labels), "determinant": L.determinant(),
               "signature": list(L.signature())})
    elif args.what == "involutions":
        _emit({str(j): M.to_json() for j, M in enr.involutions().items()})
    else:
        word = _word(3, args.word)
        _emit(enr.entropy_payload(word.letters, args.tol))
    return EXIT_OK


def cmd_check(args):
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    t0 = time.perf_counter()
    results = run_suite(args.suite)
    passed = all(p for _, p, _ in results)
    _emit({"suite": args.suite, "passed": passed,
           "checks": [{"name": n, "passed": bool(p), "detail": d} for n, p, d in results]})
    # wall time stays off stdout so payloads are byte-identical across runs
    print(f"wall time: {time.perf_counter() - t0:.3f} s", file=sys.stderr)
    return EXIT_OK if passed else EXIT_VERDICT


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coxlat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generator", help="generator matrix M_{N,j} or its transpose")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--j", type=int, required=True)
    g.add_argument("--side", choices=["primal", "dual"], default="dual")
    g.set_defaults(func=cmd_generator)

    r = sub.add_parser("reduce", help="move a Wehler class into the nef cone")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--class", dest="class_", required=True)
    r.add_argument("--max-steps", type=int)
    r.set_defaults(func=cmd_reduce)

    rp = sub.add_parser("reduce-point", help="sigma-descent of an alpha-basis class")
    rp.add_argument("--n", type=int, required=True)
    rp.add_argument("--point", required=True)
    rp.add_argument("--max-steps", type=int)
    rp.set_defaults(func=cmd_reduce_point)

    rf = sub.add_parser("reduce-flat", help="move a rational boundary flat into a chamber face")
    rf.add_argument("--n", type=int, required=True)
    rf.add_argument("--points", required=True, help="';'-separated comma lists")
    rf.set_defaults(func=cmd_reduce_flat)

    o = sub.add_parser("orbit", help="charted orbit of a seed class")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--seed", required=True)
    o.add_argument("--basis", choices=["alpha", "chamber"], default="alpha")
    o.add_argument("--depth", type=int, required=True)
    o.add_argument("--format", choices=["json", "csv"], default="json")
    o.add_argument("--out", default="-")
    o.set_defaults(func=cmd_orbit)

    ga = sub.add_parser("gasket", help="Apollonian gasket circles of UC(4)")
    ga.add_argument("--depth", type=int, required=True)
    ga.add_argument("--format", choices=["svg", "csv"], default="csv")
    ga.add_argument("--out", default="-")
    ga.set_defaults(func=cmd_gasket)

    d = sub.add_parser("dimension", help="box-counting estimate on the gasket")
    d.add_argument("--depth", type=int, default=8)
    d.add_argument("--scales", default=DEFAULT_SCALES)
    d.add_argument("--spacing", type=float, default=1 / 2048)
    d.set_defaults(func=cmd_dimension)

    s = sub.add_parser("spectrum", help="characteristic polynomial, spectral radius, entropy")
    s.add_argument("--rep", choices=["ucn", "enriques"], default="ucn")
    s.add_argument("--n", type=int)
    s.add_argument("--word", required=True)
    s.add_argument("--tol", type=float, default=1e-12)
    s.set_defaults(func=cmd_spectrum)

    e = sub.add_parser("enriques", help="Enriques lattice, involutions, entropy")
    e.add_argument("--what", choices=["lattice", "involutions", "entropy"], default="entropy")
    e.add_argument("--word", default="1,2,3")
    e.add_argument("--tol", type=float, default=1e-12)
    e.set_defaults(func=cmd_enriques)

    c = sub.add_parser("check", help="run invariant suites")
    c.add_argument("--suite", default="all")
    c.set_defaults(func=cmd_check)
    return p


def _join_negative_values(argv):
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
        return args.func(args)
    except UsageError as e:
        print(f"coxlat: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidInput, InvalidRank, ShapeError, IndexError) as e:
        print(f"coxlat: invalid input: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CoxlatError as e:
        print(f"coxlat: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as e:  # pragma: no cover - last-resort guard
        print(f"coxlat: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
