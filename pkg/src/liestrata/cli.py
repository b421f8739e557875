"""Command line interface: ``liestrata <command> ...``.

Exit status is 0 on success, 1 when a verification run has failing or
erroring claims and 2 on usage errors (bad arguments, unknown labels,
malformed input).
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .catalog import CatalogError, characteristic_allows, default_catalog, load_catalog
from .chevalley import ChevalleyAlgebra, LieElement, build_algebra
from .exactlinalg import FieldSpec, nilpotent_jordan_partition
from .grading import NotHomogeneous, grade, graded_centralizer_dims, solve_grading_constraints
from .rootsys import build_root_system, dominant_conjugate, format_tuple, parse_tuple
from .verify import ClaimError, format_table, reports_to_json, run_claims


# Tuples such as -2,-2,6 must parse as values, not as option flags.
_TUPLE_LIKE = re.compile(r"^-\d+(,\s*-?\d+)*$")


class UsageError(Exception):
    pass


def _tuple(text: str, rank: int) -> tuple[int, ...]:
    try:
        t = parse_tuple(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(t) != rank:
        raise UsageError(f"expected {rank} entries, got {len(t)}")
    return t


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    try:
        FieldSpec(p)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return p


def _rootsys(type_name: str):
    try:
        return build_root_system(type_name)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"unknown type {type_name!r}: {exc}") from None


def _algebra(type_name: str, p: int) -> ChevalleyAlgebra:
    try:
        return build_algebra(type_name, p)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"cannot build {type_name} over p={p}: {exc}") from None


def _element(A: ChevalleyAlgebra, spec: str, catalog) -> tuple[LieElement, object]:
    """An orbit label from the catalog, else a '+'-separated list of roots."""
    type_name = str(A.rootsystem.type)
    try:
        rec = catalog.orbit(type_name, spec)
    except KeyError:
        rec = None
    if rec is not None:
        if not characteristic_allows(rec.characteristic, A.field.characteristic):
            print(f"warning: {rec.label} is catalogued for {rec.characteristic}", file=sys.stderr)
        return rec.element(A), rec
    try:
        return A.from_roots([s.strip() for s in spec.split("+") if s.strip()]), None
    except (KeyError, ValueError) as exc:
        raise UsageError(f"{spec!r} is neither an orbit label nor a list of roots: {exc}") from None


def _dims_text(dims: dict[int, int]) -> str:
    return "\n".join(f"{d:>4}  {n}" for d, n in sorted(dims.items()))


# ---------------------------------------------------------------------------
# commands


def cmd_rootsys(args) -> int:
    R = _rootsys(args.type)
    sys.stdout.write(R.listing())
    return 0


def cmd_dominant(args) -> int:
    R = _rootsys(args.type)
    tau, word = dominant_conjugate(R, _tuple(args.tuple, R.rank))
    print(format_tuple(tau))
    print("word: " + (" ".join(f"s{i}" for i in word) if word else "(empty)"))
    return 0


def cmd_grade(args) -> int:
    A = _algebra(args.type, args.p)
    G = grade(A, _tuple(args.tuple, A.rank))
    dims = G.dims()
    print(_dims_text(dims))
    if args.plot:
        from .plotting import plot_grading

        plot_grading(dims, args.plot, title=f"{args.type} grading by {args.tuple}")
    return 0


def cmd_centralizer(args) -> int:
    if args.plot and args.tau is None:
        raise UsageError("--plot needs --tau")
    A = _algebra(args.type, args.p)
    e, _ = _element(A, args.element, default_catalog())
    G = None
    if args.tau is not None:
        G = grade(A, _tuple(args.tau, A.rank))
        try:
            degree = G.degree(e)
        except NotHomogeneous as exc:
            raise UsageError(f"element is not homogeneous under {args.tau}: {exc}") from None
    dim, _ = A.centralizer(e)
    print(f"dim {dim}")
    if G is None:
        return 0
    kernel = graded_centralizer_dims(A, e, G, degree=degree)
    split = {d: n for d, n in kernel.items() if n}
    print(f"degree of e: {degree}")
    print(_dims_text(split))
    if args.plot:
        from .plotting import plot_graded_centralizer

        plot_graded_centralizer(G.dims(), kernel, args.plot, title=f"{args.type} p={args.p} {args.element}")
    return 0


def cmd_jordan(args) -> int:
    A = _algebra(args.type, args.p)
    e, _ = _element(A, args.element, default_catalog())
    try:
        parts = nilpotent_jordan_partition(A.ad_matrix(e))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(" ".join(str(x) for x in parts))
    return 0


def cmd_solve_tau(args) -> int:
    R = _rootsys(args.type)
    fixed = {}
    for item in args.fix or []:
        i, _, v = item.partition("=")
        try:
            fixed[int(i)] = int(v)
        except ValueError:
            raise UsageError(f"bad --fix {item!r}; expected i=v") from None
        if not 1 <= int(i) <= R.rank:
            raise UsageError(f"--fix index {i} out of range 1..{R.rank}")
    roots = [s.strip() for s in args.roots.split("+") if s.strip()]
    try:
        fam = solve_grading_constraints(R, roots, fixed=fixed)
    except ValueError as exc:
        if str(exc) == "inconsistent":
            print("no integral solution")
            return 0
        raise UsageError(str(exc)) from None
    print(fam.describe())
    return 0


def cmd_verify(args) -> int:
    catalog = load_catalog(args.catalog) if args.catalog else default_catalog()
    reports = run_claims(catalog, args.claims, args.filter)
    timing = not args.no_timing
    print(reports_to_json(reports, timing) if args.json else format_table(reports, timing))
    if args.figures:
        _verify_figures(Path(args.figures), reports, catalog)
    return 0 if all(r.status == "pass" for r in reports) else 1


def _verify_figures(out: Path, reports, catalog) -> None:
    from .plotting import plot_claim_summary, plot_grading

    plot_claim_summary(reports, out / "claims.png")
    for rec in catalog.orbits.values():
        if rec.cocharacter is None:
            continue
        p = next((q for q in (2, 3, 5, 7) if characteristic_allows(rec.characteristic, q)), 2)
        G = grade(build_algebra(rec.type, p), rec.cocharacter)
        name = "".join(c if c.isalnum() else "_" for c in f"{rec.type}_{rec.label}").strip("_")
        plot_grading(G.dims(), out / f"grading_{name}.png", title=f"{rec.type} {rec.label}")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="liestrata", description="Exact computations in Chevalley Lie algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rootsys", help="list positive roots")
    s.add_argument("type")
    s.set_defaults(func=cmd_rootsys)

    s = sub.add_parser("dominant", help="dominant Weyl conjugate of a cocharacter")
    s.add_argument("type")
    s.add_argument("tuple", help="comma separated, e.g. 2,-7,2,2,0,2")
    s.set_defaults(func=cmd_dominant)

    s = sub.add_parser("grade", help="bucket dimensions of a grading")
    s.add_argument("type")
    s.add_argument("p", type=_prime)
    s.add_argument("tuple")
    s.add_argument("--plot", metavar="FILE")
    s.set_defaults(func=cmd_grade)

    s = sub.add_parser("centralizer", help="centralizer dimension of a nilpotent element")
    s.add_argument("type")
    s.add_argument("p", type=_prime)
    s.add_argument("element", help="orbit label or roots joined by '+'")
    s.add_argument("--tau", metavar="TUPLE", help="also print the graded split")
    s.add_argument("--plot", metavar="FILE", help="graded split figure (needs --tau)")
    s.set_defaults(func=cmd_centralizer)

    s = sub.add_parser("jordan", help="Jordan block sizes of ad e")
    s.add_argument("type")
    s.add_argument("p", type=_prime)
    s.add_argument("element", help="orbit label or roots joined by '+'")
    s.set_defaults(func=cmd_jordan)

    s = sub.add_parser("solve-tau", help="integral cocharacters giving the roots weight 2")
    s.add_argument("type")
    s.add_argument("roots", help="roots joined by '+'")
    s.add_argument("--fix", action="append", metavar="i=v")
    s.set_defaults(func=cmd_solve_tau)

    s = sub.add_parser("verify", help="run the claims harness")
    s.add_argument("--claims", metavar="FILE")
    s.add_argument("--catalog", metavar="FILE", help="orbit catalog (default: shipped data)")
    s.add_argument("--filter", metavar="GLOB")
    s.add_argument("--json", action="store_true")
    s.add_argument("--no-timing", action="store_true", help="zero timings for byte-stable output")
    s.add_argument("--figures", metavar="DIR", help="write summary and grading figures")
    s.set_defaults(func=cmd_verify)
    for parser in [ap, *sub.choices.values()]:
        parser._negative_number_matcher = _TUPLE_LIKE
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CatalogError, ClaimError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"liestrata {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
