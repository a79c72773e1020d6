"""Command-line surface: reconstruct, moeller, evalcount, project, verify.

Exit codes: 0 success, 1 input problems (bad files, bad flags, missing
samples), 2 honest computational failures (degree exhausted, verification
failed, non-distinguished degree set, and friends).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import jsonio
from .errors import (
    BadBase,
    BoundExceeded,
    DecodeFailure,
    DegreeExhausted,
    DegreeInsufficient,
    DegreeLeak,
    DomainMismatch,
    EigenFailure,
    IrrationalSpectrum,
    IrrationalSupport,
    MalformedLiteral,
    MissingSample,
    NonCommuting,
    NonFinite,
    NotDistinguished,
    NotGroebner,
    NotOrderIdeal,
    NotSurjective,
    NotZeroDimensional,
    RepeatedEigenvalues,
    ResidualTooLarge,
    Singular,
    SpecInvalid,
    VerificationFailed,
    ZeroDenominator,
    ZeroDirection,
)
from .poly import MonomialOrder
from .prony import run_pipeline, verify_prony_conditions
from .relative import run_relative_pipeline
from .structures import (
    chebyshev_structure,
    evaluation_count,
    hankel_structure,
    projection_oracle,
    toeplitz_structure,
)
from .vanish import PointSet, moeller_basis, vanishing_space
from .zerodim import quotient_model, zero_locus_exact

_EXIT_COMPUTATIONAL = (
    DegreeExhausted,
    VerificationFailed,
    NotDistinguished,
    NotSurjective,
    IrrationalSupport,
    IrrationalSpectrum,
    DegreeInsufficient,
    NotZeroDimensional,
    RepeatedEigenvalues,
    EigenFailure,
    ResidualTooLarge,
    DecodeFailure,
    DegreeLeak,
    Singular,
)
_EXIT_INPUT = (
    MalformedLiteral,
    ZeroDenominator,
    BadBase,
    BoundExceeded,
    NonFinite,
    SpecInvalid,
    NonCommuting,
    MissingSample,
    ZeroDirection,
    NotGroebner,
    NotOrderIdeal,
    DomainMismatch,
    OSError,
    json.JSONDecodeError,
    ValueError,
    KeyError,
)


def _load_json(path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def _emit(doc, output):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _load_oracle(args):
    """(oracle, exact, generator runtime or None) from --samples/--generator."""
    if bool(args.samples) == bool(args.generator):
        raise SpecInvalid("provide exactly one of --samples or --generator")
    if args.samples:
        oracle, exact = jsonio.oracle_from_samples(_load_json(args.samples))
        return oracle, exact, None
    runtime = jsonio.generator_from_json(_load_json(args.generator))
    return runtime.oracle, runtime.exact, runtime


def _structure_spec(name, n, domain, exact, args):
    order = MonomialOrder(args.order)
    row_family = args.family_rows or args.family_cols
    if name == "hankel":
        lag = 1 if args.row_lag is None else args.row_lag
        return hankel_structure(
            n,
            domain=domain,
            column_family=args.family_cols,
            row_family=row_family,
            row_lag=lag,
            order=order,
            exact=exact,
        )
    if name == "toeplitz":
        lag = 0 if args.row_lag is None else args.row_lag
        return toeplitz_structure(
            n,
            column_family=args.family_cols,
            row_family=row_family,
            row_lag=lag,
            order=order,
            exact=exact,
        )
    if name == "chebyshev":
        if n != 1:
            raise SpecInvalid("the Chebyshev structure is univariate")
        lag = 1 if args.row_lag is None else args.row_lag
        return chebyshev_structure(row_lag=lag, order=order, exact=exact)
    raise SpecInvalid(f"unknown structure {name!r}")


def cmd_reconstruct(args):
    oracle, exact, runtime = _load_oracle(args)
    if args.float:
        exact = False
    if args.tol is not None and exact:
        raise SpecInvalid("--tol applies only to float mode")
    tol = args.tol if args.tol is not None else 1e-6

    if args.relative:
        if not exact:
            raise SpecInvalid("relative reconstruction is exact-only")
        Y = jsonio.algebraic_set_from_json(_load_json(args.relative))
        outcome = run_relative_pipeline(
            Y,
            oracle,
            rank_bound=args.rank_bound,
            max_degree=args.max_d,
            seed=args.seed,
            square=args.square,
            column_family=args.family_cols,
        )
    else:
        structure = args.structure or (runtime.structure if runtime else "hankel")
        spec = _structure_spec(structure, oracle.n, oracle.domain, exact, args)
        outcome = run_pipeline(
            spec,
            oracle,
            rank_bound=args.rank_bound,
            max_degree=args.max_d,
            seed=args.seed,
            tol=tol,
        )

    answer = None
    if runtime is not None and runtime.decode is not None:
        answer = runtime.decode(list(outcome.support), list(outcome.coefficients))
    _emit(jsonio.result_to_json(outcome, answer), args.output)
    return 0


def cmd_moeller(args):
    doc = _load_json(args.points)
    X = jsonio.points_from_json(doc)
    order = MonomialOrder(args.order)
    degree = args.degree if args.degree is not None else len(X)
    from .poly import IndexFamily

    D = IndexFamily(args.family, X.n).members(degree, order)
    basis = moeller_basis(X, D, order)
    cardinalities = {
        "groebner": len(basis.groebner),
        "degrees": len(basis.degrees),
        "border": len(basis.border_set),
        "points": len(X),
    }
    identity_ok = (
        cardinalities["groebner"]
        == cardinalities["degrees"] + cardinalities["border"] - cardinalities["points"]
    )
    _emit(
        {
            "groebner": [jsonio.poly_to_json(g) for g in basis.groebner],
            "normal_set": [list(m) for m in basis.normal_set],
            "cardinalities": cardinalities,
            "identity_ok": identity_ok,
            "zl_match": _zero_locus_matches(D, X, order, args.seed),
        },
        args.output,
    )
    return 0


def _zero_locus_matches(D, X, order, seed):
    space = vanishing_space(D, X, order)
    try:
        model = quotient_model(space, order)
        locus = zero_locus_exact(model, random.Random(seed))
    except (
        DegreeInsufficient,
        NotZeroDimensional,
        RepeatedEigenvalues,
        IrrationalSpectrum,
    ):
        return False
    return set(locus.points) == set(X.points)


def cmd_evalcount(args):
    lag = 0 if args.row_lag is None else args.row_lag
    order = MonomialOrder(args.order)
    hankel = hankel_structure(
        args.n,
        column_family=args.family_cols,
        row_family=args.family_rows or args.family_cols,
        row_lag=lag,
        order=order,
    )
    toeplitz = toeplitz_structure(
        args.n,
        column_family=args.family_cols,
        row_family=args.family_rows or args.family_cols,
        row_lag=lag,
        order=order,
    )
    _emit(
        {
            "n": args.n,
            "d": args.d,
            "hankel": evaluation_count(hankel, args.d),
            "toeplitz": evaluation_count(toeplitz, args.d),
        },
        args.output,
    )
    return 0


def cmd_project(args):
    oracle, exact, _ = _load_oracle(args)
    direction = jsonio.parse_exponent_key(args.direction, oracle.n)
    projected = projection_oracle(oracle, direction)
    top = args.max_index
    indices = range(0, top + 1) if projected.domain == "nat" else range(-top, top + 1)
    items = [((k,), projected((k,))) for k in indices]
    _emit(jsonio.samples_to_json(1, projected.domain, items, exact), args.output)
    return 0


def cmd_verify(args):
    result = jsonio.result_from_json(_load_json(args.result))
    oracle, exact, runtime = _load_oracle(args)
    if args.support:
        support = jsonio.points_from_json(_load_json(args.support), result["exact"])
    else:
        support = PointSet(oracle.n, result["support"])
    structure = args.structure or (runtime.structure if runtime else "hankel")
    spec = _structure_spec(structure, oracle.n, oracle.domain, result["exact"], args)
    d = result["degree_used"]

    conditions = verify_prony_conditions(spec, oracle, support, d, seed=args.seed)

    tol = args.tol if args.tol is not None else 1e-6
    samples_ok = True
    pairs = list(zip(result["support"], result["coefficients"]))
    for gamma in spec.columns(d):
        try:
            expected = oracle(gamma)
        except MissingSample:
            continue
        predicted = sum(
            (c * spec.atom(gamma, x) for x, c in pairs),
            start=Fraction(0) if result["exact"] else 0.0,
        )
        if result["exact"]:
            ok = predicted == expected
        else:
            ok = abs(predicted - expected) <= tol * (1.0 + abs(expected))
        if not ok:
            samples_ok = False
            break
    verdict = conditions if samples_ok else "verification_failed"
    _emit(
        {
            "conditions": conditions,
            "samples_ok": samples_ok,
            "verdict": verdict,
            "degree": d,
        },
        args.output,
    )
    return 0 if verdict == "ok" else 2


def _add_oracle_flags(sub):
    sub.add_argument("--samples", help="sample table JSON")
    sub.add_argument("--generator", help="generator description JSON")


def _add_common_flags(sub):
    sub.add_argument("--order", default="degrevlex", choices=MonomialOrder.KINDS)
    sub.add_argument("--family-cols", default="total", choices=("total", "max", "hyperbolic"))
    sub.add_argument("--family-rows", default=None, choices=("total", "max", "hyperbolic"))
    sub.add_argument("--row-lag", type=int, default=None)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--output", help="write JSON here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pronykit",
        description="Sparse-sum reconstruction from structured evaluations",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    rec = subs.add_parser("reconstruct", help="recover support and coefficients")
    _add_oracle_flags(rec)
    _add_common_flags(rec)
    rec.add_argument("--structure", choices=("hankel", "toeplitz", "chebyshev"))
    mode = rec.add_mutually_exclusive_group()
    mode.add_argument("--rank-bound", type=int, default=None)
    mode.add_argument("--auto", action="store_true")
    rec.add_argument("--max-d", type=int, default=12)
    rec.add_argument("--float", action="store_true", help="force the approximate pipeline")
    rec.add_argument("--tol", type=float, default=None)
    rec.add_argument("--relative", help="algebraic set JSON; support promised on it")
    rec.add_argument("--square", action="store_true", help="square relative variant")
    rec.set_defaults(handler=cmd_reconstruct)

    moe = subs.add_parser("moeller", help="Groebner basis of a point ideal")
    moe.add_argument("--points", required=True)
    moe.add_argument("--family", default="total", choices=("total", "max", "hyperbolic"))
    moe.add_argument("--degree", type=int, default=None)
    moe.add_argument("--order", default="degrevlex", choices=MonomialOrder.KINDS)
    moe.add_argument("--seed", type=int, default=0)
    moe.add_argument("--output")
    moe.set_defaults(handler=cmd_moeller)

    cnt = subs.add_parser("evalcount", help="sample counts of the structured builds")
    cnt.add_argument("-n", type=int, required=True)
    cnt.add_argument("-d", type=int, required=True)
    _add_common_flags(cnt)
    cnt.set_defaults(handler=cmd_evalcount)

    prj = subs.add_parser("project", help="restrict a sample oracle to a line")
    _add_oracle_flags(prj)
    prj.add_argument("--direction", required=True, help='e.g. "(1,1)"')
    prj.add_argument("--max-index", type=int, default=8)
    prj.add_argument("--output")
    prj.set_defaults(handler=cmd_project)

    ver = subs.add_parser("verify", help="re-check a result against its oracle")
    _add_oracle_flags(ver)
    _add_common_flags(ver)
    ver.add_argument("--result", required=True)
    ver.add_argument("--support", help="points JSON overriding the result support")
    ver.add_argument("--structure", choices=("hankel", "toeplitz", "chebyshev"))
    ver.add_argument("--tol", type=float, default=None)
    ver.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.handler(args)
    except _EXIT_COMPUTATIONAL as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _EXIT_INPUT as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
