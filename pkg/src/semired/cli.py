"""``semired`` command line.

JSON results go to stdout, progress and errors to stderr.  Exit codes:
0 success (or every check passed), 1 a check failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .algebra import build_model, model_from_json, model_to_json, validate_model
from .bruhat import bruhat_cell_census, bruhat_factor_group_element
from .fields import GF, QQ, Field
from .invariants import invariant_space_dimension, restrict_to_torus
from .jordan import jordan_chevalley
from .matrix import Matrix
from .nilcone import borel_census, invariant_family, is_nilpotent_element, nilcone_membership, steinberg_map
from .oracles import fourier_motzkin_feasible
from .positivity import Cocharacter, find_positive_cocharacter, verify_certificate
from .rng import SplitMix64
from .suites import SUITES, run_suite


class InputError(Exception):
    """Bad argument value or malformed input file; exits with status 2."""


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg}, line {exc.lineno})") from None


def _parse_field(text: str) -> Field:
    t = text.strip().upper().replace("_", "")
    if t == "Q":
        return QQ
    if t.startswith("F") and t[1:].isdigit():
        return GF(int(t[1:]))
    raise InputError(f"field must be Q or F<p>, got {text!r}")


def _load_model(path: str):
    obj = _load_json(path)
    try:
        return model_from_json(obj)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: invalid model ({exc})") from None


def _load_element(path: str, model):
    obj = _load_json(path)
    coords = obj.get("coords") if isinstance(obj, dict) else None
    if not isinstance(coords, list) or len(coords) != model.dim:
        raise InputError(f"{path}: expected {{\"coords\": [...]}} with {model.dim} entries")
    try:
        return [model.field.parse(c) if isinstance(c, str) else model.field(c) for c in coords]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: bad coordinate ({exc})") from None


def _load_matrix(path: str, F: Field) -> Matrix:
    obj = _load_json(path)
    rows = obj.get("matrix") if isinstance(obj, dict) else obj
    try:
        return Matrix.from_json(F, rows)
    except (ValueError, TypeError, ZeroDivisionError, AttributeError) as exc:
        raise InputError(f"{path}: bad matrix ({exc})") from None


def _poly_json(p) -> dict:
    return {",".join(map(str, e)): str(c) for e, c in sorted(p.terms.items())}


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------


def cmd_build(args) -> int:
    F = _parse_field(args.field)
    blocks = None
    if args.blocks:
        try:
            blocks = [int(b) for b in args.blocks.split(",")]
        except ValueError:
            raise InputError(f"--blocks must be comma separated integers, got {args.blocks!r}") from None
    try:
        model = build_model(args.family, n=args.n, p=args.p, m=args.m, blocks=blocks, field=F)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    obj = model_to_json(model)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(obj, fh, indent=1)
        print(f"wrote {model.family} (dim {model.dim}) to {args.out}", file=sys.stderr)
    else:
        _emit(obj)
    return 0


def cmd_validate(args) -> int:
    report = validate_model(_load_model(args.model)).to_json()
    _emit(report)
    return 0 if report["status"] == "pass" else 1


def cmd_positivity(args) -> int:
    obj = _load_json(args.weights)
    try:
        weights = [tuple(int(x) for x in w) for w in obj["weights"]]
        rank = obj.get("rank")
        ans = find_positive_cocharacter(weights, rank=rank)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.weights}: expected {{\"rank\": r, \"weights\": [[...], ...]}} ({exc})") from None
    feasible = isinstance(ans, Cocharacter)
    out = dict(ans.to_json())
    ok = verify_certificate(weights, ans)
    out["verified"] = ok
    if args.oracle:
        fm = fourier_motzkin_feasible(weights)
        out["oracle"] = {"method": "fourier-motzkin", "feasible": fm, "agrees": fm == feasible}
        ok = ok and fm == feasible
    _emit(out)
    return 0 if ok else 1


def cmd_invariants(args) -> int:
    model = _load_model(args.model)
    if args.sg_dim is not None:
        kind = "functions-on-g-dual" if args.dual else "functions-on-g"
        try:
            space = invariant_space_dimension(model, kind, args.sg_dim)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        _emit({"kind": kind, "degree": space.degree, "dimension": space.dimension,
               "basis": [_poly_json(p) for p in space.basis]})
        return 0
    try:
        fam = invariant_family(model)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = {"degrees": list(fam.degrees), "generators": [_poly_json(F) for F in fam.generators]}
    if args.restrict:
        out["restricted"] = [_poly_json(restrict_to_torus(model, F)) for F in fam.generators]
    if args.eval:
        X = _load_element(args.eval, model)
        out["values"] = [str(v) for v in fam.evaluate(X)]
    _emit(out)
    return 0


def cmd_jordan(args) -> int:
    model = _load_model(args.model)
    X = _load_element(args.element, model)
    jp = jordan_chevalley(model, X)
    _emit({"semisimple": [str(v) for v in jp.semisimple_part], "nilpotent": [str(v) for v in jp.nilpotent_part]})
    return 0


def cmd_bruhat(args) -> int:
    model = _load_model(args.model)
    if args.census:
        try:
            census = bruhat_cell_census(model)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        _emit({"cells": dict(sorted(census.items(), key=lambda kv: (len(kv[0]), kv[0]))),
               "order": sum(census.values())})
        return 0
    if not args.matrix:
        raise InputError("bruhat needs --census or --matrix")
    G = _load_matrix(args.matrix, model.field)
    try:
        f = bruhat_factor_group_element(model, G)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit({"weyl": f.label, "permutation": list(f.weyl), "length": f.length,
           "unipotent": f.unipotent_part.to_json(), "weyl_matrix": f.weyl_matrix.to_json(),
           "borel": f.borel_part.to_json()})
    return 0 if f.recompose() == G else 1


def cmd_steinberg(args) -> int:
    model = _load_model(args.model)
    X = _load_element(args.element, model)
    val = steinberg_map(model, X)
    _emit({"chi": val.to_json(), "zero": val.is_zero()})
    return 0


def cmd_nilcone(args) -> int:
    model = _load_model(args.model)
    X = _load_element(args.element, model)
    member = nilcone_membership(model, X)
    nilpotent = is_nilpotent_element(model, X)
    _emit({"in_nilpotent_cone": member, "nilpotent_in_rep": nilpotent})
    return 0 if member == nilpotent else 1


def cmd_borel_census(args) -> int:
    try:
        F = GF(args.q)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    x = _load_matrix(args.x, F) if args.x else Matrix.zeros(F, args.n)
    rng = SplitMix64(args.seed).spawn("borel-census")
    try:
        res = borel_census(args.n, args.q, x, rng, samples=args.samples)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(res.to_json())
    return 0 if res.count == res.lifted_count and res.correspondence_failures == 0 else 1


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    records = run_suite(args.suite, args.seed, progress=lambda s: print(s, file=sys.stderr))
    passed = all(r.status == "pass" for r in records)
    _emit({
        "suite": args.suite,
        "seed": args.seed,
        "status": "pass" if passed else "fail",
        "elapsed": round(time.perf_counter() - t0, 3),
        "checks": [r.to_json() for r in records],
    })
    return 0 if passed else 1


# ---------------------------------------------------------------------------


def _default_seed() -> int:
    env = os.environ.get("SEMIRED_SEED")
    try:
        return int(env) if env else 0
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="semired", description="Exact computations with semi-reductive Lie algebras.")
    ap.add_argument("--seed", type=int, default=_default_seed(), help="PRNG seed (default: $SEMIRED_SEED or 0)")
    # --seed is accepted after the subcommand too; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[common], **kw)

    p = sub.add_parser("build", help="construct a model and write it as JSON")
    p.add_argument("--family", required=True, choices=["enhanced-gl", "witt-nonneg", "parabolic-gl"])
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int, help="prime for witt-nonneg")
    p.add_argument("--m", type=int, help="size of the ambient gl(m) for parabolic-gl")
    p.add_argument("--blocks", help="Levi block sizes, e.g. 2,1")
    p.add_argument("--field", default="Q", help="Q or F<p> (default Q)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("validate", help="check the structural invariants of a model")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("positivity", help="find chi with <a, chi> > 0 for all weights, or a certificate")
    p.add_argument("--weights", required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check with Fourier-Motzkin elimination")
    p.set_defaults(func=cmd_positivity)

    p = sub.add_parser("invariants", help="invariant generators F_i and related data")
    p.add_argument("--model", required=True)
    p.add_argument("--eval", metavar="ELEMENT")
    p.add_argument("--restrict", action="store_true", help="also print the restrictions to the torus")
    p.add_argument("--sg-dim", type=int, metavar="D", help="dimension of degree-D invariants instead")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--dual", action="store_true", help="with --sg-dim: invariants in S(g)")
    g.add_argument("--adjoint", action="store_true", help="with --sg-dim: polynomial functions on g (default)")
    p.set_defaults(func=cmd_invariants)

    for name, func, text in (("jordan", cmd_jordan, "Jordan-Chevalley decomposition of an element"),
                             ("steinberg", cmd_steinberg, "value of the Steinberg map"),
                             ("nilcone", cmd_nilcone, "nilpotent cone membership")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--model", required=True)
        p.add_argument("--element", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("bruhat", help="Bruhat factorization or cell census")
    p.add_argument("--model", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--census", action="store_true")
    g.add_argument("--matrix", help="group element in the faithful representation")
    p.set_defaults(func=cmd_bruhat)

    p = sub.add_parser("borel-census", help="count Borel subalgebras containing a nilpotent x")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x", help="JSON matrix (default: zero)")
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_borel_census)

    p = sub.add_parser("verify", help="run acceptance suites")
    p.add_argument("--suite", default="all", choices=list(SUITES))
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"semired {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"semired {args.command}: failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
