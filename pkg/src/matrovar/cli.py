"""Command line front end: parse arguments, call the library, print a report.

Exit codes: 0 success, 1 mathematical or precondition failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import chains, config, gca, realize
from .errors import InputError, MatrovarError, PreconditionError
from .exactlinalg import DEFAULT_BOUND, DEFAULT_RETRIES
from .fixtures import FIXTURES, fixture_names
from .serialize import (dumps, load_matroid, parse_fraction, read_json, realization_from_json,
                        realization_to_json, vector_to_json)

COMMANDS = ["validate", "report", "chain", "classify", "dim", "realize", "stable-realize", "liftmat",
            "liftdim", "certify", "gm", "check-realization", "lift-sample", "fixtures"]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matrovar", description="Exact invariants and realizations of matroids.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("matroid", nargs="?", help="matroid JSON file or fixture:NAME")
    p.add_argument("--realization", help="realization JSON file")
    p.add_argument("--q", help="lifting point as comma-separated rationals")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--mode", choices=[chains.NILPOTENT, chains.SOLVABLE], default=chains.NILPOTENT)
    p.add_argument("--bound-kind", choices=["thm25", "prop68"], default="prop68")
    p.add_argument("--timing", action="store_true", help="add elapsed seconds (breaks byte-identical output)")
    return p


def _q(args, M, vectors, rng):
    if args.q:
        return tuple(parse_fraction(x) for x in args.q.split(","))
    return realize.sample_outside(M, vectors, rng, args.bound, args.retries)


def _realization(args, M, rng):
    if args.realization:
        return realization_from_json(read_json(args.realization), M)
    return realize.any_realization(M, rng, args.bound, args.retries)


def _optional(fn, *a):
    try:
        return fn(*a)
    except MatrovarError:
        return None


def run_command(args) -> tuple:
    """Returns (pass flag, result payload, matroid name)."""
    rng = random.Random(args.seed)
    if args.command == "fixtures":
        return True, {n: {"note": FIXTURES[n]["note"], "ground_set": FIXTURES[n]["ground_set"],
                          "rank": FIXTURES[n]["rank"]} for n in fixture_names()}, None
    if not args.matroid:
        raise InputError(f"command {args.command!r} needs a matroid argument")
    M = load_matroid(args.matroid)
    name = M.name
    cmd = args.command

    if cmd == "validate":
        return True, {"ground_set": M.ground_size, "rank": M.rank, "circuits": len(M.circuits),
                      "paving": M.is_paving()}, name
    if cmd == "report":
        return True, config.config_report(M).to_json(), name
    if cmd == "chain":
        out = {"nilpotent": chains.nilpotent_chain(M).to_json(),
               "solvable": chains.solvable_chain(M).to_json()}
        if M.is_paving():
            seq = chains.deletion_sequence(M, args.mode)
            out["deletion_sequence"] = {"mode": args.mode,
                                        "sequence": None if seq is None else [list(s) for s in seq]}
        return True, out, name
    if cmd == "classify":
        nil, sol = chains.is_nilpotent(M), chains.is_solvable(M)
        forest = _optional(chains.is_forest, M)
        strong = _optional(chains.is_strong_nilpotent, M)
        special = chains.is_special(M) if sol else None
        return True, {
            "nilpotent": nil, "solvable": sol,
            "forest": None if forest is None else forest.forest,
            "weak_nilpotent": chains.is_weak_nilpotent(M),
            "strong_nilpotent": None if strong is None else strong.strong,
            "special": None if special is None else special.special,
            "paving": M.is_paving(),
        }, name
    if cmd == "dim":
        cert = chains.lifting_dimension_invariant(M)
        return True, {"dim": cert.dim_value, "constants": cert.constants,
                      "terminal_rank": cert.terminal_rank,
                      "chain_prefix": [list(s) for s in cert.chain_prefix]}, name
    if cmd == "realize":
        r = realize.realize_nilpotent(M, rng, args.bound, args.retries)
        return r.verified, {"realization": realization_to_json(r), "verified": r.verified}, name
    if cmd == "stable-realize":
        r, rep = realize.realize_stable_special(M, rng, args.bound, args.retries)
        return rep.stable, {"realization": realization_to_json(r), "verified": r.verified,
                            "stable": rep.to_json()}, name
    if cmd == "liftmat":
        return True, realize.liftability_matrix(M).to_json(), name
    if cmd == "liftdim":
        r = _realization(args, M, rng)
        q = _q(args, M, r, rng)
        d = realize.lifting_dimension_at(M, r, q)
        out = {"dim_q": d, "q": vector_to_json(q)}
        ok = True
        if chains.is_weak_nilpotent(M):
            inv = chains.lifting_dimension_invariant(M).dim_value
            out["invariant"] = inv
            ok = d == inv
        return ok, out, name
    if cmd == "certify":
        r = _realization(args, M, rng)
        q = _q(args, M, r, rng)
        cert = realize.minor_rank_certificate(M, r, q, args.bound_kind, rng)
        cert["q"] = vector_to_json(q)
        return cert["pass"], cert, name
    if cmd == "gm":
        return True, gca.generate_gm(M, args.depth).to_json(), name
    if cmd == "check-realization":
        if not args.realization:
            raise InputError("check-realization needs --realization")
        r = realization_from_json(read_json(args.realization), M)
        real = realize.is_realization(M, r)
        out = {"is_realization": real.ok, "discrepancy": real.witness,
               "in_circuit_variety": realize.in_circuit_variety(M, r).ok}
        if real and chains.is_solvable(M):
            out["stable"] = realize.stable_check(M, r).to_json()
        return real.ok, out, name
    if cmd == "lift-sample":
        if args.realization:
            r = realization_from_json(read_json(args.realization), M)
            vs = r.vectors
            if not args.q:
                raise InputError("lift-sample with --realization also needs --q")
            q = _q(args, M, r, rng)
        else:
            vs, q = realize.sample_degenerate_collection(M, rng, args.bound, args.retries)
        res = realize.sample_lift(M, vs, q, rng, args.bound)
        return res is not None, {"q": vector_to_json(q),
                                 "collection": {str(e): vector_to_json(v) for e, v in sorted(vs.items())},
                                 "lift": None if res is None else res.to_json()}, name
    raise InputError(f"unknown command {cmd!r}")  # argparse already restricts choices


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            items = v.values() if isinstance(v, dict) else v
            if isinstance(v, (dict, list)) and v and (isinstance(v, dict) or any(isinstance(x, dict) for x in items)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {_flat(x)}" if not isinstance(x, dict) else _text(x, indent + 1)
                         for x in obj)
    return pad + _flat(obj)


def _flat(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in sorted(v.items())) + "}"
    return "null" if v is None else str(v).lower() if isinstance(v, bool) else str(v)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    report = {"command": args.command, "seed": args.seed, "matroid": None}
    try:
        ok, result, name = run_command(args)
        report.update({"matroid": name, "pass": bool(ok), "result": result})
        code = 0 if ok else 1
    except InputError as e:
        report.update({"pass": False, "error": {"type": type(e).__name__, "message": str(e)}})
        code = 2
    except MatrovarError as e:
        err = {"type": type(e).__name__, "message": str(e)}
        if isinstance(e, PreconditionError) and e.witness is not None:
            err["witness"] = e.witness
        report.update({"pass": False, "error": err})
        code = 1
    if args.timing:
        report["elapsed"] = round(time.perf_counter() - t0, 6)
    if args.format == "json":
        print(dumps(report))
    else:
        print(_text(report))
    if "error" in report:
        print(f"matrovar: {report['error']['type']}: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
