"""Command-line surface.  This is the only module with side effects
(reading form files, appending sweep records, printing).

Commands: rho, classify, jactest, star, perp, apolar-check, waring, sweep.
Shared flags --json / --seed / --prime / --trials accept environment
defaults STARPOLAR_SEED / STARPOLAR_PRIME / STARPOLAR_TRIALS; explicit
flags win over the environment.  All scalars serialize as decimal strings
(rationals as "p/q") so nothing is lost to binary floating point.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

from . import __version__
from .apolar import (catalecticant, is_apolar_ideal_contained, perp_piece,
                     solve_waring)
from .existence import classify, jacobian_rank_test, rho
from .field import (DEFAULT_PRIME, DEFAULT_SEED, is_prime, scalar_from_str,
                    scalar_to_str)
from .poly import DUAL, PRIMAL, Form, format_form, parse_form
from .starconfig import (GeneralPositionError, HyperplaneSet,
                         build_star_configuration, hilbert_function,
                         star_ideal_product_generators)


class CliError(Exception):
    """User-facing error: message to stderr, nonzero exit."""


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError as exc:
        raise CliError(f"environment variable {name}={raw!r} is not an integer") from exc


def _common_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--json", action="store_true",
                        help="emit a machine-readable JSON document")
    parser.add_argument("--seed", type=int, default=None,
                        help=f"RNG seed (default {DEFAULT_SEED}, env STARPOLAR_SEED)")
    parser.add_argument("--prime", type=int, default=None,
                        help=f"prime modulus (default {DEFAULT_PRIME}, env STARPOLAR_PRIME)")
    parser.add_argument("--trials", type=int, default=None,
                        help="random trials per rank test (default 3, env STARPOLAR_TRIALS)")


def _triple_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--d", type=int, required=True, help="form degree")
    parser.add_argument("--r", type=int, required=True, help="number of hyperplanes")
    parser.add_argument("--n", type=int, required=True, help="projective dimension")


def _resolved(args):
    seed = args.seed if args.seed is not None else _env_int("STARPOLAR_SEED", DEFAULT_SEED)
    prime = args.prime if args.prime is not None else _env_int("STARPOLAR_PRIME", DEFAULT_PRIME)
    trials = args.trials if args.trials is not None else _env_int("STARPOLAR_TRIALS", 3)
    if not is_prime(prime):
        raise CliError(f"--prime {prime} is not prime")
    if trials < 1:
        raise CliError("--trials must be at least 1")
    return seed, prime, trials


def _emit(args, payload: dict, human_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _check_triple(d, r, n):
    if n < 1 or d < 1 or r < n:
        raise CliError(f"invalid triple: need d >= 1, n >= 1, r >= n "
                       f"(got d={d}, r={r}, n={n})")


# ---------------------------------------------------------------------------
# form and file input


def _parse_cli_form(text: str, ring: str | None = None, num_vars: int | None = None) -> Form:
    try:
        return parse_form(text, num_vars=num_vars, ring=ring)
    except ValueError as exc:
        raise CliError(f"cannot parse form {text!r}: {exc}") from exc


def load_forms_file(path: str, ring: str, num_vars: int | None = None):
    """Forms from a file: one expression per line, or a JSON array of
    coefficient vectors with scalars as strings ("p/q" for rationals)."""
    try:
        text = open(path).read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(f"{path}: invalid JSON: {exc}") from exc
        forms = []
        for vec in data:
            coeffs = [scalar_from_str(str(s)) for s in vec]
            forms.append(Form.linear(ring, coeffs))
        return forms
    forms = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        forms.append(_parse_cli_form(line, ring=ring, num_vars=num_vars))
    if not forms:
        raise CliError(f"{path}: no forms found")
    return forms


# ---------------------------------------------------------------------------
# commands


def _cmd_rho(args) -> int:
    _check_triple(args.d, args.r, args.n)
    value = rho(args.d, args.r, args.n)
    note = ("necessary condition fails: no apolar configuration for the "
            "generic form" if value < 0 else "necessary condition holds")
    _emit(args, {"d": args.d, "r": args.r, "n": args.n, "rho": value, "note": note},
          [f"rho({args.d},{args.r},{args.n}) = {value}", note])
    return 0


def _cmd_classify(args) -> int:
    _check_triple(args.d, args.r, args.n)
    v = classify(args.d, args.r, args.n)
    payload = {"d": args.d, "r": args.r, "n": args.n, **v.to_json_dict()}
    _emit(args, payload,
          [f"({args.d},{args.r},{args.n}): {v.verdict.value} [{v.rule}]"
           + (f" -- {v.note}" if v.note else "")])
    return 0


def _cmd_jactest(args) -> int:
    _check_triple(args.d, args.r, args.n)
    seed, prime, trials = _resolved(args)
    report = jacobian_rank_test(args.d, args.r, args.n,
                                prime=prime, seed=seed, trials=trials)
    payload = report.to_json_dict()
    _emit(args, payload,
          [f"({args.d},{args.r},{args.n}): {report.verdict}, "
           f"rank {report.rank} of target {report.target} "
           f"(m={report.m}, prime={report.prime}, seed={report.seed}, "
           f"trials={report.trials}, {report.elapsed_ms} ms)"])
    return 0


def _cmd_star(args) -> int:
    declared = args.n + 1 if args.n is not None else None
    forms = load_forms_file(args.forms, ring=DUAL, num_vars=declared)
    nv = declared if declared is not None else max(f.num_vars for f in forms)
    rows = []
    for f in forms:
        vec = [0] * nv
        for mono, c in f.terms.items():
            vec[mono.index(1)] = c
        rows.append(vec)
    try:
        hset = HyperplaneSet(rows)
    except GeneralPositionError as exc:
        raise CliError(str(exc)) from exc
    config = build_star_configuration(hset)
    table = hilbert_function(config.points, hset.r)
    payload = {
        "r": hset.r, "n": hset.n,
        "points": [{"tag": list(pt.tag),
                    "coords": [scalar_to_str(c) for c in pt.coords]}
                   for pt in config.points],
        "ideal_generators": [format_form(g) for g in config.ideal_generators],
        "hilbert_function": list(table.values),
    }
    lines = [f"star configuration of {hset.r} hyperplanes in P^{hset.n}: "
             f"{len(config.points)} points"]
    for pt in config.points:
        coords = ":".join(scalar_to_str(c) for c in pt.coords)
        lines.append(f"  {pt.tag}: [{coords}]")
    lines.append(f"ideal generators (degree {hset.r - hset.n + 1}):")
    lines.extend(f"  {format_form(g)}" for g in config.ideal_generators)
    lines.append("Hilbert function: " + ", ".join(str(v) for v in table.values))
    _emit(args, payload, lines)
    return 0


def _cmd_perp(args) -> int:
    f = _parse_cli_form(args.form, ring=PRIMAL)
    if args.degree < 0:
        raise CliError("--degree must be nonnegative")
    piece = perp_piece(f, args.degree)
    payload = {
        "form": format_form(f), "degree": args.degree,
        "dimension": piece.dimension,
        "basis": [format_form(b) for b in piece.basis],
    }
    if args.matrix and args.degree <= f.degree:
        payload["catalecticant"] = catalecticant(f, args.degree).to_json_dict()
    lines = [f"annihilator of {format_form(f)} in degree {args.degree}: "
             f"dimension {piece.dimension}"]
    lines.extend(f"  {format_form(b)}" for b in piece.basis)
    _emit(args, payload, lines)
    return 0


def _cmd_apolar_check(args) -> int:
    f = _parse_cli_form(args.form, ring=PRIMAL)
    forms = load_forms_file(args.forms, ring=DUAL, num_vars=f.num_vars)
    star_mode = all(g.degree == 1 for g in forms)
    if star_mode:
        try:
            hset = HyperplaneSet.from_forms(forms)
        except (GeneralPositionError, ValueError) as exc:
            raise CliError(str(exc)) from exc
        generators = star_ideal_product_generators(hset)
    else:
        generators = forms
    check = is_apolar_ideal_contained(generators, f)
    payload = {
        "form": format_form(f),
        "mode": "star-configuration" if star_mode else "direct-generators",
        "contained": check.contained,
    }
    if not check.contained:
        payload["failing_generator"] = format_form(check.failing_generator)
        payload["residual"] = format_form(check.residual)
        lines = [f"NOT apolar: generator {format_form(check.failing_generator)} "
                 f"leaves residual {format_form(check.residual)}"]
    else:
        lines = ["apolar: every generator annihilates the form"]
    _emit(args, payload, lines)
    return 0


def _cmd_waring(args) -> int:
    f = _parse_cli_form(args.form, ring=PRIMAL)
    points = load_forms_file(args.forms, ring=PRIMAL, num_vars=f.num_vars)
    try:
        deco = solve_waring(points, f)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if deco is None:
        _emit(args, {"form": format_form(f), "feasible": False},
              ["infeasible: the form is outside the span of the supplied powers"])
        return 0
    residual = deco.residual(f)
    payload = {"form": format_form(f), "feasible": True,
               "residual_zero": residual.is_zero(), **deco.to_json_dict()}
    lines = [f"decomposition of {format_form(f)} as a weighted sum of "
             f"{len(deco.linear_forms)} powers (degree {deco.degree}):"]
    for a, lf in zip(deco.coefficients, deco.linear_forms):
        lines.append(f"  {scalar_to_str(a)} * ({format_form(lf)})^{deco.degree}")
    lines.append(f"residual: {format_form(residual)}")
    _emit(args, payload, lines)
    return 0


def _cmd_sweep(args) -> int:
    if args.mode != "conjecture":
        raise CliError(f"unknown sweep mode {args.mode!r}")
    if args.n != 2:
        raise CliError("the conjecture sweep is a plane-curve family: --n 2")
    if args.dmin < 3 or args.dmax < args.dmin:
        raise CliError("need 3 <= dmin <= dmax")
    seed, prime, trials = _resolved(args)
    done = set()
    if os.path.exists(args.out) and not args.force:
        with open(args.out) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    rep = rec.get("report") or {}
                    done.add((rec.get("d"), rec.get("r"), rec.get("n"),
                              rep.get("prime"), rep.get("seed")))
                except (json.JSONDecodeError, AttributeError):
                    continue  # damaged line; remaining lines stay valid
    records = []
    try:
        out = open(args.out, "a")
    except OSError as exc:
        raise CliError(f"cannot open {args.out} for append: {exc}") from exc
    with out:
        for d in range(args.dmin, args.dmax + 1):
            cell_seed = seed + d  # each cell owns its stream; stable on resume
            key = (d, d + 1, 2, prime, cell_seed)
            if key in done:
                records.append({"d": d, "skipped": True})
                continue
            report = jacobian_rank_test(d, d + 1, 2, prime=prime,
                                        seed=cell_seed, trials=trials)
            record = {
                "d": d, "r": d + 1, "n": 2,
                "source": "jactest",
                "report": report.to_json_dict(),
                "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
                "tool_version": __version__,
            }
            out.write(json.dumps(record, sort_keys=True) + "\n")
            out.flush()
            records.append({"d": d, "skipped": False,
                            "verdict": report.verdict, "rank": report.rank})
    payload = {"out": args.out, "cells": records}
    lines = []
    for rec in records:
        if rec.get("skipped"):
            lines.append(f"d={rec['d']}: already recorded, skipped")
        else:
            lines.append(f"d={rec['d']}: {rec['verdict']} (rank {rec['rank']})")
    _emit(args, payload, lines)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starpolar",
        description="exact star-configuration apolarity toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rho", help="parameter-count necessary condition")
    _triple_flags(p)
    _common_flags(p)
    p.set_defaults(func=_cmd_rho)

    p = sub.add_parser("classify", help="closed-form existence verdict")
    _triple_flags(p)
    _common_flags(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("jactest", help="randomized Jacobian rank test")
    _triple_flags(p)
    _common_flags(p)
    p.set_defaults(func=_cmd_jactest)

    p = sub.add_parser("star", help="points, ideal generators, Hilbert function")
    p.add_argument("--forms", required=True, help="file of dual linear forms")
    p.add_argument("--n", type=int, default=None,
                   help="ambient projective dimension (default: inferred from "
                        "the largest variable index)")
    _common_flags(p)
    p.set_defaults(func=_cmd_star)

    p = sub.add_parser("perp", help="graded piece of the annihilator ideal")
    p.add_argument("--form", required=True, help="primal form expression")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--matrix", action="store_true",
                   help="include the catalecticant matrix in JSON output")
    _common_flags(p)
    p.set_defaults(func=_cmd_perp)

    p = sub.add_parser("apolar-check",
                       help="do the given dual forms define an apolar set?")
    p.add_argument("--form", required=True, help="primal form expression")
    p.add_argument("--forms", required=True,
                   help="file of dual forms: all-linear input is treated as "
                        "star-configuration hyperplanes, otherwise as ideal "
                        "generators checked directly")
    _common_flags(p)
    p.set_defaults(func=_cmd_apolar_check)

    p = sub.add_parser("waring", help="solve for power-sum weights exactly")
    p.add_argument("--form", required=True, help="primal form expression")
    p.add_argument("--forms", required=True, help="file of primal linear forms")
    _common_flags(p)
    p.set_defaults(func=_cmd_waring)

    p = sub.add_parser("sweep", help="run the conjecture family and persist "
                                     "JSON-lines records")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--dmin", type=int, default=3)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--mode", default="conjecture", choices=["conjecture"])
    p.add_argument("--out", required=True, help="JSON-lines output path")
    p.add_argument("--force", action="store_true",
                   help="re-run cells already present in the output file")
    _common_flags(p)
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
