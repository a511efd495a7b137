"""Command-line front end with stable exit codes and deterministic JSON.

Exit codes: 0 = pass, 1 = property violation or counterexample,
2 = invalid input, 3 = hypothesis not met.

Algebras and seminorms are given either as JSON files or as builtin names
(see `squareprop corpus`).  JSON output is a frozen contract: identical
invocations with identical seeds are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import corpus, pipeline
from .algebra import AlgebraError, FiniteDimRealAlgebra, make_algebra
from .characters import find_characters, nonexistence_explanation
from .seminorm import SeminormError
from .spectral import gelfand_radius, spectrum

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_BAD_INPUT = 2
EXIT_HYPOTHESIS = 3

_SEMINORM_KINDS = ("character_sup", "spectral_radius", "coordinate_max",
                   "coordinate_sum", "operator_norm", "component_sup")


class InputError(Exception):
    """Malformed user input; the message names the offending field."""


def load_algebra(spec: str) -> FiniteDimRealAlgebra:
    """Path to an algebra JSON document, or a builtin name."""
    if not os.path.exists(spec):
        try:
            return corpus.builtin(spec)
        except KeyError as exc:
            raise InputError(str(exc)) from None
    try:
        with open(spec, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"algebra file {spec}: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"algebra file {spec}: top level must be an object")
    try:
        dim = int(doc["dim"])
    except (KeyError, TypeError, ValueError):
        raise InputError(f"algebra file {spec}: field 'dim' missing or "
                         "not an integer") from None
    basis = doc.get("basis")
    if not isinstance(basis, list) or len(basis) != dim:
        raise InputError(f"algebra file {spec}: field 'basis' must list "
                         f"{dim} labels")
    raw = doc.get("table")
    if not isinstance(raw, list):
        raise InputError(f"algebra file {spec}: field 'table' must be an "
                         "array of [i, j, k, value] rows")
    table = {}
    for row in raw:
        if not (isinstance(row, list) and len(row) == 4):
            raise InputError(f"algebra file {spec}: table row {row!r} is not "
                             "[i, j, k, value]")
        i, j, k, v = row
        table[(int(i), int(j), int(k))] = float(v)
    unit = doc.get("unit")
    try:
        return make_algebra(dim, basis, table, unit=unit,
                            name=doc.get("name", os.path.basename(spec)))
    except AlgebraError as exc:
        raise InputError(f"algebra file {spec}: {exc}") from None


def load_seminorm(spec: str, algebra: FiniteDimRealAlgebra):
    """Path to a seminorm JSON document, or a kind shorthand like
    'spectral_radius' / 'component_sup:0,1'."""
    if os.path.exists(spec):
        try:
            with open(spec, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"seminorm file {spec}: {exc}") from None
        if not isinstance(doc, dict) or "type" not in doc:
            raise InputError(f"seminorm file {spec}: field 'type' is required")
        kind = doc["type"]
        args = {k: v for k, v in doc.items() if k != "type"}
    else:
        kind, _, rest = spec.partition(":")
        args = {}
        if kind == "component_sup" and rest:
            args["subset"] = [int(v) for v in rest.split(",")]
        elif rest:
            args["weights"] = [float(v) for v in rest.split(",")]
    if kind not in _SEMINORM_KINDS:
        raise InputError(f"seminorm type {kind!r} unknown; expected one of "
                         f"{', '.join(_SEMINORM_KINDS)}")
    try:
        p = corpus.make_seminorm(kind, args, algebra)
        p.check_payload(algebra)
    except (KeyError, ValueError, SeminormError) as exc:
        raise InputError(f"seminorm {spec}: {exc}") from None
    return p


def parse_element(algebra, text: str) -> np.ndarray:
    try:
        coords = np.array([float(v) for v in text.split()])
    except ValueError:
        raise InputError(f"element {text!r}: coordinates must be reals") from None
    if coords.shape != (algebra.dim,):
        raise InputError(f"element has {coords.size} coordinates, "
                         f"algebra dim is {algebra.dim}")
    return coords


def _emit(payload: dict, fmt: str, text_lines):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _config(args) -> pipeline.PipelineConfig:
    return pipeline.PipelineConfig(
        sample_count=args.samples, seed=args.seed, tol=args.tol,
        restarts=args.restarts)


def cmd_verify(args) -> int:
    algebra = load_algebra(args.algebra)
    p = load_seminorm(args.seminorm, algebra)
    rep = pipeline.verify_theorem(algebra, p, _config(args))
    payload = rep.to_dict()
    lines = [f"verify {algebra.name} / {rep.seminorm_kind}"]
    for key, val in sorted(payload.items()):
        if key not in ("config", "tolerances"):
            lines.append(f"  {key}: {val}")
    _emit(payload, args.format, lines)
    if rep.verdict == "pass":
        return EXIT_PASS
    if rep.verdict == "hypothesis_not_met":
        return EXIT_HYPOTHESIS
    return EXIT_VIOLATION


def cmd_spectrum(args) -> int:
    algebra = load_algebra(args.algebra)
    a = algebra.element(parse_element(algebra, args.element))
    res = spectrum(a)
    payload = {
        "algebra": algebra.name,
        "points": [[z.real, z.imag] for z in res.points],
        "radius": res.radius,
    }
    lines = [f"sp(a) in {algebra.name}:"] + [
        f"  {z.real:+.12g} {z.imag:+.12g}i" for z in res.points
    ] + [f"  radius {res.radius:.12g}"]
    _emit(payload, args.format, lines)
    return EXIT_PASS


def cmd_radius(args) -> int:
    algebra = load_algebra(args.algebra)
    a = algebra.element(parse_element(algebra, args.element))
    res = spectrum(a)
    gr, delta = gelfand_radius(a, return_delta=True)
    payload = {
        "algebra": algebra.name,
        "gelfand_radius": gr,
        "last_delta": delta,
        "spectral_radius": res.radius,
    }
    _emit(payload, args.format, [
        f"gelfand radius  {gr:.12g} (last delta {delta:.3g})",
        f"spectral radius {res.radius:.12g}",
    ])
    return EXIT_PASS


def cmd_characters(args) -> int:
    algebra = load_algebra(args.algebra)
    chars = find_characters(algebra, restarts=args.restarts, seed=args.seed)
    payload = {
        "algebra": algebra.name,
        "restarts": args.restarts,
        "seed": args.seed,
        "count": len(chars),
        "characters": [
            {"images": np.round(c.images, 12).tolist(), "residual": c.residual}
            for c in chars
        ],
    }
    lines = [f"{len(chars)} character(s) found on {algebra.name} "
             f"({args.restarts} restarts, seed {args.seed})"]
    for c in chars:
        lines.append(f"  residual {c.residual:.3e}  images "
                     + " | ".join(str(np.round(row, 6).tolist())
                                  for row in c.images))
    if not chars:
        note = nonexistence_explanation(algebra)
        if note:
            payload["note"] = note
            lines.append(f"  note: {note}")
    _emit(payload, args.format, lines)
    return EXIT_PASS


def cmd_fuzz(args) -> int:
    summary = pipeline.fuzz(_config(args), iterations=args.iterations)
    payload = summary.to_dict()
    _emit(payload, args.format, [
        f"fuzz: {summary.iterations} instances, seed {summary.seed}",
        f"  hypothesis met and checked: {summary.checked}",
        f"  square-property rejections: {summary.square_rejections}",
        f"  counterexamples: {len(summary.counterexamples)}",
    ])
    return EXIT_VIOLATION if summary.counterexamples else EXIT_PASS


def cmd_corpus(args) -> int:
    payload = {
        "algebras": corpus.builtin_names(),
        "pairs": [
            {"name": c.name, "algebra": c.algebra_name,
             "seminorm": c.seminorm_kind, "args": c.seminorm_args,
             "expected": c.expected, "exercises": c.exercises}
            for c in corpus.MANIFEST
        ],
    }
    lines = ["builtin algebras: " + ", ".join(corpus.builtin_names()), "pairs:"]
    for c in corpus.MANIFEST:
        lines.append(f"  {c.name}: {c.algebra_name} + {c.seminorm_kind} "
                     f"-> {c.expected} ({c.exercises})")
    _emit(payload, args.format, lines)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squareprop",
        description="Numerical verification toolkit for square-property "
                    "seminorms on finite-dimensional real algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, element=False, seminorm=False, algebra=True):
        if algebra:
            sp.add_argument("--algebra", required=True,
                            help="algebra JSON file or builtin name")
        if seminorm:
            sp.add_argument("--seminorm", required=True,
                            help="seminorm JSON file or kind shorthand")
        if element:
            sp.add_argument("--element", required=True,
                            help="whitespace-separated coordinates")
        sp.add_argument("--samples", type=int, default=2000)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--restarts", type=int, default=50)
        sp.add_argument("--format", choices=("text", "json"), default="text")

    common(sub.add_parser("verify", help="run the full proof-chain pipeline"),
           seminorm=True)
    common(sub.add_parser("spectrum", help="spectrum of one element"),
           element=True)
    common(sub.add_parser("radius", help="Gelfand and spectral radius"),
           element=True)
    common(sub.add_parser("characters", help="search quaternion characters"))
    fz = sub.add_parser("fuzz", help="randomized counterexample search")
    fz.add_argument("--iterations", type=int, default=10000)
    common(fz, algebra=False)
    common(sub.add_parser("corpus", help="list builtin algebras and pairs"),
           algebra=False)
    return parser


_COMMANDS = {
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "radius": cmd_radius,
    "characters": cmd_characters,
    "fuzz": cmd_fuzz,
    "corpus": cmd_corpus,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
