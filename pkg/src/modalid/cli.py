"""Command-line interface.

Subcommands mirror the three-stage workflow: ``simulate`` renders a
backbone for given coefficients, ``target`` synthesizes or imports the
ideal configuration, ``identify`` runs the evolutionary search and writes
the full report tree, and ``eval`` scores one candidate against a target.

Exit codes: 0 success, 2 validation/schema error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
import warnings
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .backbone import (
    MODE_CHORD,
    MODES,
    DEFAULT_SAMPLE_COUNT,
    division_indices,
    integrate_backbone,
    tcp,
)
from .basis import CoefficientSet
from .errors import ParseError, SchemaError, ValidationError
from .evolution import EAConfig, best_individual, run
from .objectives import evaluate, mse_shape, mse_tcp
from .report import write_report
from .serialize import dumps_json, write_text
from .targets import (
    SOURCE_IMPORTED,
    TargetConfiguration,
    UNIT_RENORM_TOL,
    UNIT_TOL,
    load_target,
    save_target,
    synth_target,
)

GEOMETRY_FILE_VERSION = 1

CONFIG_FIELDS = (
    "generation_size",
    "generation_count",
    "crossover_prob",
    "mutation_prob",
    "bounds",
    "sbx_eta",
    "mutation_eta",
    "seed",
    "sample_count",
    "n_divisions",
)


def _sig(value: float) -> str:
    return format(float(value), ".17g")


def _parse_triplet(text: str, name: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValidationError(f"{name} must be three comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ValidationError(f"{name}: {exc}") from exc


def _parse_bounds(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValidationError(f"--bounds must be 'lo,hi', got {text!r}")
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError as exc:
        raise ValidationError(f"--bounds: {exc}") from exc
    return lo, hi


def _threads_from_env() -> int:
    raw = os.environ.get("MODALID_THREADS", "").strip()
    if not raw:
        return 0
    try:
        threads = int(raw)
    except ValueError as exc:
        raise ValidationError(f"MODALID_THREADS must be an integer, got {raw!r}") from exc
    if threads < 0:
        raise ValidationError(f"MODALID_THREADS must be >= 0, got {threads}")
    return threads


def _timestamp() -> str:
    # SOURCE_DATE_EPOCH makes the manifest (and therefore the whole output
    # tree) reproducible; without it the wall clock is recorded.
    raw = os.environ.get("SOURCE_DATE_EPOCH", "").strip()
    epoch = int(raw) if raw else int(time.time())
    return datetime.fromtimestamp(epoch, timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


# ---------------------------------------------------------------------------
# geometry files (simulate output / eval input)


def save_geometry(curve, coeffs: CoefficientSet, path) -> None:
    tip, tangent = tcp(curve)
    doc = {
        "version": GEOMETRY_FILE_VERSION,
        "mode": curve.mode,
        "L": curve.length,
        "scale": curve.scale,
        "sample_count": curve.sample_count,
        "cx": list(coeffs.cx),
        "cy": list(coeffs.cy),
        "s": [float(v) for v in curve.s],
        "points": [[float(v) for v in row] for row in curve.points],
        "frames": [[[float(v) for v in row] for row in rot] for rot in curve.rotations],
        "tip_point": [float(v) for v in tip],
        "tcp_vector": [float(v) for v in tangent],
    }
    write_text(path, dumps_json(doc))


def load_geometry(path) -> tuple[np.ndarray, np.ndarray]:
    """Points and TCP vector of a saved geometry file."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict) or doc.get("version") != GEOMETRY_FILE_VERSION:
        raise SchemaError(f"{path}: not a geometry file")
    for key in ("points", "tcp_vector"):
        if key not in doc:
            raise SchemaError(f"{path}: missing field {key!r}")
    points = np.asarray(doc["points"], dtype=float)
    if points.ndim != 2 or points.shape[1] != 3 or points.shape[0] < 2:
        raise SchemaError(f"{path}: points must be an Nx3 array with N >= 2")
    tangent = np.asarray(doc["tcp_vector"], dtype=float)
    if tangent.shape != (3,):
        raise SchemaError(f"{path}: tcp_vector must have 3 components")
    return points, tangent


# ---------------------------------------------------------------------------
# subcommands


def cmd_simulate(args) -> int:
    coeffs = CoefficientSet(
        cx=_parse_triplet(args.cx, "--cx"), cy=_parse_triplet(args.cy, "--cy")
    )
    curve = integrate_backbone(coeffs, args.length, args.scale, args.samples, args.mode)
    save_geometry(curve, coeffs, args.out)
    print(f"wrote {args.out}")
    return 0


def cmd_target_synth(args) -> int:
    coeffs = CoefficientSet(
        cx=_parse_triplet(args.cx, "--cx"), cy=_parse_triplet(args.cy, "--cy")
    )
    target = synth_target(
        coeffs,
        length=args.length,
        scale=args.scale,
        n=args.n_divisions,
        noise_sigma=args.noise_sigma,
        seed=args.seed,
        sample_count=args.samples,
    )
    save_target(target, args.out)
    print(f"wrote {args.out}")
    return 0


def _import_csv(path, n_divisions, length, scale) -> TargetConfiguration:
    if length is None or scale is None:
        raise ValidationError("CSV import needs --length and --scale")
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 3:
                raise SchemaError(f"{path}:{lineno}: expected 3 columns, got {len(row)}")
            try:
                rows.append([float(cell) for cell in row])
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from exc
    if len(rows) < 3:
        raise SchemaError(f"{path}: need at least 2 division points plus a tcp row")
    n = n_divisions if n_divisions is not None else len(rows) - 2
    if len(rows) != n + 2:
        raise SchemaError(
            f"{path}: n = {n} requires {n + 1} division rows plus one tcp row "
            f"({n + 2} total), got {len(rows)}"
        )
    tangent = np.array(rows[-1])
    norm = float(np.linalg.norm(tangent))
    if abs(norm - 1.0) > UNIT_RENORM_TOL:
        raise SchemaError(f"{path}: tcp row norm {norm!r} is not within 1e-6 of 1")
    if abs(norm - 1.0) > UNIT_TOL:
        warnings.warn(f"{path}: renormalizing tcp vector (norm was {norm!r})")
        tangent = tangent / norm
    return TargetConfiguration(
        division_points=np.array(rows[:-1]),
        tcp_vector=tangent,
        n=n,
        length=length,
        scale=scale,
        source=SOURCE_IMPORTED,
    )


def cmd_target_import(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        head = fh.read(64).lstrip()
    if head.startswith("{"):
        target = load_target(args.infile)
        if args.n_divisions is not None and target.n != args.n_divisions:
            raise SchemaError(
                f"{args.infile} has n = {target.n}, but --n-divisions = {args.n_divisions}"
            )
    else:
        target = _import_csv(args.infile, args.n_divisions, args.length, args.scale)
    save_target(target, args.out)
    print(f"wrote {args.out}")
    return 0


def cmd_eval(args) -> int:
    target = load_target(args.target)
    if args.geometry is not None:
        points, tangent = load_geometry(args.geometry)
        idx = division_indices(len(points), target.n)
        pair_mse1 = mse_shape(points[idx], target.division_points, target.n)
        pair_mse2 = mse_tcp(tangent, target.tcp_vector)
        print(f"{_sig(pair_mse1)} {_sig(pair_mse2)}")
        return 0
    if args.cx is None or args.cy is None:
        raise ValidationError("provide either --geometry or both --cx and --cy")
    coeffs = CoefficientSet(
        cx=_parse_triplet(args.cx, "--cx"), cy=_parse_triplet(args.cy, "--cy")
    )
    pair = evaluate(coeffs, target, sample_count=args.samples)
    print(f"{_sig(pair.mse1)} {_sig(pair.mse2)}")
    return 0


def _load_config_file(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be an object")
    unknown = set(doc) - set(CONFIG_FIELDS)
    if unknown:
        raise SchemaError(f"{path}: unknown config fields {sorted(unknown)}")
    if "bounds" in doc and isinstance(doc["bounds"], list):
        doc["bounds"] = tuple(
            tuple(pair) if isinstance(pair, list) else pair for pair in doc["bounds"]
        )
    return doc


def _resolve_config(args, target) -> EAConfig:
    merged: dict = {}
    if args.config is not None:
        merged.update(_load_config_file(args.config))
    overrides = {
        "seed": args.seed,
        "generation_count": args.generations,
        "generation_size": args.generation_size,
        "crossover_prob": args.crossover,
        "mutation_prob": args.mutation,
        "sample_count": args.samples,
        "n_divisions": args.n_divisions,
    }
    if args.bounds is not None:
        overrides["bounds"] = _parse_bounds(args.bounds)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    # divisions follow the target unless pinned by config or flag
    merged.setdefault("n_divisions", target.n)
    try:
        config = EAConfig(**merged)
    except TypeError as exc:
        raise ValidationError(str(exc)) from exc
    config.validate()
    return config


def _config_doc(config: EAConfig) -> dict:
    bounds = config.gene_bounds()
    return {
        "generation_size": config.generation_size,
        "generation_count": config.generation_count,
        "crossover_prob": config.crossover_prob,
        "mutation_prob": config.mutation_prob,
        "bounds": [[float(lo), float(hi)] for lo, hi in bounds],
        "sbx_eta": config.sbx_eta,
        "mutation_eta": config.mutation_eta,
        "seed": config.seed,
        "sample_count": config.sample_count,
        "n_divisions": config.n_divisions,
    }


def _result_doc(result) -> dict:
    return {
        "version": 1,
        "pareto_front": [ind.index for ind in result.pareto_front],
        "history": [
            {
                "generation": st.generation,
                "mean_mse1": st.mean_mse1,
                "std_mse1": st.std_mse1,
                "min_mse1": st.min_mse1,
                "mean_mse2": st.mean_mse2,
                "std_mse2": st.std_mse2,
                "min_mse2": st.min_mse2,
                "best_genome": list(st.best_genome),
            }
            for st in result.history
        ],
        "archive": [
            {
                "generation": ind.generation,
                "index": ind.index,
                "genome": [float(v) for v in ind.genome],
                "mse1": ind.fitness.mse1,
                "mse2": ind.fitness.mse2,
                "rank": ind.rank,
            }
            for ind in result.archive
        ],
    }


def _sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _format_individual(ind) -> str:
    cx = ", ".join(_sig(v) for v in ind.genome[:3])
    cy = ", ".join(_sig(v) for v in ind.genome[3:])
    return (
        f"gen={ind.generation} idx={ind.index} cx=({cx}) cy=({cy}) "
        f"mse1={_sig(ind.fitness.mse1)} mse2={_sig(ind.fitness.mse2)}"
    )


def cmd_identify(args) -> int:
    target = load_target(args.target)
    config = _resolve_config(args, target)
    threads = _threads_from_env()
    result = run(config, target, max_workers=threads)

    os.makedirs(args.out, exist_ok=True)
    write_text(os.path.join(args.out, "config.json"), dumps_json(_config_doc(config)))
    write_text(os.path.join(args.out, "result.json"), dumps_json(_result_doc(result)))
    write_report(result, args.out)
    manifest = {
        "version": 1,
        "tool_version": __version__,
        "command": "identify",
        "created": _timestamp(),
        "target": str(args.target),
        "target_sha256": _sha256(args.target),
        "config_file": str(args.config) if args.config is not None else None,
        "out_dir": str(args.out),
        "seed": config.seed,
    }
    write_text(os.path.join(args.out, "manifest.json"), dumps_json(manifest))

    print(f"pareto front ({len(result.pareto_front)} individuals):")
    for ind in result.pareto_front:
        print(f"  {_format_individual(ind)}")
    best = best_individual(result)
    print("best individual (min mse1+mse2):")
    print(f"  {_format_individual(best)}")
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_coeff_args(sub) -> None:
    sub.add_argument("--cx", required=True, help="three comma-separated coefficients")
    sub.add_argument("--cy", required=True, help="three comma-separated coefficients")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modalid",
        description="Model continuum-robot backbones from modal curvature "
        "coefficients and identify coefficients by evolutionary search.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="render one backbone to a geometry file")
    _add_coeff_args(sim)
    sim.add_argument("--length", type=float, default=1.0)
    sim.add_argument("--scale", type=float, default=1.0)
    sim.add_argument("--samples", type=int, default=DEFAULT_SAMPLE_COUNT)
    sim.add_argument("--mode", choices=MODES, default=MODE_CHORD)
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=cmd_simulate)

    target = subs.add_parser("target", help="create or import a target configuration")
    tsubs = target.add_subparsers(dest="target_command", required=True)

    synth = tsubs.add_parser("synth", help="synthesize a target from known coefficients")
    _add_coeff_args(synth)
    synth.add_argument("--length", type=float, default=1.0)
    synth.add_argument("--scale", type=float, default=1.0)
    synth.add_argument("--n-divisions", type=int, default=8)
    synth.add_argument("--noise-sigma", type=float, default=0.0)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--samples", type=int, default=DEFAULT_SAMPLE_COUNT)
    synth.add_argument("--out", required=True)
    synth.set_defaults(func=cmd_target_synth)

    imp = tsubs.add_parser(
        "import",
        help="import a target (structured file, or CSV of n+1 x,y,z rows plus a tcp row)",
    )
    imp.add_argument("--in", dest="infile", required=True)
    imp.add_argument("--n-divisions", type=int, default=None)
    imp.add_argument("--length", type=float, default=None)
    imp.add_argument("--scale", type=float, default=None)
    imp.add_argument("--out", required=True)
    imp.set_defaults(func=cmd_target_import)

    ident = subs.add_parser("identify", help="run the evolutionary search against a target")
    ident.add_argument("--target", required=True)
    ident.add_argument("--config", default=None, help="JSON config file (flags override it)")
    ident.add_argument("--out", required=True)
    ident.add_argument("--seed", type=int, default=None)
    ident.add_argument("--generations", type=int, default=None)
    ident.add_argument("--generation-size", type=int, default=None)
    ident.add_argument("--crossover", type=float, default=None)
    ident.add_argument("--mutation", type=float, default=None)
    ident.add_argument("--bounds", default=None, help="gene bounds as 'lo,hi'")
    ident.add_argument("--samples", type=int, default=None)
    ident.add_argument("--n-divisions", type=int, default=None)
    ident.set_defaults(func=cmd_identify)

    ev = subs.add_parser("eval", help="score coefficients or a geometry against a target")
    ev.add_argument("--target", required=True)
    ev.add_argument("--cx", default=None)
    ev.add_argument("--cy", default=None)
    ev.add_argument("--geometry", default=None)
    ev.add_argument("--samples", type=int, default=DEFAULT_SAMPLE_COUNT)
    ev.set_defaults(func=cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except (ValidationError, SchemaError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
