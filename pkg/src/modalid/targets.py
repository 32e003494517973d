"""Target configurations: the shapes the search optimizes against.

A target is the division-point list plus unit TCP vector of a desired
backbone shape. Targets are either synthesized from a known coefficient
set (optionally with measurement noise on the positions) or imported from
a file produced elsewhere.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .backbone import MODE_CHORD, DEFAULT_SAMPLE_COUNT, integrate_backbone, sample_divisions, tcp
from .basis import CoefficientSet
from .errors import ParseError, SchemaError, ValidationError
from .serialize import dumps_json, write_text

SOURCE_SYNTHETIC = "synthetic"
SOURCE_IMPORTED = "imported"

TARGET_FILE_VERSION = 1

# |norm - 1| <= UNIT_TOL passes untouched; <= UNIT_RENORM_TOL is renormalized
# with a warning; anything larger is a schema violation.
UNIT_TOL = 1e-12
UNIT_RENORM_TOL = 1e-6


@dataclass(eq=False)
class TargetConfiguration:
    """Division points + TCP vector of an ideal shape, with provenance."""

    division_points: np.ndarray  # (n+1, 3)
    tcp_vector: np.ndarray       # (3,), unit norm
    n: int
    length: float
    scale: float
    source: str
    ground_truth: CoefficientSet | None = None
    noise_sigma: float | None = None
    seed: int | None = None

    def __post_init__(self):
        self.division_points = np.asarray(self.division_points, dtype=float)
        self.tcp_vector = np.asarray(self.tcp_vector, dtype=float)
        self.n = int(self.n)
        self.length = float(self.length)
        self.scale = float(self.scale)
        if self.n < 1:
            raise SchemaError(f"division count must be >= 1, got {self.n}")
        if self.division_points.shape != (self.n + 1, 3):
            raise SchemaError(
                f"expected {self.n + 1} division points of 3 coordinates, "
                f"got shape {self.division_points.shape}"
            )
        if self.tcp_vector.shape != (3,):
            raise SchemaError("tcp_vector must have 3 components")
        if not np.all(np.isfinite(self.division_points)) or not np.all(
            np.isfinite(self.tcp_vector)
        ):
            raise SchemaError("target contains non-finite values")
        if abs(float(np.linalg.norm(self.tcp_vector)) - 1.0) > 1e-9:
            raise SchemaError("tcp_vector must be unit norm")
        if self.length <= 0.0 or self.scale <= 0.0:
            raise SchemaError("length and scale must be > 0")
        if self.source not in (SOURCE_SYNTHETIC, SOURCE_IMPORTED):
            raise SchemaError(f"unknown source {self.source!r}")
        if self.noise_sigma is not None:
            self.noise_sigma = float(self.noise_sigma)
            if self.noise_sigma < 0.0:
                raise SchemaError("noise_sigma must be >= 0")

    def __eq__(self, other) -> bool:
        if not isinstance(other, TargetConfiguration):
            return NotImplemented
        return (
            np.array_equal(self.division_points, other.division_points)
            and np.array_equal(self.tcp_vector, other.tcp_vector)
            and self.n == other.n
            and self.length == other.length
            and self.scale == other.scale
            and self.source == other.source
            and self.ground_truth == other.ground_truth
            and self.noise_sigma == other.noise_sigma
            and self.seed == other.seed
        )


def synth_target(
    coeffs: CoefficientSet,
    length: float,
    scale: float = 1.0,
    n: int = 8,
    noise_sigma: float = 0.0,
    seed: int = 0,
    sample_count: int = DEFAULT_SAMPLE_COUNT,
) -> TargetConfiguration:
    """Synthesize a target from a known coefficient set.

    With noise_sigma > 0, i.i.d. zero-mean Gaussian offsets of standard
    deviation noise_sigma * length * scale are added to every division
    point, deterministically from the seed. The TCP vector is always taken
    from the noiseless curve (noise models position measurement error only).
    """
    noise_sigma = float(noise_sigma)
    if noise_sigma < 0.0:
        raise ValidationError(f"noise_sigma must be >= 0, got {noise_sigma}")
    curve = integrate_backbone(coeffs, length, scale, sample_count, MODE_CHORD)
    divisions = sample_divisions(curve, n)
    _, tcp_vector = tcp(curve)
    if noise_sigma > 0.0:
        rng = np.random.default_rng(seed)
        divisions = divisions + rng.normal(
            0.0, noise_sigma * float(length) * float(scale), size=divisions.shape
        )
    return TargetConfiguration(
        division_points=divisions,
        tcp_vector=tcp_vector,
        n=n,
        length=length,
        scale=scale,
        source=SOURCE_SYNTHETIC,
        ground_truth=coeffs,
        noise_sigma=noise_sigma,
        seed=int(seed),
    )


def save_target(target: TargetConfiguration, path) -> None:
    """Write a target file (JSON, 17-significant-digit floats)."""
    doc: dict = {
        "version": TARGET_FILE_VERSION,
        "n": target.n,
        "L": target.length,
        "scale": target.scale,
        "division_points": [[float(v) for v in row] for row in target.division_points],
        "tcp_vector": [float(v) for v in target.tcp_vector],
        "source": target.source,
    }
    if target.ground_truth is not None:
        doc["ground_truth"] = {
            "cx": list(target.ground_truth.cx),
            "cy": list(target.ground_truth.cy),
        }
    if target.noise_sigma is not None:
        doc["noise_sigma"] = target.noise_sigma
    if target.seed is not None:
        doc["seed"] = target.seed
    write_text(path, dumps_json(doc))


def load_target(path) -> TargetConfiguration:
    """Load and validate a target file."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be an object")
    if doc.get("version") != TARGET_FILE_VERSION:
        raise SchemaError(f"{path}: unsupported version {doc.get('version')!r}")
    for key in ("n", "L", "scale", "division_points", "tcp_vector", "source"):
        if key not in doc:
            raise SchemaError(f"{path}: missing field {key!r}")

    n = _expect_int(doc["n"], "n", path)
    points = _expect_vectors(doc["division_points"], "division_points", path)
    if len(points) != n + 1:
        raise SchemaError(
            f"{path}: n = {n} requires {n + 1} division points, got {len(points)}"
        )
    tcp_vector = np.array(_expect_vector3(doc["tcp_vector"], "tcp_vector", path))
    norm = float(np.linalg.norm(tcp_vector))
    if abs(norm - 1.0) > UNIT_RENORM_TOL:
        raise SchemaError(f"{path}: tcp_vector norm {norm!r} is not within 1e-6 of 1")
    if abs(norm - 1.0) > UNIT_TOL:
        warnings.warn(f"{path}: renormalizing tcp_vector (norm was {norm!r})")
        tcp_vector = tcp_vector / norm

    ground_truth = None
    if doc.get("ground_truth") is not None:
        gt = doc["ground_truth"]
        if not isinstance(gt, dict) or "cx" not in gt or "cy" not in gt:
            raise SchemaError(f"{path}: ground_truth needs 'cx' and 'cy'")
        try:
            ground_truth = CoefficientSet(
                cx=tuple(_expect_vector3(gt["cx"], "ground_truth.cx", path)),
                cy=tuple(_expect_vector3(gt["cy"], "ground_truth.cy", path)),
            )
        except ValidationError as exc:
            raise SchemaError(f"{path}: {exc}") from exc

    noise_sigma = doc.get("noise_sigma")
    if noise_sigma is not None:
        noise_sigma = _expect_number(noise_sigma, "noise_sigma", path)
    seed = doc.get("seed")
    if seed is not None:
        seed = _expect_int(seed, "seed", path)

    try:
        return TargetConfiguration(
            division_points=np.array(points),
            tcp_vector=tcp_vector,
            n=n,
            length=_expect_number(doc["L"], "L", path),
            scale=_expect_number(doc["scale"], "scale", path),
            source=doc["source"],
            ground_truth=ground_truth,
            noise_sigma=noise_sigma,
            seed=seed,
        )
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def _expect_number(value, name: str, path) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{path}: field {name!r} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise SchemaError(f"{path}: field {name!r} must be finite")
    return value


def _expect_int(value, name: str, path) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{path}: field {name!r} must be an integer, got {value!r}")
    return value


def _expect_vector3(value, name: str, path) -> list[float]:
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise SchemaError(f"{path}: field {name!r} must be a list of 3 numbers")
    return [_expect_number(v, name, path) for v in value]


def _expect_vectors(value, name: str, path) -> list[list[float]]:
    if not isinstance(value, list):
        raise SchemaError(f"{path}: field {name!r} must be a list of [x, y, z] rows")
    return [_expect_vector3(row, name, path) for row in value]
