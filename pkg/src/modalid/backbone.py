"""Backbone curve integration and frame utilities.

Turns a coefficient set into a discretized 3D backbone: uniform arclength
samples, points, and cumulative rotation frames. Two integration modes:

* ``chord`` (default, normative for all fitness work): per step the
  cumulative rotation T <- T * Rx(theta_x) * Ry(theta_y) is applied to the
  straight chord point (0, 0, s_i), then scaled per coordinate. This order
  is non-commuting and deliberately fixed.
* ``chained``: frames chain local translations, p_i = p_{i-1} +
  R_{i-1} (0, 0, ds*scale), R_i = R_{i-1} * Rx * Ry. A standard
  product-of-exponentials-style alternative; the two modes disagree at
  first order in curvature, so it is an extension, not a drop-in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .basis import CoefficientSet
from .errors import (
    DegenerateTipError,
    DivisionTooFineError,
    EmptyCoefficientsError,
    InvalidLengthError,
    InvalidScaleError,
    NonOrthonormalInputError,
    TooFewSamplesError,
    ValidationError,
)

MODE_CHORD = "chord"
MODE_CHAINED = "chained"
MODES = (MODE_CHORD, MODE_CHAINED)

DEFAULT_SAMPLE_COUNT = 101

ORTHONORMAL_TOL = 1e-9


@dataclass(frozen=True)
class Frame:
    """A pose: 3x3 rotation (orthonormal, det +1) plus position."""

    rotation: np.ndarray
    position: np.ndarray

    @classmethod
    def identity(cls) -> "Frame":
        return cls(rotation=np.eye(3), position=np.zeros(3))


@dataclass(frozen=True)
class BackboneCurve:
    """Discretized backbone: arclengths, points, and cumulative rotations.

    ``points[i]`` is already scaled; ``rotations[i]`` is the cumulative
    rotation after i steps (identity at i = 0).
    """

    length: float
    scale: float
    mode: str
    s: np.ndarray          # (N,)
    points: np.ndarray     # (N, 3)
    rotations: np.ndarray  # (N, 3, 3)

    @property
    def sample_count(self) -> int:
        return len(self.s)

    def frame(self, i: int) -> Frame:
        return Frame(rotation=self.rotations[i].copy(), position=self.points[i].copy())

    def samples(self) -> Iterator[tuple[float, np.ndarray, Frame]]:
        for i in range(self.sample_count):
            yield float(self.s[i]), self.points[i].copy(), self.frame(i)


def _coefficient_arrays(coeffs) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(coeffs, CoefficientSet):
        cx, cy = coeffs.cx, coeffs.cy
    else:
        cx, cy = coeffs
    cx = np.ascontiguousarray(cx, dtype=float)
    cy = np.ascontiguousarray(cy, dtype=float)
    if cx.ndim != 1 or cy.ndim != 1 or len(cx) == 0 or len(cy) == 0:
        raise EmptyCoefficientsError("each axis needs a non-empty 1D coefficient list")
    return cx, cy


def integrate_backbone(
    coeffs: CoefficientSet | tuple[Sequence[float], Sequence[float]],
    length: float,
    scale: float = 1.0,
    sample_count: int = DEFAULT_SAMPLE_COUNT,
    mode: str = MODE_CHORD,
) -> BackboneCurve:
    """Integrate the curvature distribution into a discretized backbone."""
    length = float(length)
    scale = float(scale)
    sample_count = int(sample_count)
    if length <= 0.0:
        raise InvalidLengthError(f"length must be > 0, got {length}")
    if scale <= 0.0:
        raise InvalidScaleError(f"scale must be > 0, got {scale}")
    if sample_count < 2:
        raise TooFewSamplesError(f"sample_count must be >= 2, got {sample_count}")
    if mode not in MODES:
        raise ValidationError(f"mode must be one of {MODES}, got {mode!r}")
    cx, cy = _coefficient_arrays(coeffs)

    # s_i = i / (count - 1) * length, so s spans [0, length] exactly.
    s = np.arange(sample_count, dtype=float) / float(sample_count - 1) * length
    points = np.empty((sample_count, 3))
    rotations = np.empty((sample_count, 3, 3))
    if mode == MODE_CHORD:
        kernels.integrate_chord(cx, cy, s, length, scale, points, rotations)
    else:
        kernels.integrate_chained(cx, cy, s, length, scale, points, rotations)
    return BackboneCurve(
        length=length, scale=scale, mode=mode, s=s, points=points, rotations=rotations
    )


def tcp(curve: BackboneCurve) -> tuple[np.ndarray, np.ndarray]:
    """Tip point and unit tip tangent (backward difference of the last two samples)."""
    diff = curve.points[-1] - curve.points[-2]
    norm = float(np.linalg.norm(diff))
    if norm == 0.0:
        raise DegenerateTipError("last two samples coincide")
    return curve.points[-1].copy(), diff / norm


def division_indices(sample_count: int, n: int) -> list[int]:
    """Sample indices of the n+1 division points (round half up).

    Division i maps to sample round(i * (sample_count - 1) / n); candidate
    and target live on the same uniform-s grid, so index alignment is exact
    correspondence without re-parameterization.
    """
    n = int(n)
    if n < 1:
        raise ValidationError(f"division count must be >= 1, got {n}")
    last = int(sample_count) - 1
    if n > last:
        raise DivisionTooFineError(
            f"{n} divisions need at least {n + 1} samples, got {sample_count}"
        )
    return [(2 * i * last + n) // (2 * n) for i in range(n + 1)]


def sample_divisions(curve: BackboneCurve, n: int) -> np.ndarray:
    """n+1 division points of a curve, picked by index rounding."""
    return curve.points[division_indices(curve.sample_count, n)].copy()


def rotation_x(theta: float) -> np.ndarray:
    """Right-handed rotation about the x axis."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rotation_y(theta: float) -> np.ndarray:
    """Right-handed rotation about the y axis."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def check_orthonormal(rotation: np.ndarray, tol: float = ORTHONORMAL_TOL) -> None:
    """Raise unless the matrix is orthonormal with determinant +1."""
    rotation = np.asarray(rotation, dtype=float)
    if rotation.shape != (3, 3):
        raise NonOrthonormalInputError(f"rotation must be 3x3, got shape {rotation.shape}")
    err = np.max(np.abs(rotation.T @ rotation - np.eye(3)))
    det = float(np.linalg.det(rotation))
    if err > tol or abs(det - 1.0) > tol:
        raise NonOrthonormalInputError(
            f"matrix is not a rotation: |R^T R - I| = {err:.3g}, det = {det:.12g}"
        )


def apply_motion_step(frame: Frame, adjustment: Frame) -> Frame:
    """Right-compose a small pose adjustment onto a frame (T' = T * n)."""
    check_orthonormal(frame.rotation)
    check_orthonormal(adjustment.rotation)
    rotation = frame.rotation @ adjustment.rotation
    position = frame.rotation @ adjustment.position + frame.position
    return Frame(rotation=rotation, position=position)
