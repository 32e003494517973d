"""The two fitness objectives: shape deviation and TCP tangent deviation.

mse_shape follows the (1/n) * sum_{i=0}^{n} |u_i - u_hat_i|^2 convention
(n division intervals, n+1 points); mse_tcp is the squared distance of two
unit tangents, so it is bounded by 4. Both are pure functions; a whole
population can be evaluated in parallel with no shared state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backbone import MODE_CHORD, DEFAULT_SAMPLE_COUNT, integrate_backbone, sample_divisions, tcp
from .basis import CoefficientSet
from .errors import LengthMismatchError, NonUnitInputError
from .targets import TargetConfiguration

UNIT_INPUT_TOL = 1e-6


@dataclass(frozen=True)
class FitnessPair:
    """The two objective values of one candidate (both to be minimized)."""

    mse1: float  # shape deviation over division points, length^2 units
    mse2: float  # squared TCP tangent deviation, dimensionless, <= 4


def mse_shape(candidate_divisions, target_divisions, n: int) -> float:
    """Mean squared distance over the n+1 corresponding division points."""
    cand = np.asarray(candidate_divisions, dtype=float)
    targ = np.asarray(target_divisions, dtype=float)
    n = int(n)
    if cand.shape != (n + 1, 3) or targ.shape != (n + 1, 3):
        raise LengthMismatchError(
            f"both point lists must have shape ({n + 1}, 3), "
            f"got {cand.shape} and {targ.shape}"
        )
    diff = cand - targ
    return float(np.sum(diff * diff)) / n


def mse_tcp(candidate_tcp, target_tcp) -> float:
    """Squared distance between two unit tip tangents."""
    v = np.asarray(candidate_tcp, dtype=float)
    vhat = np.asarray(target_tcp, dtype=float)
    for name, vec in (("candidate", v), ("target", vhat)):
        if vec.shape != (3,):
            raise NonUnitInputError(f"{name} tcp must have 3 components")
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > UNIT_INPUT_TOL:
            raise NonUnitInputError(f"{name} tcp norm {norm!r} is not within 1e-6 of 1")
    diff = v - vhat
    return float(diff @ diff)


def evaluate(
    coeffs: CoefficientSet,
    target: TargetConfiguration,
    sample_count: int = DEFAULT_SAMPLE_COUNT,
) -> FitnessPair:
    """Integrate a candidate and score it against a target."""
    curve = integrate_backbone(coeffs, target.length, target.scale, sample_count, MODE_CHORD)
    divisions = sample_divisions(curve, target.n)
    _, tangent = tcp(curve)
    return FitnessPair(
        mse1=mse_shape(divisions, target.division_points, target.n),
        mse2=mse_tcp(tangent, target.tcp_vector),
    )
