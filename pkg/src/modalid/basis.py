"""Chebyshev basis evaluation and modal curvature distributions.

The backbone's local bending rate is modeled as a Chebyshev series
u(s) = sum_i c_i T_i(x) with the arclength s in [0, L] remapped to
x = 2 s / L - 1 in [-1, 1]. One coefficient triple per bending axis
(degrees 0..2) is the default search space, but any series length is
accepted by the evaluation routines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyCoefficientsError, InvalidLengthError, ValidationError

COEFFS_PER_AXIS = 3


@dataclass(frozen=True)
class CoefficientSet:
    """Six modal coefficients defining one backbone shape.

    cx weights bending about the x axis, cy about the y axis; each holds
    the degree-0, 1 and 2 Chebyshev weights in that order.
    """

    cx: tuple[float, float, float]
    cy: tuple[float, float, float]

    def __post_init__(self):
        cx = tuple(float(v) for v in self.cx)
        cy = tuple(float(v) for v in self.cy)
        if len(cx) != COEFFS_PER_AXIS or len(cy) != COEFFS_PER_AXIS:
            raise ValidationError(
                f"expected {COEFFS_PER_AXIS} coefficients per axis, "
                f"got {len(cx)} for cx and {len(cy)} for cy"
            )
        if not all(np.isfinite(cx + cy)):
            raise ValidationError("coefficients must be finite")
        object.__setattr__(self, "cx", cx)
        object.__setattr__(self, "cy", cy)

    @classmethod
    def from_genome(cls, genome: Iterable[float]) -> "CoefficientSet":
        """Build from the flat gene order (cx0, cx1, cx2, cy0, cy1, cy2)."""
        vals = [float(v) for v in genome]
        if len(vals) != 2 * COEFFS_PER_AXIS:
            raise ValidationError(f"genome must have {2 * COEFFS_PER_AXIS} genes, got {len(vals)}")
        return cls(cx=tuple(vals[:3]), cy=tuple(vals[3:]))

    def genome(self) -> np.ndarray:
        """Flatten to the fixed gene order (cx0, cx1, cx2, cy0, cy1, cy2)."""
        return np.array(self.cx + self.cy, dtype=float)

    def within_bounds(self, lo: float, hi: float) -> bool:
        return all(lo <= v <= hi for v in self.cx + self.cy)


def chebyshev_eval(max_degree: int, x: float) -> list[float]:
    """Evaluate T_0(x)..T_max_degree(x) by the three-term recurrence.

    T_0 = 1, T_1 = x, T_i = 2 x T_{i-1} - T_{i-2}. Values of x outside
    [-1, 1] are permitted (the recurrence is a polynomial identity).
    """
    if max_degree < 0:
        raise ValidationError("max_degree must be >= 0")
    x = float(x)
    values = [1.0]
    if max_degree > 0:
        values.append(x)
    for _ in range(2, max_degree + 1):
        values.append(2.0 * x * values[-1] - values[-2])
    return values


def curvature_distribution(
    coeffs: Sequence[float], s_samples: Sequence[float], length: float
) -> np.ndarray:
    """Evaluate the curvature series at each arclength sample.

    Remaps every s in [0, length] to x = 2 s / length - 1 and returns
    sum_i coeffs[i] * T_i(x), one value per sample (units 1/length).
    """
    coeffs = [float(c) for c in coeffs]
    if not coeffs:
        raise EmptyCoefficientsError("need at least one coefficient")
    length = float(length)
    if length <= 0.0:
        raise InvalidLengthError(f"length must be > 0, got {length}")
    s = np.asarray(s_samples, dtype=float)
    x = 2.0 * s / length - 1.0
    u = np.full_like(x, coeffs[0])
    if len(coeffs) > 1:
        t_prev = np.ones_like(x)
        t_cur = x
        u = u + coeffs[1] * t_cur
        for c in coeffs[2:]:
            t_prev, t_cur = t_cur, 2.0 * x * t_cur - t_prev
            u = u + c * t_cur
    return u
