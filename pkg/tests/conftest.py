"""Shared fixtures and independent oracles for the test suite.

Oracles here intentionally avoid the package's own code paths: explicit
polynomial forms instead of the recurrence, angle accumulation instead of
matrix chains, triple loops instead of vectorized products.
"""

import math

import numpy as np
import pytest

from modalid import CoefficientSet, synth_target


def single_axis_chord_oracle(coeffs, length, scale, count):
    """Independent re-execution of the chord integration for cy = 0.

    Rotations about a single axis commute, so the cumulative rotation after
    step i is Rx of the accumulated angle; each point is that rotation
    applied to (0, 0, s_i), scaled. Uses explicit degree-0/1/2 polynomial
    forms rather than the recurrence.
    """
    c0, c1, c2 = coeffs
    pts = [(0.0, 0.0, 0.0)]
    theta = 0.0
    s_prev = 0.0
    for i in range(1, count):
        s_i = i / (count - 1) * length
        x = 2.0 * s_i / length - 1.0
        u = c0 + c1 * x + c2 * (2.0 * x * x - 1.0)
        theta += u * (s_i - s_prev)
        pts.append(
            (0.0, -math.sin(theta) * s_i * scale, math.cos(theta) * s_i * scale)
        )
        s_prev = s_i
    return np.array(pts)


def brute_force_fronts(fitness_pairs):
    """O(N^3) non-dominated front extraction by repeated removal."""

    def dom(a, b):
        return a[0] <= b[0] and a[1] <= b[1] and (a[0] < b[0] or a[1] < b[1])

    remaining = list(range(len(fitness_pairs)))
    fronts = []
    while remaining:
        front = [
            i
            for i in remaining
            if not any(dom(fitness_pairs[j], fitness_pairs[i]) for j in remaining if j != i)
        ]
        fronts.append(front)
        remaining = [i for i in remaining if i not in front]
    return fronts


def closed_form_slope(xs, ys):
    """Least-squares slope via the textbook sums, independent of ols_trend."""
    n = len(xs)
    sx = sum(xs)
    sy = sum(ys)
    sxy = sum(x * y for x, y in zip(xs, ys))
    sxx = sum(x * x for x in xs)
    denom = n * sxx - sx * sx
    if denom == 0:
        return 0.0
    return (n * sxy - sx * sy) / denom


@pytest.fixture
def bent_coeffs():
    return CoefficientSet(cx=(0.6, -0.4, 0.2), cy=(-0.3, 0.5, 0.1))


@pytest.fixture
def bent_target(bent_coeffs):
    return synth_target(bent_coeffs, length=1.0, scale=1.0, n=8, noise_sigma=0.0, seed=0)
