"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Tolerances are pinned here and nowhere else.
"""

import filecmp
import math
import os
import shutil
import time

import numpy as np

from conftest import closed_form_slope, single_axis_chord_oracle

from modalid import (
    CoefficientSet,
    EAConfig,
    MODE_CHAINED,
    MODE_CHORD,
    chebyshev_eval,
    evaluate,
    integrate_backbone,
    load_target,
    run,
    save_target,
    synth_target,
    write_stats,
)
from modalid.cli import main as cli_main
from modalid.objectives import mse_shape

BENT = CoefficientSet(cx=(0.6, -0.4, 0.2), cy=(-0.3, 0.5, 0.1))


def _ok(number: int, name: str) -> None:
    print(f"ACCEPTANCE {number:2d} {name}: PASS")


def test_criterion_01_chebyshev_correctness():
    start = time.perf_counter()
    worst = 0.0
    for x in np.linspace(-1.0, 1.0, 201):
        values = chebyshev_eval(8, x)
        for i, t in enumerate(values):
            worst = max(worst, abs(t - math.cos(i * math.acos(x))))
    elapsed = time.perf_counter() - start
    assert worst <= 1e-12, f"max recurrence/closed-form gap {worst}"
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    _ok(1, "Chebyshev correctness")


def test_criterion_02_script_fidelity():
    start = time.perf_counter()
    coeffs = CoefficientSet(cx=(1.0, 0.0, 0.0), cy=(0.0, 0.0, 0.0))
    curve = integrate_backbone(coeffs, 1.0, 1.0, 101, MODE_CHORD)
    oracle = single_axis_chord_oracle((1.0, 0.0, 0.0), 1.0, 1.0, 101)
    gap = float(np.max(np.abs(curve.points - oracle)))
    tip = curve.points[-1]
    tip_gap = float(
        np.max(np.abs(tip - np.array([0.0, -math.sin(1.0), math.cos(1.0)])))
    )
    elapsed = time.perf_counter() - start
    assert gap <= 1e-9, f"max point deviation from oracle {gap}"
    assert tip_gap <= 1e-9, f"tip deviation {tip_gap}"
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    _ok(2, "script fidelity vs hand-executed oracle")


def test_criterion_03_zero_coefficients_straight():
    zero = CoefficientSet(cx=(0.0, 0.0, 0.0), cy=(0.0, 0.0, 0.0))
    for mode in (MODE_CHORD, MODE_CHAINED):
        for scale in (1.0, 2.5):
            curve = integrate_backbone(zero, 1.0, scale, 101, mode)
            expected = np.stack(
                [np.zeros(101), np.zeros(101), curve.s * scale], axis=1
            )
            gap = float(np.max(np.abs(curve.points - expected)))
            assert gap <= 1e-12, f"{mode} scale={scale}: deviation {gap}"
    _ok(3, "zero-coefficient straight line in both modes")


def test_criterion_04_objective_zeros():
    for seed in range(20):
        rng = np.random.default_rng(seed)
        truth = CoefficientSet.from_genome(rng.uniform(-2.0, 2.0, 6))
        target = synth_target(truth, 1.0, 1.0, 8, 0.0, seed)
        pair = evaluate(truth, target)
        assert pair.mse1 == 0.0, f"seed {seed}: mse1 = {pair.mse1}"
        assert pair.mse2 == 0.0, f"seed {seed}: mse2 = {pair.mse2}"
    _ok(4, "objective zeros for 20 random ground truths")


def test_criterion_05_elitism_monotonicity():
    start = time.perf_counter()
    target = synth_target(BENT, 1.0, 1.0, 8, 0.0, 0)

    def best_so_far_series(result, key):
        best = float("inf")
        out = []
        for g in range(result.config.generation_count):
            batch = [
                getattr(ind.fitness, key)
                for ind in result.archive
                if ind.generation == g
            ]
            best = min(best, min(batch))
            out.append(best)
        return out

    result = run(EAConfig(seed=42), target)
    for key in ("mse1", "mse2"):
        series = best_so_far_series(result, key)
        assert all(
            series[i + 1] <= series[i] for i in range(len(series) - 1)
        ), f"best-so-far {key} not monotone: {series}"

    improved = 0
    for seed in range(10):
        res = run(EAConfig(seed=seed), target)
        gen0 = min(i.fitness.mse1 for i in res.archive if i.generation == 0)
        final = min(i.fitness.mse1 for i in res.archive)
        if final < gen0:
            improved += 1
    elapsed = time.perf_counter() - start
    assert improved >= 9, f"improved in only {improved}/10 seeds"
    assert elapsed < 10.0, f"took {elapsed:.3f}s"
    _ok(5, f"elitism monotonicity (improved {improved}/10 seeds)")


def test_criterion_06_grid_oracle_agreement():
    start = time.perf_counter()
    truth = CoefficientSet(cx=(0.0, 0.77, 0.0), cy=(0.0, -0.53, 0.0))
    target = synth_target(truth, 1.0, 1.0, 8, 0.0, 0)

    # brute-force oracle: exhaustive 41x41 grid over the two free genes
    grid = np.linspace(-2.0, 2.0, 41)
    values = np.empty((41, 41))
    for i, a in enumerate(grid):
        for j, b in enumerate(grid):
            candidate = CoefficientSet(cx=(0.0, a, 0.0), cy=(0.0, b, 0.0))
            values[i, j] = evaluate(candidate, target).mse1
    grid_min = float(values.min())
    slack = float(
        max(
            np.max(np.abs(np.diff(values, axis=0))),
            np.max(np.abs(np.diff(values, axis=1))),
        )
    )

    bounds = tuple((-2.0, 2.0) if g in (1, 4) else (0.0, 0.0) for g in range(6))
    config = EAConfig(generation_size=50, generation_count=40, bounds=bounds, seed=0)
    result = run(config, target)
    ea_best = min(ind.fitness.mse1 for ind in result.archive)
    elapsed = time.perf_counter() - start
    assert ea_best <= grid_min + slack, (
        f"EA best {ea_best} > grid min {grid_min} + slack {slack}"
    )
    assert elapsed < 60.0, f"took {elapsed:.3f}s"
    _ok(6, f"grid-oracle agreement (EA {ea_best:.3g} <= {grid_min:.3g} + {slack:.3g})")


def test_criterion_07_convergence_trend():
    target = synth_target(BENT, 1.0, 1.0, 8, 0.0, 0)
    gen0_std1, gen9_std1 = [], []
    gen0_std2, gen9_std2 = [], []
    slopes_nonpositive = 0
    for seed in range(10):
        result = run(EAConfig(seed=seed), target)
        gen0_std1.append(result.history[0].std_mse1)
        gen9_std1.append(result.history[-1].std_mse1)
        gen0_std2.append(result.history[0].std_mse2)
        gen9_std2.append(result.history[-1].std_mse2)
        slope = closed_form_slope(
            [st.generation for st in result.history],
            [st.mean_mse1 for st in result.history],
        )
        if slope <= 0.0:
            slopes_nonpositive += 1
    assert np.median(gen9_std1) < np.median(gen0_std1), "mse1 spread did not narrow"
    assert np.median(gen9_std2) < np.median(gen0_std2), "mse2 spread did not narrow"
    assert slopes_nonpositive >= 8, f"slope <= 0 in only {slopes_nonpositive}/10 seeds"
    _ok(7, f"convergence trend (slope <= 0 in {slopes_nonpositive}/10 seeds)")


def test_criterion_08_identify_determinism(tmp_path, monkeypatch):
    target_path = tmp_path / "target.json"
    save_target(synth_target(BENT, 1.0, 1.0, 8, 0.0, 0), target_path)
    out = tmp_path / "run"
    snapshots = {}
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    for threads in ("0", "4"):
        monkeypatch.setenv("MODALID_THREADS", threads)
        for attempt in ("a", "b"):
            if out.exists():
                shutil.rmtree(out)
            code = cli_main(
                ["identify", "--target", str(target_path), "--out", str(out), "--seed", "42"]
            )
            assert code == 0
            snap = tmp_path / f"snap_{threads}_{attempt}"
            shutil.copytree(out, snap)
            snapshots[(threads, attempt)] = snap
    names = sorted(os.listdir(snapshots[("0", "a")]))
    reference = snapshots[("0", "a")]
    for key, snap in snapshots.items():
        assert sorted(os.listdir(snap)) == names, f"{key}: different file set"
        match, mismatch, errors = filecmp.cmpfiles(reference, snap, names, shallow=False)
        assert not mismatch and not errors, f"{key}: differing files {mismatch or errors}"
    _ok(8, "identify byte-identical across reruns and thread counts")


def test_criterion_09_round_trips(tmp_path):
    target = synth_target(BENT, 1.311, 2.07, 8, 0.01, 12345)
    path = tmp_path / "target.json"
    save_target(target, path)
    assert load_target(path) == target

    result = run(EAConfig(seed=1), synth_target(BENT, 1.0, 1.0, 8, 0.0, 0))
    gen_path, ind_path = write_stats(result, tmp_path)
    rows = {}
    with open(ind_path) as fh:
        header = fh.readline().strip().split(",")
        for line in fh:
            record = dict(zip(header, line.strip().split(",")))
            rows.setdefault(int(record["generation"]), []).append(record)
    with open(gen_path) as fh:
        header = fh.readline().strip().split(",")
        for line in fh:
            record = dict(zip(header, line.strip().split(",")))
            g = int(record["generation"])
            m1 = np.array([float(r["mse1"]) for r in rows[g]])
            m2 = np.array([float(r["mse2"]) for r in rows[g]])
            for name, recomputed in (
                ("mean_mse1", np.mean(m1)),
                ("std_mse1", np.std(m1)),
                ("min_mse1", np.min(m1)),
                ("mean_mse2", np.mean(m2)),
                ("std_mse2", np.std(m2)),
                ("min_mse2", np.min(m2)),
            ):
                assert abs(float(record[name]) - recomputed) <= 1e-12, (
                    f"generation {g}: {name} mismatch"
                )
    _ok(9, "target and stats round-trips")


def test_criterion_10_noise_calibration():
    sigma, length, scale, n = 0.01, 1.0, 1.0, 8
    truth_target = synth_target(BENT, length, scale, n, 0.0, 0)
    values = []
    for seed in range(200):
        noised = synth_target(BENT, length, scale, n, sigma, seed)
        values.append(
            mse_shape(truth_target.division_points, noised.division_points, n)
        )
    mean = float(np.mean(values))
    expected = 3 * sigma**2 * (length * scale) ** 2 * (n + 1) / n
    assert 0.8 * expected <= mean <= 1.2 * expected, (
        f"Monte-Carlo mean {mean} outside +-20% of {expected}"
    )
    _ok(10, f"noise calibration (ratio {mean / expected:.3f})")
