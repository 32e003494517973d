"""Multi-objective evolutionary identification of modal coefficients.

Elitist two-objective search in the NSGA-II mold: non-dominated sorting
with crowding distance, binary tournament selection, simulated binary
crossover, polynomial mutation, and mu+lambda environmental selection.

Reproducibility contract: one seeded generator is consumed only inside the
sequential generational loop (selection, crossover, mutation); fitness
evaluation draws nothing, so results are bit-identical whether individuals
are evaluated serially or in parallel.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .basis import CoefficientSet
from .errors import InvalidConfigError, UnevaluatedIndividualError
from .objectives import FitnessPair, evaluate
from .targets import TargetConfiguration

NUM_GENES = 6  # cx0, cx1, cx2, cy0, cy1, cy2
GENE_NAMES = ("cx0", "cx1", "cx2", "cy0", "cy1", "cy2")

DEFAULT_BOUNDS = (-2.0, 2.0)


@dataclass(frozen=True)
class EAConfig:
    """Search configuration; the defaults are the reference setup
    (20 individuals x 10 generations, 90% crossover, 0.5% per-gene mutation)."""

    generation_size: int = 20
    generation_count: int = 10
    crossover_prob: float = 0.90
    mutation_prob: float = 0.005
    bounds: tuple = DEFAULT_BOUNDS  # (lo, hi) for all genes, or one pair per gene
    sbx_eta: float = 20.0
    mutation_eta: float = 20.0
    seed: int = 0
    sample_count: int = 101
    n_divisions: int = 8

    def gene_bounds(self) -> np.ndarray:
        """Per-gene bounds as a (NUM_GENES, 2) array."""
        bounds = np.asarray(self.bounds, dtype=float)
        if bounds.shape == (2,):
            bounds = np.tile(bounds, (NUM_GENES, 1))
        if bounds.shape != (NUM_GENES, 2):
            raise InvalidConfigError(
                f"bounds must be (lo, hi) or {NUM_GENES} pairs, got shape {bounds.shape}"
            )
        return bounds

    def validate(self) -> None:
        if self.generation_size < 4 or self.generation_size % 2 != 0:
            raise InvalidConfigError(
                f"generation_size must be even and >= 4, got {self.generation_size}"
            )
        if self.generation_count < 1:
            raise InvalidConfigError(
                f"generation_count must be >= 1, got {self.generation_count}"
            )
        for name in ("crossover_prob", "mutation_prob"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise InvalidConfigError(f"{name} must be in [0, 1], got {p}")
        for name in ("sbx_eta", "mutation_eta"):
            eta = getattr(self, name)
            if not eta > 0.0:
                raise InvalidConfigError(f"{name} must be > 0, got {eta}")
        if self.sample_count < 2:
            raise InvalidConfigError(f"sample_count must be >= 2, got {self.sample_count}")
        if self.n_divisions < 1:
            raise InvalidConfigError(f"n_divisions must be >= 1, got {self.n_divisions}")
        bounds = self.gene_bounds()
        if not np.all(np.isfinite(bounds)):
            raise InvalidConfigError("bounds must be finite")
        if np.any(bounds[:, 0] > bounds[:, 1]):
            raise InvalidConfigError("each gene bound needs lo <= hi")


@dataclass
class Individual:
    """A genome with its objective values and ranking bookkeeping.

    ``index`` is the archive insertion index (unique across the run) and is
    the deterministic tie-breaker everywhere an order is needed.
    """

    genome: np.ndarray
    fitness: FitnessPair | None = None
    rank: int = -1
    crowding: float = 0.0
    generation: int = -1
    index: int = -1

    def coefficients(self) -> CoefficientSet:
        return CoefficientSet.from_genome(self.genome)


@dataclass(frozen=True)
class GenerationStats:
    """Population statistics of one generation's evaluated batch
    (standard deviation uses divisor N)."""

    generation: int
    mean_mse1: float
    std_mse1: float
    min_mse1: float
    mean_mse2: float
    std_mse2: float
    min_mse2: float
    best_genome: tuple  # argmin of mse1 + mse2 within the batch

@dataclass(frozen=True)
class RunResult:
    """Everything a run produced: per-generation stats, the full archive of
    evaluated individuals, and the final non-dominated set over the archive."""

    config: EAConfig
    history: list
    archive: list
    pareto_front: list


def init_population(config: EAConfig, rng: np.random.Generator | None = None) -> list[Individual]:
    """Uniform per-gene initial population from the seeded generator."""
    config.validate()
    if rng is None:
        rng = np.random.default_rng(config.seed)
    bounds = config.gene_bounds()
    return [
        Individual(genome=rng.uniform(bounds[:, 0], bounds[:, 1]), generation=0, index=i)
        for i in range(config.generation_size)
    ]


def dominates(a: FitnessPair, b: FitnessPair) -> bool:
    """Pareto domination for two minimized objectives."""
    return (
        a.mse1 <= b.mse1
        and a.mse2 <= b.mse2
        and (a.mse1 < b.mse1 or a.mse2 < b.mse2)
    )


def nondominated_sort(population: Sequence[Individual]) -> list[list[Individual]]:
    """Fast non-dominated sort; assigns ranks and returns the fronts.

    Front k dominates no member of front j < k; member order inside each
    front follows the input order, so the result is deterministic.
    """
    for ind in population:
        if ind.fitness is None:
            raise UnevaluatedIndividualError(f"individual {ind.index} has no fitness")
    size = len(population)
    dominated: list[list[int]] = [[] for _ in range(size)]
    domination_count = [0] * size
    fronts: list[list[int]] = [[]]
    for p in range(size):
        for q in range(size):
            if p == q:
                continue
            if dominates(population[p].fitness, population[q].fitness):
                dominated[p].append(q)
            elif dominates(population[q].fitness, population[p].fitness):
                domination_count[p] += 1
        if domination_count[p] == 0:
            population[p].rank = 0
            fronts[0].append(p)
    k = 0
    while fronts[k]:
        nxt: list[int] = []
        for p in fronts[k]:
            for q in dominated[p]:
                domination_count[q] -= 1
                if domination_count[q] == 0:
                    population[q].rank = k + 1
                    nxt.append(q)
        k += 1
        fronts.append(sorted(nxt))
    fronts.pop()
    return [[population[i] for i in front] for front in fronts]


def crowding_distance(front: Sequence[Individual]) -> list[float]:
    """NSGA-II crowding distance; boundary individuals get infinity.

    Also stores the value on each individual. Ties in objective values are
    ordered by archive index so the assignment is deterministic.
    """
    size = len(front)
    dist = [0.0] * size
    if size == 0:
        return dist
    for ind in front:
        if ind.fitness is None:
            raise UnevaluatedIndividualError(f"individual {ind.index} has no fitness")
    for key in ("mse1", "mse2"):
        order = sorted(range(size), key=lambda i: (getattr(front[i].fitness, key), front[i].index))
        values = [getattr(front[i].fitness, key) for i in order]
        dist[order[0]] = float("inf")
        dist[order[-1]] = float("inf")
        span = values[-1] - values[0]
        if span > 0.0:
            for j in range(1, size - 1):
                dist[order[j]] += (values[j + 1] - values[j - 1]) / span
    for ind, d in zip(front, dist):
        ind.crowding = d
    return dist


def sbx_crossover(
    parent_a: np.ndarray,
    parent_b: np.ndarray,
    config: EAConfig,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover; applied with probability crossover_prob,
    otherwise the children are copies of the parents. Children are clamped
    to the gene bounds."""
    a = np.asarray(parent_a, dtype=float)
    b = np.asarray(parent_b, dtype=float)
    if rng.random() >= config.crossover_prob:
        return a.copy(), b.copy()
    bounds = config.gene_bounds()
    eta = config.sbx_eta
    child_a = np.empty_like(a)
    child_b = np.empty_like(b)
    for j in range(len(a)):
        u = rng.random()
        if u <= 0.5:
            beta = (2.0 * u) ** (1.0 / (eta + 1.0))
        else:
            beta = (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0))
        child_a[j] = 0.5 * ((1.0 + beta) * a[j] + (1.0 - beta) * b[j])
        child_b[j] = 0.5 * ((1.0 - beta) * a[j] + (1.0 + beta) * b[j])
    np.clip(child_a, bounds[:, 0], bounds[:, 1], out=child_a)
    np.clip(child_b, bounds[:, 0], bounds[:, 1], out=child_b)
    return child_a, child_b


def polynomial_mutation(
    genome: np.ndarray, config: EAConfig, rng: np.random.Generator
) -> np.ndarray:
    """Polynomial mutation: each gene flips with probability mutation_prob;
    the perturbation is scaled by the gene's bound range and clamped."""
    g = np.asarray(genome, dtype=float).copy()
    bounds = config.gene_bounds()
    eta = config.mutation_eta
    for j in range(len(g)):
        if rng.random() < config.mutation_prob:
            r = rng.random()
            if r < 0.5:
                delta = (2.0 * r) ** (1.0 / (eta + 1.0)) - 1.0
            else:
                delta = 1.0 - (2.0 * (1.0 - r)) ** (1.0 / (eta + 1.0))
            lo, hi = bounds[j]
            g[j] = min(max(g[j] + delta * (hi - lo), lo), hi)
    return g


def _tournament(population: list[Individual], rng: np.random.Generator) -> Individual:
    # Binary tournament on (rank asc, crowding desc); full tie keeps the first draw.
    i, j = rng.integers(0, len(population), size=2)
    a, b = population[i], population[j]
    if a.rank != b.rank:
        return a if a.rank < b.rank else b
    if a.crowding != b.crowding:
        return a if a.crowding > b.crowding else b
    return a


def _environmental_selection(combined: list[Individual], keep: int) -> list[Individual]:
    # mu+lambda elitist survival: whole fronts while they fit, then the
    # split front by crowding distance (ties by archive index).
    fronts = nondominated_sort(combined)
    survivors: list[Individual] = []
    for front in fronts:
        crowding_distance(front)
        if len(survivors) + len(front) <= keep:
            survivors.extend(front)
        else:
            remaining = keep - len(survivors)
            ordered = sorted(front, key=lambda ind: (-ind.crowding, ind.index))
            survivors.extend(ordered[:remaining])
            break
    return survivors


def _evaluate_batch(
    batch: list[Individual],
    target: TargetConfiguration,
    sample_count: int,
    max_workers: int,
) -> None:
    def score(ind: Individual) -> FitnessPair:
        return evaluate(ind.coefficients(), target, sample_count)

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(score, batch))
    else:
        results = [score(ind) for ind in batch]
    # merged in index order regardless of completion order
    for ind, fitness in zip(batch, results):
        ind.fitness = fitness


def _batch_stats(batch: list[Individual], generation: int) -> GenerationStats:
    m1 = np.array([ind.fitness.mse1 for ind in batch])
    m2 = np.array([ind.fitness.mse2 for ind in batch])
    best = int(np.argmin(m1 + m2))
    return GenerationStats(
        generation=generation,
        mean_mse1=float(np.mean(m1)),
        std_mse1=float(np.std(m1)),
        min_mse1=float(np.min(m1)),
        mean_mse2=float(np.mean(m2)),
        std_mse2=float(np.std(m2)),
        min_mse2=float(np.min(m2)),
        best_genome=tuple(float(v) for v in batch[best].genome),
    )


def run(
    config: EAConfig,
    target: TargetConfiguration,
    max_workers: int = 0,
) -> RunResult:
    """Run the full generational loop against a target.

    The archive collects every evaluated individual (generation_size per
    generation); the pareto front is the non-dominated subset of the whole
    archive. Fully deterministic for a fixed config and target.
    """
    config.validate()
    if config.n_divisions != target.n:
        raise InvalidConfigError(
            f"config n_divisions = {config.n_divisions} but target has n = {target.n}"
        )
    rng = np.random.default_rng(config.seed)
    population = init_population(config, rng)
    _evaluate_batch(population, target, config.sample_count, max_workers)
    archive = list(population)
    history = [_batch_stats(population, 0)]
    next_index = config.generation_size

    for generation in range(1, config.generation_count):
        for front in nondominated_sort(population):
            crowding_distance(front)
        children: list[Individual] = []
        for _ in range(config.generation_size // 2):
            parent_a = _tournament(population, rng)
            parent_b = _tournament(population, rng)
            genome_a, genome_b = sbx_crossover(parent_a.genome, parent_b.genome, config, rng)
            for genome in (genome_a, genome_b):
                mutated = polynomial_mutation(genome, config, rng)
                children.append(
                    Individual(genome=mutated, generation=generation, index=next_index)
                )
                next_index += 1
        _evaluate_batch(children, target, config.sample_count, max_workers)
        archive.extend(children)
        history.append(_batch_stats(children, generation))
        population = _environmental_selection(population + children, config.generation_size)

    # Final ranking over the whole archive; front 0 is the reported pareto set.
    fronts = nondominated_sort(archive)
    for front in fronts:
        crowding_distance(front)
    return RunResult(config=config, history=history, archive=archive, pareto_front=fronts[0])


def best_individual(result: RunResult) -> Individual:
    """Scalar reporting convenience: argmin of mse1 + mse2 over the front."""
    return min(
        result.pareto_front,
        key=lambda ind: (ind.fitness.mse1 + ind.fitness.mse2, ind.index),
    )
