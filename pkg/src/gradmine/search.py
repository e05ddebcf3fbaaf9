"""Seeded stochastic miners sharing one trajectory and recorder contract.

Four searchers walk an integer-encoded candidate space: random search
("rs"), stochastic hill climbing ("ls"), a small genetic algorithm ("ga")
and particle swarm optimization ("pso").  All of them

* draw every random number from one ``numpy.random.default_rng(seed)``
  generator, so (dataset, space, config) fully determines the run;
* log every objective call, in call order, as one trajectory step;
* never let an unusable candidate (infinite fitness) become the incumbent
  best, a personal best or the global best;
* collect every distinct usable candidate whose support meets ``sigma``.

:func:`run_miner` additionally wraps the exhaustive sweep under the same
result type so the benchmark harness drives all five miners through one
door.

Objective-call budgets are part of the contract: rs makes T calls, ls
makes T+1 (the starting point counts), ga makes npop + 4T (two offspring
and two mutants per iteration) and pso makes 3 per particle per iteration
(position, personal best, global best).
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .dataset import Dataset
from .encoding import (
    BitVector,
    GradualPattern,
    SearchSpace,
    build_space,
    decode,
    encode,
    enumerate_valid,
)
from .fitness import ConcordanceIndex, Evaluation, evaluate_with_index

#: Names accepted by :func:`run_miner` (and the CLI's --algo flag).
ALGORITHMS = ("rs", "ls", "ga", "pso", "graank")


@dataclass(frozen=True)
class SearchConfig:
    """Tuning knobs for every miner.

    Fields the chosen algorithm does not use are ignored, so one config
    can drive a whole benchmark.  Defaults are round mid-range values;
    ``max_iterations`` follows the small-budget convention used
    throughout the test suite.
    """

    max_iterations: int = 20
    seed: int = 0
    sigma: float = 0.5
    # hill climbing
    step_size: float = 5.0
    # genetic algorithm
    npop: int = 10
    crossover_rate: float = 0.5
    mutation_rate: float = 0.1
    mutation_scale: float = 5.0
    # particle swarm
    nparticles: int = 5
    max_velocity: float = 4.0
    coef_p: float = 1.0
    coef_g: float = 1.0
    inertia: float = 1.0

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 0.0 <= self.sigma <= 1.0:
            raise ValueError(f"sigma must be in [0, 1], got {self.sigma}")
        if self.step_size <= 0:
            raise ValueError("step_size must be positive")
        if self.npop < 2:
            raise ValueError("npop must be >= 2")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError("crossover_rate must be in [0, 1]")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must be in [0, 1]")
        if self.mutation_scale <= 0:
            raise ValueError("mutation_scale must be positive")
        if self.nparticles < 1:
            raise ValueError("nparticles must be >= 1")
        if self.max_velocity <= 0:
            raise ValueError("max_velocity must be positive")
        if min(self.coef_p, self.coef_g, self.inertia) < 0:
            raise ValueError("coef_p, coef_g and inertia must be nonnegative")


class TrajectoryStep(NamedTuple):
    iteration: int
    candidate: int
    fitness: float
    valid: bool


@dataclass(frozen=True)
class Trajectory:
    """Every objective call of one run, in call order."""

    steps: tuple[TrajectoryStep, ...]

    @property
    def evaluations(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class SearchResult:
    """What one mining run produced.

    ``frequent_patterns`` holds every distinct candidate encountered with
    support >= sigma, deduplicated by candidate integer and sorted by
    descending support then ascending candidate, matching the exhaustive
    miner's ordering.  ``wall_time`` covers the mining call only.
    """

    best_pattern: GradualPattern | None
    best_support: float
    best_fitness: float
    frequent_patterns: tuple[tuple[GradualPattern, float], ...]
    trajectory: Trajectory
    wall_time: float


class _Recorder:
    """The instrumented objective function.

    Memoizes evaluations per candidate (the spaces are tiny, so repeat
    visits are common), appends one trajectory step per call regardless,
    and registers frequent candidates as they are first seen.
    """

    def __init__(self, d: Dataset, space: SearchSpace, sigma: float) -> None:
        if not 0.0 <= sigma <= 1.0:
            raise ValueError(f"sigma must be in [0, 1], got {sigma}")
        self.space = space
        self.sigma = sigma
        self._index = ConcordanceIndex(d)
        self._memo: dict[int, Evaluation] = {}
        self._steps: list[TrajectoryStep] = []
        self._frequent: dict[int, Evaluation] = {}

    def record(self, iteration: int, candidate: int) -> Evaluation:
        ev = self._memo.get(candidate)
        if ev is None:
            ev = evaluate_with_index(candidate, self.space, self._index)
            self._memo[candidate] = ev
            if ev.usable and ev.support >= self.sigma:
                self._frequent[candidate] = ev
        self._steps.append(TrajectoryStep(iteration, candidate, ev.fitness, ev.usable))
        return ev

    def trajectory(self) -> Trajectory:
        return Trajectory(tuple(self._steps))

    def frequent(self) -> tuple[tuple[GradualPattern, float], ...]:
        order = sorted(self._frequent.values(), key=lambda e: (-e.support, e.candidate))
        return tuple((e.pattern, e.support) for e in order)


def _keep_best(best: Evaluation | None, ev: Evaluation) -> Evaluation | None:
    # "<=" so a later candidate with equal fitness replaces the incumbent.
    if ev.usable and (best is None or ev.fitness <= best.fitness):
        return ev
    return best


def _finish(rec: _Recorder, best: Evaluation | None, t0: float) -> SearchResult:
    wall = time.perf_counter() - t0
    if best is None:
        return SearchResult(None, 0.0, math.inf, rec.frequent(), rec.trajectory(), wall)
    return SearchResult(
        best.pattern, best.support, best.fitness, rec.frequent(), rec.trajectory(), wall
    )


def _clamp(x: int, s: SearchSpace) -> int:
    return min(max(x, s.lower), s.upper)


def _round_clamp(value: float, s: SearchSpace) -> int:
    return _clamp(int(round(float(value))), s)


def _uniform_candidate(rng: np.random.Generator, s: SearchSpace) -> int:
    return int(rng.integers(s.lower, s.upper + 1))


def rs_grad(d: Dataset, s: SearchSpace, c: SearchConfig) -> SearchResult:
    """Uniform probing: one independent draw per iteration, best kept."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(c.seed)
    rec = _Recorder(d, s, c.sigma)
    best: Evaluation | None = None
    for t in range(1, c.max_iterations + 1):
        best = _keep_best(best, rec.record(t, _uniform_candidate(rng, s)))
    return _finish(rec, best, t0)


def ls_grad(d: Dataset, s: SearchSpace, c: SearchConfig) -> SearchResult:
    """Stochastic hill climbing with a bounded random step.

    A proposal is adopted when its fitness is no worse than the current
    point's.  Because inf <= inf holds, the walk keeps drifting across
    unusable ground instead of freezing on it.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(c.seed)
    rec = _Recorder(d, s, c.sigma)
    x = _uniform_candidate(rng, s)
    current = rec.record(0, x)
    best = _keep_best(None, current)
    for t in range(1, c.max_iterations + 1):
        u = float(rng.uniform(-c.step_size, c.step_size))
        proposal = _round_clamp(x + u, s)
        ev = rec.record(t, proposal)
        if ev.fitness <= current.fitness:
            x, current = proposal, ev
        best = _keep_best(best, ev)
    return _finish(rec, best, t0)


def _fitness_order(e: Evaluation) -> tuple[float, int]:
    # Usable candidates first (inf sorts last); ties by lower integer.
    return (e.fitness, e.candidate)


def _mutate(rng: np.random.Generator, candidate: int, s: SearchSpace, c: SearchConfig) -> int:
    # Bit flips first, then an integer-scale Gaussian nudge; both respect
    # the interval by rounding and clamping.
    bits = decode(candidate, s).bits
    flips = rng.random(len(bits)) < c.mutation_rate
    flipped = BitVector(tuple(b ^ int(f) for b, f in zip(bits, flips)))
    return _round_clamp(encode(flipped) + float(rng.normal(0.0, c.mutation_scale)), s)


def ga_grad(d: Dataset, s: SearchSpace, c: SearchConfig) -> SearchResult:
    """Small elitist genetic algorithm over the bit representation.

    Each iteration takes the two fittest members, recombines them by
    single-point bit crossover with probability ``crossover_rate``
    (otherwise copies them), then mutates each offspring; all four
    results are evaluated, appended, and the population is truncated
    back to ``npop``.  Exactly four objective calls per iteration.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(c.seed)
    rec = _Recorder(d, s, c.sigma)
    best: Evaluation | None = None
    pop: list[Evaluation] = []
    for _ in range(c.npop):
        ev = rec.record(0, _uniform_candidate(rng, s))
        pop.append(ev)
        best = _keep_best(best, ev)
    nbits = 2 * s.m
    for t in range(1, c.max_iterations + 1):
        p1, p2 = heapq.nsmallest(2, pop, key=_fitness_order)
        if float(rng.random()) < c.crossover_rate:
            point = int(rng.integers(1, nbits))
            b1 = decode(p1.candidate, s).bits
            b2 = decode(p2.candidate, s).bits
            # Recombined bits can leave a numeric-space interval, so the
            # children are clamped back in like every other move.
            c1 = _clamp(encode(BitVector(b1[:point] + b2[point:])), s)
            c2 = _clamp(encode(BitVector(b2[:point] + b1[point:])), s)
        else:
            c1, c2 = p1.candidate, p2.candidate
        ev1 = rec.record(t, c1)
        ev2 = rec.record(t, c2)
        ev3 = rec.record(t, _mutate(rng, c1, s, c))
        ev4 = rec.record(t, _mutate(rng, c2, s, c))
        for ev in (ev1, ev2, ev3, ev4):
            best = _keep_best(best, ev)
        pop.extend((ev1, ev2, ev3, ev4))
        pop = heapq.nsmallest(c.npop, pop, key=_fitness_order)
    return _finish(rec, best, t0)


def pso_grad(d: Dataset, s: SearchSpace, c: SearchConfig) -> SearchResult:
    """Particle swarm over the integer interval.

    Per particle and iteration there are exactly three objective calls:
    the position, the personal best and the global best, in that order.
    Personal and global bests only move to usable positions whose cost
    is no higher than the incumbent's.  After the swarm sweep the global
    best is folded into the run best; then every particle moves with a
    velocity clipped to ``max_velocity`` and a position rounded and
    clamped to the interval.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(c.seed)
    rec = _Recorder(d, s, c.sigma)
    positions = [int(v) for v in rng.integers(s.lower, s.upper + 1, size=c.nparticles)]
    velocities = [0.0] * c.nparticles
    pbest = list(positions)
    gbest = pbest[0]
    best: Evaluation | None = None
    for t in range(1, c.max_iterations + 1):
        gbest_ev: Evaluation | None = None
        for i, x in enumerate(positions):
            ev_x = rec.record(t, x)
            ev_p = rec.record(t, pbest[i])
            if ev_x.usable and ev_x.fitness <= ev_p.fitness:
                pbest[i] = x
            ev_g = rec.record(t, gbest)
            if ev_x.usable and ev_x.fitness <= ev_g.fitness:
                gbest = x
                gbest_ev = ev_x
            else:
                gbest_ev = ev_g
        if gbest_ev is not None:
            best = _keep_best(best, gbest_ev)
        for i in range(c.nparticles):
            r1 = float(rng.random())
            r2 = float(rng.random())
            v = (
                c.inertia * velocities[i]
                + c.coef_p * r1 * (pbest[i] - positions[i])
                + c.coef_g * r2 * (gbest - positions[i])
            )
            velocities[i] = min(max(v, -c.max_velocity), c.max_velocity)
            positions[i] = _round_clamp(positions[i] + velocities[i], s)
    return _finish(rec, best, t0)


def _graank_sweep(d: Dataset, c: SearchConfig) -> SearchResult:
    # One pass over every decodable candidate of the dataset's own
    # numeric space; iteration numbers are just the sweep order.
    t0 = time.perf_counter()
    space = build_space(d.m)
    rec = _Recorder(d, space, c.sigma)
    best: Evaluation | None = None
    for t, x in enumerate(enumerate_valid(space), start=1):
        best = _keep_best(best, rec.record(t, x))
    return _finish(rec, best, t0)


_MINERS: dict[str, Callable[[Dataset, SearchSpace, SearchConfig], SearchResult]] = {
    "rs": rs_grad,
    "ls": ls_grad,
    "ga": ga_grad,
    "pso": pso_grad,
}


def run_miner(algorithm: str, d: Dataset, s: SearchSpace, c: SearchConfig) -> SearchResult:
    """Dispatch by name.

    "graank" ignores the space kind and the iteration budget: it sweeps
    every valid candidate of the dataset's own numeric space once.
    """
    if algorithm == "graank":
        return _graank_sweep(d, c)
    try:
        miner = _MINERS[algorithm]
    except KeyError:
        raise ValueError(
            f"unknown algorithm {algorithm!r}; expected one of: {', '.join(ALGORITHMS)}"
        ) from None
    return miner(d, s, c)
