"""Concordant-pair counting, frequency support and candidate fitness.

A pattern's support is the fraction of unordered object pairs that admit an
orientation under which every item's attribute strictly moves in its stated
direction; ties on any item's attribute disqualify the pair.  Fitness is the
inverse of the concordant-pair count, so minimising fitness maximises
support.  Candidates that decode to no pattern, or to a pattern with zero
concordant pairs, get an infinite fitness sentinel: searchers compare
against them but never keep them.

Two counting routes are provided on purpose: :class:`ConcordanceIndex`
(vectorised, reusable) and :func:`concordant_count_brute` (a literal
pair-by-pair scan kept as the reference the fast path is tested against).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, object_pair_count
from .encoding import (
    Direction,
    GradualPattern,
    InvalidCandidate,
    PatternOrInvalid,
    SearchSpace,
    decode,
    to_pattern,
)

#: Fitness assigned to unusable candidates (invalid or zero support).
INFINITE_FITNESS = math.inf


@dataclass(frozen=True)
class Evaluation:
    """Everything the objective function knows about one candidate."""

    candidate: int
    pattern: PatternOrInvalid
    concordant_pairs: int
    support: float
    fitness: float

    @property
    def usable(self) -> bool:
        """True when the candidate can compete for best/pbest/gbest."""
        return math.isfinite(self.fitness)


def _check_indexes(pattern: GradualPattern, d: Dataset) -> None:
    last = pattern.attribute_indexes()[-1]
    if last >= d.m:
        raise ValueError(f"attribute index {last} out of range for m={d.m}")


class ConcordanceIndex:
    """Per-attribute strict-order matrices, built once per dataset.

    ``lt[a][i, j]`` is True when attribute ``a`` strictly increases from
    object ``i`` to object ``j``; a pattern's ordered concordance is the
    AND over its items (transposing for decreasing items).  Each unordered
    concordant pair is True in exactly one orientation, so summing the
    ordered matrix counts unordered pairs directly.
    """

    def __init__(self, d: Dataset) -> None:
        self.m = d.m
        self.pair_count = object_pair_count(d)
        self._lt = np.asarray(d.values[:, None, :] < d.values[None, :, :])

    def count(self, pattern: GradualPattern) -> int:
        if pattern.attribute_indexes()[-1] >= self.m:
            raise ValueError("attribute index out of range for this dataset")
        holds: np.ndarray | None = None
        for item in pattern.items:
            mat = self._lt[:, :, item.attribute_index]
            if item.direction is Direction.DOWN:
                mat = mat.T
            holds = mat if holds is None else holds & mat
        assert holds is not None
        return int(holds.sum())


def concordant_count(pattern: GradualPattern, d: Dataset) -> int:
    """Unordered object pairs respecting every item of the pattern."""
    _check_indexes(pattern, d)
    return ConcordanceIndex(d).count(pattern)


def concordant_count_brute(pattern: GradualPattern, d: Dataset) -> int:
    """Reference implementation: scan every ordered pair, bail on the
    first item that fails.  Kept deliberately naive."""
    _check_indexes(pattern, d)
    values = d.values
    count = 0
    for i in range(d.n):
        for j in range(d.n):
            if i == j:
                continue
            ok = True
            for item in pattern.items:
                a = values[i, item.attribute_index]
                b = values[j, item.attribute_index]
                if item.direction is Direction.UP:
                    if not a < b:
                        ok = False
                        break
                else:
                    if not a > b:
                        ok = False
                        break
            if ok:
                count += 1
    return count


def support(pattern: GradualPattern, d: Dataset) -> float:
    """Concordant pairs divided by n(n-1)/2, in [0, 1]."""
    return concordant_count(pattern, d) / object_pair_count(d)


def evaluate_with_index(x: int, space: SearchSpace, index: ConcordanceIndex) -> Evaluation:
    """Like :func:`fitness_of` but reusing a prebuilt index."""
    pattern = to_pattern(decode(x, space))
    if isinstance(pattern, InvalidCandidate):
        return Evaluation(x, pattern, 0, 0.0, INFINITE_FITNESS)
    pairs = index.count(pattern)
    sup = pairs / index.pair_count
    fit = 1.0 / pairs if pairs > 0 else INFINITE_FITNESS
    return Evaluation(x, pattern, pairs, sup, fit)


def fitness_of(x: int, space: SearchSpace, d: Dataset) -> Evaluation:
    """Evaluate one integer position of the search space against a dataset."""
    return evaluate_with_index(x, space, ConcordanceIndex(d))


def is_frequent(e: Evaluation, sigma: float) -> bool:
    """True iff the evaluation's support meets the threshold."""
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"sigma must be in [0, 1], got {sigma}")
    return e.support >= sigma
