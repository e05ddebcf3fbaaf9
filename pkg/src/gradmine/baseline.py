"""Exhaustive miner: sweep every valid candidate, keep the frequent ones.

This is the completeness reference the stochastic miners are judged
against.  Whatever frequent set a seeded search reports must be a subset
of this output, with identical supports.  The implementation is kept as
plain as possible (enumerate, count, filter, sort) because its job is to
be obviously correct, not fast.
"""

from __future__ import annotations

from .dataset import Dataset
from .encoding import GradualPattern, build_space, enumerate_valid, to_pattern, decode
from .fitness import ConcordanceIndex

FrequentPatterns = tuple[tuple[GradualPattern, float], ...]


def graank_mine(d: Dataset, sigma: float) -> FrequentPatterns:
    """Every pattern of the dataset with support >= ``sigma``.

    Patterns with zero concordant pairs are excluded even at sigma = 0;
    they carry no information and the searchers treat them as unusable.
    Output is sorted by descending support, then ascending candidate
    integer.  Raises ``EnumerationLimitError`` when the attribute count
    makes enumeration unreasonable, mirroring how an exhaustive miner
    falls over on wide data while the stochastic ones keep going.
    """
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"sigma must be in [0, 1], got {sigma}")
    space = build_space(d.m)
    index = ConcordanceIndex(d)
    hits: list[tuple[float, int, GradualPattern]] = []
    for x in enumerate_valid(space):
        pattern = to_pattern(decode(x, space))
        assert isinstance(pattern, GradualPattern)
        pairs = index.count(pattern)
        if pairs == 0:
            continue
        support = pairs / index.pair_count
        if support >= sigma:
            hits.append((support, x, pattern))
    hits.sort(key=lambda h: (-h[0], h[1]))
    return tuple((pattern, support) for support, _, pattern in hits)


def evaluated_candidate_count(d: Dataset) -> int:
    """How many candidates a full sweep evaluates (3^m - 2m - 1)."""
    return 3**d.m - 2 * d.m - 1
