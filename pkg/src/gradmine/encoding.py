"""Integer encodings of gradual-pattern candidates and their search spaces.

A candidate over ``m`` attributes is a string of ``2m`` bits read big-endian.
Attribute 0 owns the two most significant bits; within each pair the first
bit means "increasing" and the second "decreasing".  For three attributes,
``101000`` therefore stands for {attr0+, attr1+} and equals decimal 40.

Two integer domains share this layout:

* the *numeric* space ``[5, sum(2**(2i-1) for i=1..m)]``, whose upper bound
  is the all-increasing candidate and whose lower bound is the smallest
  decodable pattern (the last two attributes decreasing), and
* the *bitmap* space ``[0, 2**(2m) - 1]``, the full bit-string domain kept
  around as a comparison baseline.

Not every integer decodes to a usable pattern: an attribute may carry both
direction bits (a conflict) or fewer than two items may be set.  Such
positions are represented by :class:`InvalidCandidate` rather than raised as
errors, because searchers must be able to land on them and move on.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

#: Largest attribute count for which exhaustive candidate enumeration is
#: allowed (3**m states; beyond this the walk is no longer desk-scale).
MAX_ENUM_ATTRIBUTES = 16


class Direction(enum.Enum):
    """Direction of variation of a gradual item."""

    UP = "+"
    DOWN = "-"

    def flipped(self) -> "Direction":
        return Direction.DOWN if self is Direction.UP else Direction.UP


class SpaceKind(enum.Enum):
    NUMERIC = "numeric"
    BITMAP = "bitmap"


class InvalidReason(enum.Enum):
    """Why an integer position does not decode to a pattern."""

    CONFLICT = "conflict"
    TOO_FEW_ITEMS = "too_few_items"


class EnumerationLimitError(RuntimeError):
    """Raised when exhaustive enumeration would exceed the attribute guard."""

    def __init__(self, m: int, limit: int) -> None:
        super().__init__(
            f"cannot enumerate candidates for {m} attributes (guard: {limit})"
        )
        self.m = m
        self.limit = limit


@dataclass(frozen=True)
class GradualItem:
    """One (attribute, direction) component of a pattern, e.g. "age+"."""

    attribute_index: int
    direction: Direction

    def render(self, names: Sequence[str]) -> str:
        return f"{names[self.attribute_index]}{self.direction.value}"


@dataclass(frozen=True)
class GradualPattern:
    """A set of two or more gradual items over distinct attributes.

    Items are normalised to ascending attribute order on construction.
    """

    items: tuple[GradualItem, ...]

    def __post_init__(self) -> None:
        items = tuple(sorted(self.items, key=lambda it: it.attribute_index))
        if len(items) < 2:
            raise ValueError("a gradual pattern needs at least two items")
        indexes = [it.attribute_index for it in items]
        if len(set(indexes)) != len(indexes):
            raise ValueError(f"conflicting items on attributes {indexes}")
        if indexes[0] < 0:
            raise ValueError("attribute indexes must be non-negative")
        object.__setattr__(self, "items", items)

    def __len__(self) -> int:
        return len(self.items)

    def attribute_indexes(self) -> tuple[int, ...]:
        return tuple(it.attribute_index for it in self.items)

    def complement(self) -> "GradualPattern":
        """The same attributes with every direction flipped."""
        return GradualPattern(
            tuple(
                GradualItem(it.attribute_index, it.direction.flipped())
                for it in self.items
            )
        )

    def render(self, names: Sequence[str]) -> str:
        """Text form used by the CLI and reports: ``{age+, sessions-}``."""
        return "{" + ", ".join(it.render(names) for it in self.items) + "}"


@dataclass(frozen=True)
class InvalidCandidate:
    """Marker for a position that does not decode to a pattern."""

    reason: InvalidReason


PatternOrInvalid = Union[GradualPattern, InvalidCandidate]


@dataclass(frozen=True)
class BitVector:
    """A ``2m``-bit candidate encoding; ``bits[0]`` is most significant."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bits) < 4 or len(self.bits) % 2:
            raise ValueError("bit vector length must be an even number >= 4")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    @property
    def m(self) -> int:
        return len(self.bits) // 2

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class SearchSpace:
    """An inclusive integer interval whose points decode to candidates."""

    kind: SpaceKind
    m: int
    lower: int
    upper: int

    @property
    def size(self) -> int:
        return self.upper - self.lower + 1

    def contains(self, x: int) -> bool:
        return self.lower <= x <= self.upper


def build_space(m: int, kind: SpaceKind = SpaceKind.NUMERIC) -> SearchSpace:
    """Construct the numeric or bitmap search space for ``m`` attributes."""
    if m < 2:
        raise ValueError(f"need at least 2 attributes, got {m}")
    if kind is SpaceKind.NUMERIC:
        upper = sum(2 ** (2 * i - 1) for i in range(1, m + 1))
        return SearchSpace(kind, m, 5, upper)
    return SearchSpace(kind, m, 0, 2 ** (2 * m) - 1)


def decode(x: int, space: SearchSpace) -> BitVector:
    """The big-endian ``2m``-bit representation of an in-bounds integer."""
    if not space.contains(x):
        raise ValueError(
            f"{x} outside [{space.lower}, {space.upper}] of the {space.kind.value} space"
        )
    width = 2 * space.m
    return BitVector(tuple((x >> (width - 1 - j)) & 1 for j in range(width)))


def encode(b: BitVector) -> int:
    """The integer whose binary expansion equals the bit vector."""
    value = 0
    for bit in b.bits:
        value = (value << 1) | bit
    return value


def to_pattern(b: BitVector) -> PatternOrInvalid:
    """Decode a bit vector into a pattern, or report why it is unusable.

    Bit ``2i`` marks (attribute i, up) and bit ``2i+1`` (attribute i, down).
    A conflict (both bits of one attribute) takes precedence over having
    fewer than two items.
    """
    items: list[GradualItem] = []
    for i in range(b.m):
        up, down = b.bits[2 * i], b.bits[2 * i + 1]
        if up and down:
            return InvalidCandidate(InvalidReason.CONFLICT)
        if up:
            items.append(GradualItem(i, Direction.UP))
        elif down:
            items.append(GradualItem(i, Direction.DOWN))
    if len(items) < 2:
        return InvalidCandidate(InvalidReason.TOO_FEW_ITEMS)
    return GradualPattern(tuple(items))


def pattern_to_vector(pattern: GradualPattern, m: int) -> BitVector:
    """Inverse of :func:`to_pattern` for a given attribute count."""
    if pattern.attribute_indexes()[-1] >= m:
        raise ValueError("pattern references an attribute beyond the space")
    bits = [0] * (2 * m)
    for item in pattern.items:
        offset = 0 if item.direction is Direction.UP else 1
        bits[2 * item.attribute_index + offset] = 1
    return BitVector(tuple(bits))


def is_valid(x: int, space: SearchSpace) -> bool:
    """True iff the in-bounds integer decodes to a gradual pattern."""
    return isinstance(to_pattern(decode(x, space)), GradualPattern)


def _valid_integers(m: int) -> Iterator[int]:
    # Per attribute: absent, up (bit 2i) or down (bit 2i+1); at least two
    # items present.  Walks 3**m states instead of the full interval.
    width = 2 * m
    weights = [
        (0, 1 << (width - 1 - 2 * i), 1 << (width - 2 - 2 * i)) for i in range(m)
    ]
    for states in itertools.product((0, 1, 2), repeat=m):
        present = sum(1 for s in states if s)
        if present < 2:
            continue
        yield sum(weights[i][s] for i, s in enumerate(states))


def enumerate_valid(space: SearchSpace) -> list[int]:
    """All in-bounds integers that decode to patterns, in ascending order."""
    if space.m > MAX_ENUM_ATTRIBUTES:
        raise EnumerationLimitError(space.m, MAX_ENUM_ATTRIBUTES)
    return sorted(_valid_integers(space.m))
