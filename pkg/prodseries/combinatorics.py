"""
Combinatorial objects behind the coefficient formula.

Integer partitions, permutations with their cycle structure and sign, and
set partitions of {1, ..., m}. All values are immutable; enumeration orders
are fixed so that streamed output is reproducible:

- partitions: lexicographic on the non-decreasing parts,
- permutations: lexicographic on the image sequence,
- set partitions: restricted growth string order.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import total_ordering

from .const import (
    DEFAULT_DIRECT_PATH_LENGTH,
    DEFAULT_PERMUTATION_CAP,
    DEFAULT_SET_PARTITION_CAP,
)
from .exceptions import InvalidArgumentError, ResourceLimitError

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class EnumerationCaps:
    """Hard limits on the size of enumerated groups."""

    permutations: int = DEFAULT_PERMUTATION_CAP
    set_partitions: int = DEFAULT_SET_PARTITION_CAP
    direct_path_length: int = DEFAULT_DIRECT_PATH_LENGTH

    def __post_init__(self) -> None:
        """Validate the caps."""
        for name in ("permutations", "set_partitions", "direct_path_length"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                msg = f"Cap {name} must be a positive integer, got {value!r}"
                raise InvalidArgumentError(msg)


DEFAULT_CAPS = EnumerationCaps()


def _require_positive(value: object, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        msg = f"{name} must be a positive integer, got {value!r}"
        raise InvalidArgumentError(msg)
    return value


@total_ordering
@dataclass(frozen=True, slots=True)
class Partition:
    """
    A non-ordered tuple of positive integers.

    Parts are stored sorted non-decreasing, so two partitions are equal
    exactly when they hold the same multiset. Partitions are totally ordered
    by (sum, length, parts).
    """

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        """Check and canonicalize the parts."""
        parts = tuple(self.parts)
        for part in parts:
            if isinstance(part, bool) or not isinstance(part, int) or part < 1:
                msg = f"Partition parts must be positive integers, got {parts!r}"
                raise InvalidArgumentError(msg)
        object.__setattr__(self, "parts", tuple(sorted(parts)))

    @classmethod
    def of(cls, *parts: int) -> Partition:
        """Build a partition from its parts in any order."""
        return cls(parts)

    @property
    def size(self) -> int:
        """Return the number partitioned, sum of parts."""
        return sum(self.parts)

    @property
    def length(self) -> int:
        """Return the number of parts."""
        return len(self.parts)

    @property
    def sort_key(self) -> tuple[int, int, tuple[int, ...]]:
        """Return the key of the total order on partitions."""
        return (sum(self.parts), len(self.parts), self.parts)

    def multiplicities(self) -> dict[int, int]:
        """Return how often each distinct part occurs."""
        return dict(Counter(self.parts))

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(str(part) for part in self.parts) + "]"


def partitions_of(k: int) -> list[Partition]:
    """Return every partition of k once, lexicographic on sorted parts."""
    _require_positive(k, "k")
    found = [Partition(tuple(parts)) for parts in _ascending_compositions(k)]
    found.sort(key=lambda partition: partition.parts)
    return found


def _ascending_compositions(n: int) -> Iterator[list[int]]:
    # accel_asc: every partition of n as a non-decreasing list
    a = [0] * (n + 1)
    k = 1
    y = n - 1
    while k != 0:
        x = a[k - 1] + 1
        k -= 1
        while 2 * x <= y:
            a[k] = x
            y -= x
            k += 1
        last = k + 1
        while x <= y:
            a[k] = x
            a[last] = y
            yield a[: k + 2]
            x += 1
            y -= 1
        a[k] = x + y
        y = x + y - 1
        yield a[: k + 1]


def partition_number(k: int) -> int:
    """Return p(k) by the pentagonal number recurrence."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        msg = f"k must be a non-negative integer, got {k!r}"
        raise InvalidArgumentError(msg)
    counts = [1] + [0] * k
    for n in range(1, k + 1):
        total = 0
        for j in itertools.count(1):
            first = j * (3 * j - 1) // 2
            if first > n:
                break
            sign = 1 if j % 2 else -1
            total += sign * counts[n - first]
            second = j * (3 * j + 1) // 2
            if second <= n:
                total += sign * counts[n - second]
        counts[n] = total
    return counts[k]


def stabilizer_count(partition: Partition) -> int:
    """Return the product of factorials of the part multiplicities."""
    if not partition.parts:
        msg = "Stabilizer count of an empty partition is undefined"
        raise InvalidArgumentError(msg)
    return math.prod(
        math.factorial(count) for count in Counter(partition.parts).values()
    )


def length(partition: Partition) -> int:
    """Return the number of parts."""
    return len(partition.parts)


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of {1, ..., m}; entry i - 1 of images is sigma(i)."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        """Check that images is a rearrangement of 1..m."""
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            msg = f"Not a permutation of 1..{len(images)}: {images!r}"
            raise InvalidArgumentError(msg)
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> Permutation:
        """Return the identity on m points."""
        return cls(tuple(range(1, m + 1)))

    @property
    def size(self) -> int:
        """Return m."""
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]


def cycles_of_images(images: Sequence[int], base: int = 1) -> list[tuple[int, ...]]:
    """
    Return the cycles of a permutation given by its image sequence.

    Points are numbered from ``base``. Length-one cycles are kept and every
    cycle starts at its smallest point, cycles ordered by that point.
    """
    size = len(images)
    visited = [False] * size
    cycles: list[tuple[int, ...]] = []
    for start in range(size):
        if visited[start]:
            continue
        cycle = []
        point = start
        while not visited[point]:
            visited[point] = True
            cycle.append(point + base)
            point = images[point] - base
        cycles.append(tuple(cycle))
    return cycles


@dataclass(frozen=True, slots=True)
class CycleDecomposition:
    """Disjoint cycles covering {1, ..., m}, fixed points included."""

    cycles: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        """Check disjointness and coverage, then rotate and sort the cycles."""
        cycles = [tuple(cycle) for cycle in self.cycles]
        points = [point for cycle in cycles for point in cycle]
        if any(not cycle for cycle in cycles):
            msg = "Cycles must be non-empty"
            raise InvalidArgumentError(msg)
        if sorted(points) != list(range(1, len(points) + 1)):
            msg = f"Cycles must partition 1..{len(points)}: {self.cycles!r}"
            raise InvalidArgumentError(msg)
        rotated = []
        for cycle in cycles:
            pivot = cycle.index(min(cycle))
            rotated.append(cycle[pivot:] + cycle[:pivot])
        object.__setattr__(self, "cycles", tuple(sorted(rotated)))

    @property
    def size(self) -> int:
        """Return m, the number of points covered."""
        return sum(len(cycle) for cycle in self.cycles)

    def __len__(self) -> int:
        return len(self.cycles)

    def __str__(self) -> str:
        return "".join(
            "(" + " ".join(str(point) for point in cycle) + ")"
            for cycle in self.cycles
        )


def cycle_decomposition(permutation: Permutation) -> CycleDecomposition:
    """Return the disjoint-cycle form of a permutation."""
    return CycleDecomposition(tuple(cycles_of_images(permutation.images)))


def permutation_from_cycles(
    cycles: CycleDecomposition | Iterable[Sequence[int]],
    m: int | None = None,
) -> Permutation:
    """Rebuild a permutation from its cycles."""
    if not isinstance(cycles, CycleDecomposition):
        cycles = CycleDecomposition(tuple(tuple(cycle) for cycle in cycles))
    if m is not None and m != cycles.size:
        msg = f"Cycles cover {cycles.size} points, expected {m}"
        raise InvalidArgumentError(msg)
    images = [0] * cycles.size
    for cycle in cycles.cycles:
        for index, point in enumerate(cycle):
            images[point - 1] = cycle[(index + 1) % len(cycle)]
    return Permutation(tuple(images))


def sign(permutation: Permutation) -> int:
    """Return the parity of a permutation as +1 or -1."""
    cycle_count = len(cycles_of_images(permutation.images))
    return -1 if (permutation.size - cycle_count) % 2 else 1


def cycle_type(permutation: Permutation) -> Partition:
    """Return the sorted cycle lengths."""
    return Partition(tuple(len(c) for c in cycles_of_images(permutation.images)))


def conjugacy_class_size(cycle_lengths: Partition) -> int:
    """Return how many permutations of m points have the given cycle type."""
    m = cycle_lengths.size
    denominator = 1
    for part, count in Counter(cycle_lengths.parts).items():
        denominator *= part**count * math.factorial(count)
    return math.factorial(m) // denominator


def _check_cap(m: int, cap: int, cap_name: str, hint: str = "") -> None:
    _require_positive(m, "m")
    if m > cap:
        raise ResourceLimitError(cap_name, cap, m, hint)


def permutations_of(m: int, caps: EnumerationCaps | None = None) -> Iterator[Permutation]:
    """Yield every element of S_m once, lexicographic on images."""
    caps = caps or DEFAULT_CAPS
    _check_cap(m, caps.permutations, "permutation")
    _LOGGER.debug("Enumerating %s permutations of %s points", math.factorial(m), m)
    return (
        Permutation(images) for images in itertools.permutations(range(1, m + 1))
    )


@dataclass(frozen=True, slots=True)
class SetPartition:
    """Disjoint non-empty blocks covering {1, ..., m}."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        """Check the blocks and sort them by their least element."""
        blocks = [tuple(sorted(block)) for block in self.blocks]
        if any(not block for block in blocks):
            msg = "Set partition blocks must be non-empty"
            raise InvalidArgumentError(msg)
        points = sorted(point for block in blocks for point in block)
        if points != list(range(1, len(points) + 1)):
            msg = f"Blocks must partition 1..{len(points)}: {self.blocks!r}"
            raise InvalidArgumentError(msg)
        object.__setattr__(self, "blocks", tuple(sorted(blocks)))

    @classmethod
    def from_restricted_growth(cls, labels: Sequence[int]) -> SetPartition:
        """Build the set partition whose point i sits in block labels[i - 1]."""
        blocks: dict[int, list[int]] = {}
        for point, label in enumerate(labels, start=1):
            blocks.setdefault(label, []).append(point)
        return cls(tuple(tuple(block) for block in blocks.values()))

    @property
    def size(self) -> int:
        """Return m, the number of points covered."""
        return sum(len(block) for block in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


def induced_set_partition(permutation: Permutation) -> SetPartition:
    """Return the set partition formed by the supports of the cycles."""
    return SetPartition(tuple(cycles_of_images(permutation.images)))


def restricted_growth_strings(m: int) -> Iterator[tuple[int, ...]]:
    """
    Yield the restricted growth strings of length m in lexicographic order.

    Entry i is the 0-based block label of point i + 1; each label is at most
    one more than every label before it.
    """
    labels = [0] * m
    # ceiling[i] is the largest label point i may take: 1 + max(labels[:i])
    ceiling = [1] * m
    ceiling[0] = 0
    while True:
        yield tuple(labels)
        j = m - 1
        while j > 0 and labels[j] == ceiling[j]:
            j -= 1
        if j == 0:
            return
        labels[j] += 1
        following = max(ceiling[j], labels[j] + 1)
        for i in range(j + 1, m):
            labels[i] = 0
            ceiling[i] = following


def set_partitions_of(
    m: int,
    caps: EnumerationCaps | None = None,
) -> Iterator[SetPartition]:
    """Yield every set partition of {1, ..., m} once, in RGS order."""
    caps = caps or DEFAULT_CAPS
    _check_cap(m, caps.set_partitions, "set partition")
    return (
        SetPartition.from_restricted_growth(labels)
        for labels in restricted_growth_strings(m)
    )
