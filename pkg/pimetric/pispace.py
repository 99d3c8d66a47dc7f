"""
The pi-Metric Space

A partition pi = (k_1, ..., k_m) of n splits F_q^n into blocks
F_q^{k_1} + ... + F_q^{k_m}. The pi-weight of a vector is the number of
nonzero blocks and the pi-distance of u and v is the pi-weight of u - v,
i.e. the number of blocks in which they differ. With all k_i = 1 this is
the Hamming metric.

Vector enumeration order is lexicographic in the coordinate indices, first
coordinate most significant. Because blocks are contiguous, the index of a
vector is the mixed-radix number whose digits are the block values (each
block read as a base-q number in [0, q^{k_i})).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from pimetric.errors import (
    FieldMismatch,
    InvalidPartition,
    PartitionNotSorted,
    SpaceMismatch,
    SpaceTooLarge,
    ZeroCode,
)
from pimetric.ffield import FieldElement, FieldSpec
from pimetric.linalg import row_reduce


# Largest space that may be materialised vector by vector.
MAX_ENUMERATION = 2 ** 20


# ============================================================
# PARTITIONS
# ============================================================

@dataclass(frozen=True)
class SizeProfile:
    """
    Distinct block sizes with multiplicities, sizes strictly decreasing.

    entries: ((l_1, m_1), ..., (l_r, m_r)) with l_1 > ... > l_r.
    """

    entries: tuple[tuple[int, int], ...]

    @classmethod
    def from_partition(cls, partition: "Partition") -> "SizeProfile":
        counts = Counter(partition.blocks)
        return cls(tuple((size, counts[size]) for size in sorted(counts, reverse=True)))

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(mult for _, mult in self.entries)


@dataclass(frozen=True)
class Partition:
    """
    A partition pi = (k_1, ..., k_m) with k_1 >= ... >= k_m >= 1.

    Unsorted input is rejected rather than sorted, since sorting would
    silently renumber the blocks.
    """

    blocks: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise InvalidPartition("partition must have at least one block")
        for k in self.blocks:
            if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 1:
                raise InvalidPartition(f"block sizes must be positive integers, got {self.blocks}")
        object.__setattr__(self, "blocks", tuple(int(k) for k in self.blocks))
        if any(a < b for a, b in zip(self.blocks, self.blocks[1:])):
            raise PartitionNotSorted(
                f"block sizes must be non-increasing, got {','.join(map(str, self.blocks))}"
            )

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse comma-separated block sizes such as "2,1"."""
        try:
            blocks = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise InvalidPartition(f"partition must be comma-separated integers, got {text!r}")
        return cls(blocks)

    @classmethod
    def hamming(cls, n: int) -> "Partition":
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return sum(self.blocks)

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def offsets(self) -> tuple[int, ...]:
        """First coordinate of each block."""
        out = []
        pos = 0
        for k in self.blocks:
            out.append(pos)
            pos += k
        return tuple(out)

    def profile(self) -> SizeProfile:
        return SizeProfile.from_partition(self)

    def __str__(self) -> str:
        return ",".join(map(str, self.blocks))


# ============================================================
# THE SPACE (F_q^n, d_pi)
# ============================================================

@dataclass(frozen=True)
class PiSpace:
    """F_q^n with the block structure of a partition."""

    field: FieldSpec
    partition: Partition

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def m(self) -> int:
        return self.partition.m

    @property
    def size(self) -> int:
        return self.field.q ** self.partition.n

    @cached_property
    def block_orders(self) -> tuple[int, ...]:
        """q^{k_i} per block."""
        return tuple(self.q ** k for k in self.partition.blocks)

    @cached_property
    def block_weights(self) -> tuple[int, ...]:
        """Place value of each block value inside a vector index."""
        weights = []
        acc = 1
        for order in reversed(self.block_orders):
            weights.append(acc)
            acc *= order
        return tuple(reversed(weights))

    def describe(self) -> str:
        return f"q={self.q} pi={self.partition}"

    def require_enumerable(self, limit: int = MAX_ENUMERATION) -> None:
        if self.size > limit:
            raise SpaceTooLarge(
                f"space {self.describe()} has {self.size} vectors, limit is {limit}"
            )

    # ---- index <-> block values <-> coordinates ----

    def block_values_of(self, index: int) -> tuple[int, ...]:
        return tuple(
            (index // w) % order for w, order in zip(self.block_weights, self.block_orders)
        )

    def index_from_block_values(self, values: Sequence[int]) -> int:
        return sum(int(v) * w for v, w in zip(values, self.block_weights))

    def block_coords(self, block: int, value: int) -> tuple[int, ...]:
        """Coordinates of a block value, most significant first."""
        k = self.partition.blocks[block]
        out = []
        for _ in range(k):
            value, digit = divmod(value, self.q)
            out.append(digit)
        return tuple(reversed(out))

    def block_value_from_coords(self, coords: Sequence[int]) -> int:
        value = 0
        for c in coords:
            value = value * self.q + int(c)
        return value

    def coords_of(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            index, digit = divmod(index, self.q)
            out.append(digit)
        return tuple(reversed(out))

    def index_of(self, coords: Sequence[int]) -> int:
        return self.block_value_from_coords(coords)

    @cached_property
    def all_block_values(self) -> np.ndarray:
        """(q^n, m) array: block values of every vector in enumeration order."""
        self.require_enumerable()
        idx = np.arange(self.size, dtype=np.int64)
        cols = [(idx // w) % order for w, order in zip(self.block_weights, self.block_orders)]
        arr = np.stack(cols, axis=1)
        arr.flags.writeable = False
        return arr

    @cached_property
    def all_coords(self) -> np.ndarray:
        """(q^n, n) array: coordinates of every vector in enumeration order."""
        self.require_enumerable()
        idx = np.arange(self.size, dtype=np.int64)
        powers = self.q ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        arr = (idx[:, None] // powers[None, :]) % self.q
        arr.flags.writeable = False
        return arr

    @cached_property
    def index_weights(self) -> np.ndarray:
        """Coordinate place values, so index = coords @ index_weights."""
        return self.q ** np.arange(self.n - 1, -1, -1, dtype=np.int64)

    @cached_property
    def block_weight_vector(self) -> np.ndarray:
        return np.array(self.block_weights, dtype=np.int64)

    def vector(self, index: int) -> "BlockVector":
        if not 0 <= index < self.size:
            raise ValueError(f"vector index {index} out of range for {self.describe()}")
        return BlockVector(self.field, self.partition, self.coords_of(index))

    def zero(self) -> "BlockVector":
        return BlockVector(self.field, self.partition, (0,) * self.n)


# ============================================================
# VECTORS
# ============================================================

@dataclass(frozen=True)
class BlockVector:
    """A vector of F_q^n, coordinates stored as element indices."""

    field: FieldSpec
    partition: Partition
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != self.partition.n:
            raise SpaceMismatch(
                f"vector has {len(self.coords)} coordinates, partition needs {self.partition.n}"
            )
        if any(not 0 <= c < self.field.q for c in self.coords):
            raise ValueError(f"coordinates must lie in [0, {self.field.q}): {self.coords}")

    @classmethod
    def from_blocks(
        cls,
        field: FieldSpec,
        blocks: Sequence[Sequence[int]],
    ) -> "BlockVector":
        """Build from per-block coordinate lists; the partition is read off the block lengths."""
        partition = Partition(tuple(len(b) for b in blocks))
        return cls(field, partition, tuple(c for b in blocks for c in b))

    @property
    def space(self) -> PiSpace:
        return PiSpace(self.field, self.partition)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            self.coords[start:start + k]
            for start, k in zip(self.partition.offsets, self.partition.blocks)
        )

    @property
    def index(self) -> int:
        return self.space.index_of(self.coords)

    def _check(self, other: "BlockVector") -> None:
        if self.field != other.field:
            raise SpaceMismatch(f"vectors over GF({self.field.q}) and GF({other.field.q})")
        if self.partition != other.partition:
            raise SpaceMismatch(f"vectors over partitions {self.partition} and {other.partition}")

    def __add__(self, other: "BlockVector") -> "BlockVector":
        self._check(other)
        coords = self.field.add_table[list(self.coords), list(other.coords)]
        return BlockVector(self.field, self.partition, tuple(coords.tolist()))

    def __neg__(self) -> "BlockVector":
        coords = self.field.neg_table[list(self.coords)]
        return BlockVector(self.field, self.partition, tuple(coords.tolist()))

    def __sub__(self, other: "BlockVector") -> "BlockVector":
        self._check(other)
        return self + (-other)

    def scale(self, c: Union[FieldElement, int]) -> "BlockVector":
        if isinstance(c, FieldElement):
            if c.field != self.field:
                raise FieldMismatch(f"scalar from GF({c.field.q}) applied to a GF({self.field.q}) vector")
            c = c.index
        coords = self.field.mul_table[int(c), list(self.coords)]
        return BlockVector(self.field, self.partition, tuple(coords.tolist()))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)


def pi_weight(v: BlockVector) -> int:
    """Number of nonzero blocks of v."""
    return sum(1 for block in v.blocks if any(block))


def pi_distance(u: BlockVector, v: BlockVector) -> int:
    """
    Number of blocks in which u and v differ, i.e. pi_weight(u - v).

    Raises:
        SpaceMismatch: If u and v are not in the same space
    """
    return pi_weight(u - v)


def hamming_distance(u: BlockVector, v: BlockVector) -> int:
    u._check(v)
    return sum(1 for a, b in zip(u.coords, v.coords) if a != b)


def enumerate_vectors(field: FieldSpec, partition: Partition) -> list[BlockVector]:
    """
    All q^n vectors in lexicographic coordinate order.

    Raises:
        SpaceTooLarge: If q^n exceeds MAX_ENUMERATION
    """
    space = PiSpace(field, partition)
    space.require_enumerable()
    return [BlockVector(field, partition, tuple(row)) for row in space.all_coords.tolist()]


def block_distance_rows(space: PiSpace, rows: np.ndarray, others: np.ndarray) -> np.ndarray:
    """
    Pairwise pi-distances between two batches of vectors given as block values.

    rows has shape (a, m), others (b, m); the result has shape (a, b).
    """
    return (rows[:, None, :] != others[None, :, :]).sum(axis=2)


# ============================================================
# LINEAR ERROR-BLOCK CODES
# ============================================================

@dataclass(frozen=True)
class GeneratorMatrix:
    """Rows spanning a linear code; all rows share field and partition."""

    rows: tuple[BlockVector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise ZeroCode("generator matrix has no rows")
        first = self.rows[0]
        for row in self.rows[1:]:
            first._check(row)

    @property
    def space(self) -> PiSpace:
        return self.rows[0].space

    def as_array(self) -> np.ndarray:
        return np.array([row.coords for row in self.rows], dtype=np.int64)


def span_array(field: FieldSpec, basis: np.ndarray) -> np.ndarray:
    """All q^r linear combinations of the rows of basis, as a (q^r, n) array."""
    n = basis.shape[1]
    words = np.zeros((1, n), dtype=np.int64)
    scalars = np.arange(field.q, dtype=np.int64)
    for row in basis:
        scaled = field.mul_table[scalars[:, None], row[None, :]]
        words = field.add_table[words[:, None, :], scaled[None, :, :]].reshape(-1, n)
    return words


def code_min_distance(generator: GeneratorMatrix) -> int:
    """
    Minimum pi-weight over the nonzero codewords of the row space.

    Raises:
        ZeroCode: If the rows span only the zero vector
        SpaceTooLarge: If q^rank exceeds MAX_ENUMERATION
    """
    space = generator.space
    rref, pivots = row_reduce(space.field, generator.as_array())
    r = len(pivots)
    if r == 0:
        raise ZeroCode("the generator matrix spans the zero code")
    if space.q ** r > MAX_ENUMERATION:
        raise SpaceTooLarge(f"code has {space.q ** r} codewords, limit is {MAX_ENUMERATION}")

    words = span_array(space.field, rref[:r])
    nonzero_blocks = np.stack(
        [
            words[:, start:start + k].any(axis=1)
            for start, k in zip(space.partition.offsets, space.partition.blocks)
        ],
        axis=1,
    )
    weights = nonzero_blocks.sum(axis=1)
    return int(weights[weights > 0].min())
