"""
Symmetries of (F_q^n, d_pi)

A symmetry is a distance-preserving bijection of F_q^n. Every symmetry F
factors uniquely as F = sigma T where T = (T_1, ..., T_m) acts on each block
by a bijection T_i and sigma is an admissible block permutation (one that
only exchanges blocks of equal size). The group is the semidirect product
of the admissible permutations with the block-bijection group M:

    (sigma, T)(phi, S) = (sigma phi, (phi^-1 T phi) S)
    phi^-1 T phi       = (T_phi(1), ..., T_phi(m))

Conventions used throughout:

    - sigma acts on vectors by (sigma . v)_j = v_{sigma^-1(j)}: block i moves
      to slot sigma(i).
    - sigma T means "apply T first, then sigma".
    - A translation v -> v + v0 is blockwise a bijection, so it is an element
      of M; decompose never produces a separate translation part.

Two representations are used. ExplicitMap is a full lookup table over the
enumerated vectors (small spaces only). StructuredSymmetry is the pair
(sigma, T) with one lookup table per block.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterator, Optional, Sequence

import numpy as np

from pimetric.errors import (
    NotAdmissible,
    NotASymmetry,
    NotBijective,
    SeparabilityViolation,
    SpaceMismatch,
)
from pimetric.permutations import (
    Perm,
    compose_perm,
    identity_perm,
    invert_perm,
    is_permutation,
)
from pimetric.pispace import BlockVector, Partition, PiSpace


# ============================================================
# EXPLICIT MAPS
# ============================================================

@dataclass(frozen=True)
class ExplicitMap:
    """
    A map of F_q^n as a lookup table over vector indices.

    table[i] is the index of the image of the i-th vector in enumeration
    order. Non-bijective tables are representable so they can be reported;
    is_symmetry raises NotBijective for them.
    """

    space: PiSpace
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        self.space.require_enumerable()
        object.__setattr__(self, "table", tuple(int(t) for t in self.table))
        if len(self.table) != self.space.size:
            raise SpaceMismatch(
                f"map table has {len(self.table)} entries, space {self.space.describe()} "
                f"has {self.space.size} vectors"
            )
        if any(not 0 <= t < self.space.size for t in self.table):
            raise ValueError(f"map table entries must lie in [0, {self.space.size})")

    @classmethod
    def identity(cls, space: PiSpace) -> "ExplicitMap":
        return cls(space, tuple(range(space.size)))

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    @property
    def is_bijective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def require_bijective(self) -> None:
        if not self.is_bijective:
            hit = set(self.table)
            missing = next(i for i in range(self.space.size) if i not in hit)
            raise NotBijective(f"map table is not a permutation; vector {missing} has no preimage")

    def __call__(self, v: BlockVector) -> BlockVector:
        if v.space != self.space:
            raise SpaceMismatch(f"vector from {v.space.describe()} applied to a map on {self.space.describe()}")
        return self.space.vector(self.table[v.index])

    def compose(self, other: "ExplicitMap") -> "ExplicitMap":
        """self ∘ other (apply other first)."""
        if other.space != self.space:
            raise SpaceMismatch("cannot compose maps on different spaces")
        return ExplicitMap(self.space, tuple(self.array[other.array].tolist()))

    def inverse(self) -> "ExplicitMap":
        self.require_bijective()
        return ExplicitMap(self.space, invert_perm(self.table))


# ============================================================
# BLOCK BIJECTIONS AND STRUCTURED SYMMETRIES
# ============================================================

@dataclass(frozen=True)
class BlockBijection:
    """A bijection of F_q^k given as a table over block values."""

    q: int
    block_size: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(int(t) for t in self.table))
        if not is_permutation(self.table, self.q ** self.block_size):
            raise NotBijective(
                f"block table must be a permutation of [0, {self.q ** self.block_size})"
            )

    @classmethod
    def identity(cls, q: int, block_size: int) -> "BlockBijection":
        return cls(q, block_size, tuple(range(q ** block_size)))

    @property
    def is_identity(self) -> bool:
        return all(i == t for i, t in enumerate(self.table))

    def __call__(self, value: int) -> int:
        return self.table[value]

    def compose(self, other: "BlockBijection") -> "BlockBijection":
        """self ∘ other (apply other first)."""
        if (other.q, other.block_size) != (self.q, self.block_size):
            raise SpaceMismatch("cannot compose bijections of different blocks")
        return BlockBijection(self.q, self.block_size, compose_perm(self.table, other.table))

    def inverse(self) -> "BlockBijection":
        return BlockBijection(self.q, self.block_size, invert_perm(self.table))


def is_admissible(sigma: Sequence[int], partition: Partition) -> bool:
    """True iff sigma permutes the blocks and only maps blocks onto blocks of equal size."""
    if not is_permutation(sigma, partition.m):
        return False
    k = partition.blocks
    return all(k[sigma[i]] == k[i] for i in range(partition.m))


@dataclass(frozen=True)
class StructuredSymmetry:
    """
    The pair (sigma, T): apply the block bijections T_i, then move block i
    to slot sigma(i). Elements with sigma = id form M; elements with every
    T_i = id are the block permutations.
    """

    space: PiSpace
    sigma: Perm
    blocks: tuple[BlockBijection, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))
        object.__setattr__(self, "blocks", tuple(self.blocks))
        partition = self.space.partition
        if not is_admissible(self.sigma, partition):
            raise NotAdmissible(
                f"sigma {self.sigma} is not an admissible permutation for pi={partition}"
            )
        if len(self.blocks) != partition.m:
            raise SpaceMismatch(f"expected {partition.m} block tables, got {len(self.blocks)}")
        for i, (block, k) in enumerate(zip(self.blocks, partition.blocks)):
            if block.q != self.space.q or block.block_size != k:
                raise SpaceMismatch(
                    f"block {i + 1} table acts on GF({block.q})^{block.block_size}, "
                    f"expected GF({self.space.q})^{k}"
                )

    @property
    def is_in_m(self) -> bool:
        return self.sigma == identity_perm(len(self.sigma))

    @property
    def is_block_permutation(self) -> bool:
        return all(b.is_identity for b in self.blocks)


def identity_symmetry(space: PiSpace) -> StructuredSymmetry:
    return permutation_symmetry(space, identity_perm(space.m))


def permutation_symmetry(space: PiSpace, sigma: Sequence[int]) -> StructuredSymmetry:
    """The block permutation sigma with identity block maps (a linear symmetry)."""
    blocks = tuple(BlockBijection.identity(space.q, k) for k in space.partition.blocks)
    return StructuredSymmetry(space, tuple(sigma), blocks)


def translation_symmetry(space: PiSpace, offset: BlockVector) -> StructuredSymmetry:
    """The translation v -> v + offset, as an element of M."""
    if offset.space != space:
        raise SpaceMismatch("translation vector is from a different space")
    add = space.field.add_table
    blocks = []
    for i, (k, order) in enumerate(zip(space.partition.blocks, space.block_orders)):
        shift = np.array(offset.blocks[i], dtype=np.int64)
        table = []
        for value in range(order):
            coords = add[np.array(space.block_coords(i, value), dtype=np.int64), shift]
            table.append(space.block_value_from_coords(coords.tolist()))
        blocks.append(BlockBijection(space.q, k, tuple(table)))
    return StructuredSymmetry(space, identity_perm(space.m), tuple(blocks))


# ============================================================
# APPLICATION AND EXPANSION
# ============================================================

def apply_structured(s: StructuredSymmetry, v: BlockVector) -> BlockVector:
    """
    Image of v: block i of v goes through T_i and lands in slot sigma(i).

    Raises:
        SpaceMismatch: If v is not in the space of s
    """
    if v.space != s.space:
        raise SpaceMismatch(f"vector from {v.space.describe()} applied to a symmetry of {s.space.describe()}")
    values = s.space.block_values_of(v.index)
    out = [0] * s.space.m
    for i, value in enumerate(values):
        out[s.sigma[i]] = s.blocks[i](value)
    return s.space.vector(s.space.index_from_block_values(out))


def expand(s: StructuredSymmetry) -> ExplicitMap:
    """
    Full lookup table of a structured symmetry.

    Raises:
        SpaceTooLarge: If the space has more than MAX_ENUMERATION vectors
    """
    space = s.space
    values = space.all_block_values
    moved = np.empty_like(values)
    for i, block in enumerate(s.blocks):
        moved[:, s.sigma[i]] = np.asarray(block.table, dtype=np.int64)[values[:, i]]
    return ExplicitMap(space, tuple((moved @ space.block_weight_vector).tolist()))


# ============================================================
# RECOGNITION
# ============================================================

def symmetry_witness(f: ExplicitMap) -> Optional[tuple[int, int]]:
    """
    Lexicographically first pair of vector indices (u, v), u < v, whose
    distance f changes.

    Pairs are scanned row by row over all q^n (q^n - 1) / 2 pairs, so when
    several pairs fail the smallest u and then the smallest v is returned.
    For the map swapping 0|0 and 0|1 on q=2, pi=(1,1) that is (0, 2), the
    vectors 0|0 and 1|0, although 0|0 and 1|1 is also a witness.

    Raises:
        NotBijective: If the table is not a permutation
    """
    f.require_bijective()
    values = f.space.all_block_values
    images = values[f.array]
    for u in range(f.space.size - 1):
        before = (values[u] != values[u + 1:]).sum(axis=1)
        after = (images[u] != images[u + 1:]).sum(axis=1)
        bad = np.flatnonzero(before != after)
        if bad.size:
            return u, u + 1 + int(bad[0])
    return None


def is_symmetry(f: ExplicitMap) -> bool:
    """
    True iff f preserves the pi-distance of every pair of vectors.

    Raises:
        NotBijective: If the table is not a permutation
    """
    return symmetry_witness(f) is None


def coset_violation(f: ExplicitMap) -> Optional[tuple[int, int]]:
    """
    First (v, i) where the image of the coset v + V_i is not a full coset
    f(v) + V_j of a block j with k_j = k_i; None if there is none.

    v is a vector index and i a 0-based block index.
    """
    space = f.space
    values = space.all_block_values
    sizes = space.partition.blocks
    for v in range(space.size):
        image_values = values[f.table[v]]
        for i, (weight, order) in enumerate(zip(space.block_weights, space.block_orders)):
            base = v - int(values[v, i]) * weight
            members = f.array[base + np.arange(order, dtype=np.int64) * weight]
            changed = np.flatnonzero((values[members] != image_values).any(axis=0))
            if changed.size != 1:
                return v, i
            j = int(changed[0])
            if sizes[j] != sizes[i] or np.unique(members).size != order:
                return v, i
    return None


def induced_permutation(f: ExplicitMap, assume_symmetry: bool = False) -> Perm:
    """
    The admissible permutation sigma_F with F(V_i) = F(0) + V_{sigma_F(i)}.

    Every nonzero element of V_i is checked, so a map whose coset images are
    not of that form is rejected rather than guessed at.

    Args:
        f: The map
        assume_symmetry: Skip the quadratic is_symmetry check when the
            caller has already established it

    Raises:
        NotASymmetry: If f is not a symmetry or the coset image is not a
            single coset F(0) + V_j
    """
    if not assume_symmetry and not is_symmetry(f):
        raise NotASymmetry("map does not preserve the pi-distance")

    space = f.space
    values = space.all_block_values
    sizes = space.partition.blocks
    origin = values[f.table[0]]
    sigma = []
    for i, (weight, order) in enumerate(zip(space.block_weights, space.block_orders)):
        members = np.arange(1, order, dtype=np.int64) * weight
        changed = values[f.array[members]] != origin
        per_row = changed.sum(axis=1)
        if (per_row != 1).any():
            raise NotASymmetry(f"image of block {i + 1} is not a translate of a single block")
        targets = np.unique(np.argmax(changed, axis=1))
        if targets.size != 1:
            raise NotASymmetry(f"block {i + 1} is spread over blocks {(targets + 1).tolist()}")
        j = int(targets[0])
        if sizes[j] != sizes[i]:
            raise NotASymmetry(f"block {i + 1} (size {sizes[i]}) maps onto block {j + 1} (size {sizes[j]})")
        sigma.append(j)
    if not is_permutation(sigma):
        raise NotASymmetry(f"induced block map {[s + 1 for s in sigma]} is not a permutation")
    return tuple(sigma)


def decompose(
    f: ExplicitMap,
    validate: bool = False,
    assume_symmetry: bool = False,
) -> StructuredSymmetry:
    """
    Factor a symmetry as sigma_F T with T = sigma_F^-1 ∘ F in M.

    T_i(x) is read off as block i of (sigma_F^-1 ∘ F)(x placed in block i).
    When F(0) != 0 the translation part is absorbed into the T_i.

    Args:
        f: A symmetry
        validate: Also check that every block of sigma_F^-1 ∘ F depends
            only on the same block of the input (O(q^n m))
        assume_symmetry: Skip the quadratic is_symmetry check

    Raises:
        NotASymmetry: If f is not a symmetry
        SeparabilityViolation: If validate is on and separability fails
    """
    sigma = induced_permutation(f, assume_symmetry=assume_symmetry)
    space = f.space
    values = space.all_block_values
    # (sigma^-1 . w)_i = w_{sigma(i)}
    pulled = values[f.array][:, list(sigma)]

    blocks = []
    for i, (k, weight, order) in enumerate(
        zip(space.partition.blocks, space.block_weights, space.block_orders)
    ):
        column = pulled[np.arange(order, dtype=np.int64) * weight, i]
        blocks.append(BlockBijection(space.q, k, tuple(column.tolist())))

    if validate:
        for i, block in enumerate(blocks):
            expected = np.asarray(block.table, dtype=np.int64)[values[:, i]]
            bad = np.flatnonzero(expected != pulled[:, i])
            if bad.size:
                raise SeparabilityViolation(
                    f"block {i + 1} of the image of vector {int(bad[0])} depends on other blocks"
                )

    return StructuredSymmetry(space, sigma, tuple(blocks))


# ============================================================
# GROUP LAW
# ============================================================

def conjugate_by_permutation(
    blocks: Sequence[BlockBijection],
    sigma: Sequence[int],
) -> tuple[BlockBijection, ...]:
    """
    sigma^-1 T sigma = (T_sigma(1), ..., T_sigma(m)).

    Raises:
        NotAdmissible: If sigma is not a permutation of the blocks or moves
            a block onto one of a different size
    """
    if not is_permutation(sigma, len(blocks)):
        raise NotAdmissible(f"{tuple(sigma)} is not a permutation of {len(blocks)} blocks")
    for i, image in enumerate(sigma):
        if blocks[image].block_size != blocks[i].block_size:
            raise NotAdmissible(
                f"sigma maps block {i + 1} (size {blocks[i].block_size}) "
                f"to block {image + 1} (size {blocks[image].block_size})"
            )
    return tuple(blocks[image] for image in sigma)


def compose(a: StructuredSymmetry, b: StructuredSymmetry) -> StructuredSymmetry:
    """
    The product a ∘ b (apply b first): (sigma, T)(phi, S) = (sigma phi, (phi^-1 T phi) S).

    Raises:
        SpaceMismatch: If a and b act on different spaces
    """
    if a.space != b.space:
        raise SpaceMismatch("cannot compose symmetries of different spaces")
    conjugated = conjugate_by_permutation(a.blocks, b.sigma)
    blocks = tuple(c.compose(s) for c, s in zip(conjugated, b.blocks))
    return StructuredSymmetry(a.space, compose_perm(a.sigma, b.sigma), blocks)


def invert(s: StructuredSymmetry) -> StructuredSymmetry:
    """(sigma, T)^-1 = (sigma^-1, sigma T^-1 sigma^-1)."""
    sigma_inv = invert_perm(s.sigma)
    inverted = tuple(block.inverse() for block in s.blocks)
    return StructuredSymmetry(s.space, sigma_inv, conjugate_by_permutation(inverted, sigma_inv))


# ============================================================
# ENUMERATION AND SAMPLING
# ============================================================

def size_classes(partition: Partition) -> list[list[int]]:
    """Block indices grouped by size; each group is a contiguous run."""
    groups: list[list[int]] = []
    for i, k in enumerate(partition.blocks):
        if groups and partition.blocks[groups[-1][0]] == k:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def admissible_permutations(partition: Partition) -> Iterator[Perm]:
    """Every admissible permutation, in lexicographic order."""
    groups = size_classes(partition)
    for parts in product(*(permutations(g) for g in groups)):
        yield tuple(image for part in parts for image in part)


def iter_structured(space: PiSpace) -> Iterator[StructuredSymmetry]:
    """Every element of S_pi ⋉ M (sigma outermost)."""
    tables = [list(permutations(range(order))) for order in space.block_orders]
    for sigma in admissible_permutations(space.partition):
        for combo in product(*tables):
            blocks = tuple(
                BlockBijection(space.q, k, table)
                for k, table in zip(space.partition.blocks, combo)
            )
            yield StructuredSymmetry(space, sigma, blocks)


def random_admissible(partition: Partition, rng: random.Random) -> Perm:
    """Uniform admissible permutation: an independent shuffle per size class."""
    sigma = list(range(partition.m))
    for group in size_classes(partition):
        images = list(group)
        rng.shuffle(images)
        for i, image in zip(group, images):
            sigma[i] = image
    return tuple(sigma)


def random_symmetry(space: PiSpace, seed: Optional[int] = None) -> StructuredSymmetry:
    """
    Uniform random element of S_pi ⋉ M; deterministic for a given seed.
    """
    rng = random.Random(seed)
    sigma = random_admissible(space.partition, rng)
    blocks = []
    for k, order in zip(space.partition.blocks, space.block_orders):
        table = list(range(order))
        rng.shuffle(table)
        blocks.append(BlockBijection(space.q, k, tuple(table)))
    return StructuredSymmetry(space, sigma, tuple(blocks))
