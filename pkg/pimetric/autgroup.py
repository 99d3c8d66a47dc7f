"""
Automorphisms of (F_q^n, d_pi)

An automorphism is a linear symmetry. In the factorisation F = sigma T the
block permutation is always linear, so F is linear exactly when every T_i
is, i.e. when T_i is an invertible k_i x k_i matrix A_i. The automorphism
group is therefore the admissible permutations acting on
GL(k_1, q) x ... x GL(k_m, q).

Matrix convention: vectors are columns, A_i acts on the left, and column j
of A_i is the image of the j-th standard basis vector of the block.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

import numpy as np

from pimetric.errors import NotAdmissible, NotAnAutomorphism, SingularMatrix, SpaceMismatch
from pimetric.ffield import FieldSpec, make_field, prime_power
from pimetric.linalg import apply_to_rows, is_invertible, iter_matrices
from pimetric.permutations import Perm, identity_perm
from pimetric.pispace import Partition, PiSpace
from pimetric.symmetry import (
    BlockBijection,
    ExplicitMap,
    StructuredSymmetry,
    decompose,
    expand,
    is_admissible,
    is_symmetry,
    random_admissible,
)


# ============================================================
# BLOCK MATRICES
# ============================================================

@dataclass(frozen=True)
class BlockMatrix:
    """An invertible k x k matrix over GF(q), entries as element indices."""

    field: FieldSpec
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        k = len(rows)
        if k == 0 or any(len(row) != k for row in rows):
            raise ValueError(f"block matrix must be square and non-empty, got {len(rows)} rows")
        if any(not 0 <= x < self.field.q for row in rows for x in row):
            raise ValueError(f"matrix entries must lie in [0, {self.field.q})")
        if not is_invertible(self.field, rows):
            raise SingularMatrix(f"matrix {rows} is singular over GF({self.field.q})")

    @classmethod
    def identity(cls, field: FieldSpec, k: int) -> "BlockMatrix":
        return cls(field, tuple(tuple(int(r == c) for c in range(k)) for r in range(k)))

    @property
    def k(self) -> int:
        return len(self.entries)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.entries, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    def to_bijection(self) -> BlockBijection:
        """The block map x -> A x as a table over block values."""
        block_space = PiSpace(self.field, Partition((self.k,)))
        images = apply_to_rows(self.field, self.array, block_space.all_coords)
        return BlockBijection(self.field.q, self.k, tuple((images @ block_space.index_weights).tolist()))


# ============================================================
# LINEAR BLOCK MAPS
# ============================================================

@dataclass(frozen=True)
class LinearBlockMap:
    """An automorphism (sigma, A_1, ..., A_m): apply A_i to block i, then move it to slot sigma(i)."""

    space: PiSpace
    sigma: Perm
    mats: tuple[BlockMatrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))
        object.__setattr__(self, "mats", tuple(self.mats))
        partition = self.space.partition
        if not is_admissible(self.sigma, partition):
            raise NotAdmissible(
                f"sigma {self.sigma} is not an admissible permutation for pi={partition}"
            )
        if len(self.mats) != partition.m:
            raise SpaceMismatch(f"expected {partition.m} block matrices, got {len(self.mats)}")
        for i, (mat, k) in enumerate(zip(self.mats, partition.blocks)):
            if mat.field != self.space.field or mat.k != k:
                raise SpaceMismatch(f"matrix {i + 1} is {mat.k}x{mat.k} over GF({mat.field.q}), block needs {k}x{k}")

    def to_structured(self) -> StructuredSymmetry:
        return StructuredSymmetry(self.space, self.sigma, tuple(m.to_bijection() for m in self.mats))

    def to_matrix(self) -> np.ndarray:
        """The full n x n matrix: A_i sits in block row sigma(i), block column i."""
        offsets = self.space.partition.offsets
        full = np.zeros((self.space.n, self.space.n), dtype=np.int64)
        for i, mat in enumerate(self.mats):
            r, c = offsets[self.sigma[i]], offsets[i]
            full[r:r + mat.k, c:c + mat.k] = mat.array
        return full


def identity_automorphism(space: PiSpace) -> LinearBlockMap:
    mats = tuple(BlockMatrix.identity(space.field, k) for k in space.partition.blocks)
    return LinearBlockMap(space, identity_perm(space.m), mats)


def expand_linear(lin: LinearBlockMap) -> ExplicitMap:
    return expand(lin.to_structured())


def matrix_map(space: PiSpace, matrix) -> ExplicitMap:
    """The map x -> A x of F_q^n as an ExplicitMap (A need not be invertible)."""
    matrix = np.asarray(matrix, dtype=np.int64)
    if matrix.shape != (space.n, space.n):
        raise SpaceMismatch(f"matrix shape {matrix.shape} does not match n={space.n}")
    images = apply_to_rows(space.field, matrix, space.all_coords)
    return ExplicitMap(space, tuple((images @ space.index_weights).tolist()))


# ============================================================
# PREDICATES
# ============================================================

def is_linear(f: ExplicitMap) -> bool:
    """
    True iff f(u + v) = f(u) + f(v) for all u, v and f(c v) = c f(v) for all c, v.
    """
    space = f.space
    field = space.field
    coords = space.all_coords
    weights = space.index_weights
    images = coords[f.array]

    for u in range(space.size):
        sums = field.add_table[coords[u], coords] @ weights
        image_sums = field.add_table[images[u], images] @ weights
        if (f.array[sums] != image_sums).any():
            return False

    for c in range(field.q):
        scaled = field.mul_table[c, coords] @ weights
        image_scaled = field.mul_table[c, images] @ weights
        if (f.array[scaled] != image_scaled).any():
            return False
    return True


def is_automorphism(f: ExplicitMap) -> bool:
    """A bijective, linear symmetry. Non-bijective tables give False."""
    if not f.is_bijective:
        return False
    return is_linear(f) and is_symmetry(f)


def decompose_linear(f: ExplicitMap) -> LinearBlockMap:
    """
    Factor an automorphism as (sigma_F, A_1, ..., A_m).

    Raises:
        NotAnAutomorphism: If f is not a linear symmetry
    """
    if not is_automorphism(f):
        raise NotAnAutomorphism("map is not a linear symmetry")
    structured = decompose(f, assume_symmetry=True)
    space = f.space
    mats = []
    for i, (k, block) in enumerate(zip(space.partition.blocks, structured.blocks)):
        # e_j has its 1 in coordinate j, the (k-1-j)-th base-q digit
        columns = [space.block_coords(i, block(space.q ** (k - 1 - j))) for j in range(k)]
        entries = tuple(tuple(columns[j][r] for j in range(k)) for r in range(k))
        mats.append(BlockMatrix(space.field, entries))
    return LinearBlockMap(space, structured.sigma, tuple(mats))


# ============================================================
# GL(k, q)
# ============================================================

def gl_order(k: int, q: int) -> int:
    """
    |GL(k, q)| = (q^k - 1)(q^k - q)...(q^k - q^(k-1)).

    Raises:
        NotPrimePower: If q is not a prime power
        ValueError: If k < 1
    """
    prime_power(q)
    if k < 1:
        raise ValueError(f"block size must be >= 1, got {k}")
    return math.prod(q ** k - q ** j for j in range(k))


def iter_gl(field: FieldSpec, k: int) -> Iterator[np.ndarray]:
    """Every invertible k x k matrix, in row-major base-q order."""
    for matrix in iter_matrices(field, k, k):
        if is_invertible(field, matrix):
            yield matrix


def count_invertible(k: int, q: int) -> int:
    """Brute-force |GL(k, q)| by testing all q^(k^2) matrices."""
    field = make_field(q)
    return sum(1 for _ in iter_gl(field, k))


def _random_invertible(field: FieldSpec, k: int, rng: random.Random) -> BlockMatrix:
    while True:
        entries = tuple(tuple(rng.randrange(field.q) for _ in range(k)) for _ in range(k))
        if is_invertible(field, entries):
            return BlockMatrix(field, entries)


def random_automorphism(space: PiSpace, seed: Optional[int] = None) -> LinearBlockMap:
    """
    Uniform random automorphism; deterministic for a given seed.

    Block matrices are drawn by rejection sampling of uniform matrices.
    """
    rng = random.Random(seed)
    sigma = random_admissible(space.partition, rng)
    mats = tuple(_random_invertible(space.field, k, rng) for k in space.partition.blocks)
    return LinearBlockMap(space, sigma, mats)
