"""
Enumeration Oracle: exhaustive ground truth for the pi-metric groups.

Every closed-form order and every decomposition in pimetric is checked
here against brute force on small spaces:

    enumerate_symmetries      all (q^n)! bijections, filtered by distance preservation
    enumerate_automorphisms   all q^(n^2) matrices, filtered by invertibility and weight
    enumerate_M               all tuples of block bijections

Candidates are numbered, split into contiguous ranges and counted by
worker processes. Ranges are merged in order, so a report (count and the
list of maps) is the same for every worker count.

Feasibility caps are fixed constants. Anything above them raises
SpaceTooLarge before any work starts.
"""

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional, Sequence

import numpy as np

from app.logging_config import get_logger
from app.settings import resolve_workers
from pimetric.autgroup import matrix_map
from pimetric.counting import aut_order, m_order, s_pi_order, symm_order
from pimetric.errors import SpaceTooLarge
from pimetric.ffield import make_field
from pimetric.linalg import is_invertible, iter_matrices
from pimetric.permutations import next_permutation, unrank_permutation
from pimetric.pispace import Partition, PiSpace, block_distance_rows
from pimetric.symmetry import (
    ExplicitMap,
    admissible_permutations,
    coset_violation,
    decompose,
    expand,
)

logger = get_logger("oracle")

# ============================================================
# FEASIBILITY CAPS
# ============================================================

# q^n <= 9: at most 9! = 362,880 candidate bijections
MAX_SYMMETRY_SPACE = 9
MAX_MATRIX_CANDIDATES = 2 ** 26
MAX_M_CANDIDATES = 10 ** 6

# Below this many candidates the work stays in one process.
MIN_PARALLEL_CANDIDATES = 1000
CHUNKS_PER_WORKER = 4

# verify_group_closure checks every pair up to this group size.
EXHAUSTIVE_CLOSURE_LIMIT = 1000

KINDS = ("symm", "aut", "m")


# ============================================================
# REPORTS
# ============================================================

@dataclass(frozen=True)
class EnumerationReport:
    """
    Result of one exhaustive enumeration.

    maps is kept only on request; when present it lists the accepted
    candidates in enumeration order.
    """

    space: str
    kind: str
    candidates: int
    count: int
    formula: int
    elapsed: float
    workers: int = 1
    maps: Optional[tuple[ExplicitMap, ...]] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not 0 <= self.count <= self.candidates:
            raise ValueError(f"count {self.count} outside [0, {self.candidates}]")
        if self.maps is not None and len(self.maps) != self.count:
            raise ValueError(f"{len(self.maps)} maps kept for a count of {self.count}")

    @property
    def matches(self) -> bool:
        return self.count == self.formula

    @property
    def verdict(self) -> str:
        return "MATCH" if self.matches else "MISMATCH"

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "kind": self.kind,
            "candidates": self.candidates,
            "count": self.count,
            "formula": self.formula,
            "verdict": self.verdict,
            "workers": self.workers,
            "elapsed_seconds": round(self.elapsed, 6),
        }

    def to_text(self) -> str:
        data = self.to_dict()
        data["elapsed_seconds"] = f"{self.elapsed:.3f}"
        return "\n".join(f"{key}: {value}" for key, value in data.items()) + "\n"


# ============================================================
# CHUNKED EXECUTION
# ============================================================

def chunk_ranges(total: int, workers: int) -> list[tuple[int, int]]:
    """
    Contiguous [start, stop) ranges covering [0, total).

    One range when running single-process or when the work is small.
    """
    if total <= 0:
        return []
    if workers <= 1 or total < MIN_PARALLEL_CANDIDATES:
        return [(0, total)]
    pieces = workers * CHUNKS_PER_WORKER
    size = (total + pieces - 1) // pieces
    return [(start, min(start + size, total)) for start in range(0, total, size)]


def _run_chunks(
    worker: Callable[[tuple], tuple[int, list]],
    jobs: list[tuple],
    workers: int,
) -> tuple[int, list]:
    """Run jobs and merge (count, items) results in job order."""
    if workers <= 1 or len(jobs) <= 1:
        results = [worker(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as executor:
            results = list(executor.map(worker, jobs))
    count = sum(c for c, _ in results)
    items = [item for _, chunk in results for item in chunk]
    return count, items


def _distance_rows(q: int, blocks: tuple[int, ...]) -> list[list[int]]:
    space = PiSpace(make_field(q), Partition(blocks))
    values = space.all_block_values
    return block_distance_rows(space, values, values).tolist()


def _preserves_distance(table: Sequence[int], dist: list[list[int]]) -> bool:
    """Pair check with early exit on the first changed distance."""
    size = len(table)
    for u in range(size - 1):
        row = dist[u]
        image_row = dist[table[u]]
        for v in range(u + 1, size):
            if image_row[table[v]] != row[v]:
                return False
    return True


# ---- workers: module level, primitive arguments only ----

def _symmetry_chunk(job: tuple) -> tuple[int, list]:
    q, blocks, start, stop, keep = job
    dist = _distance_rows(q, blocks)
    perm: Optional[list[int]] = unrank_permutation(start, len(dist))
    count = 0
    kept = []
    for _ in range(stop - start):
        if _preserves_distance(perm, dist):
            count += 1
            if keep:
                kept.append(tuple(perm))
        perm = next_permutation(perm)
        if perm is None:
            break
    return count, kept


def _block_weight_preserved(images: np.ndarray, offsets, sizes, weights: np.ndarray) -> bool:
    image_weights = np.zeros(images.shape[0], dtype=np.int64)
    for start, k in zip(offsets, sizes):
        image_weights += images[:, start:start + k].any(axis=1)
    return bool((image_weights == weights).all())


def _automorphism_chunk(job: tuple) -> tuple[int, list]:
    q, blocks, start, stop, keep = job
    field = make_field(q)
    space = PiSpace(field, Partition(blocks))
    n = space.n
    offsets, sizes = space.partition.offsets, space.partition.blocks
    coords = space.all_coords
    weights = (space.all_block_values != 0).sum(axis=1)

    count = 0
    kept = []
    for matrix in iter_matrices(field, n, n, start, stop):
        if not is_invertible(field, matrix):
            continue
        # x -> A x for every vector x (rows of coords)
        prods = field.mul_table[matrix[None, :, :], coords[:, None, :]]
        images = np.zeros(coords.shape, dtype=np.int64)
        for t in range(n):
            images = field.add_table[images, prods[:, :, t]]
        if _block_weight_preserved(images, offsets, sizes, weights):
            count += 1
            if keep:
                kept.append(tuple(map(tuple, matrix.tolist())))
    return count, kept


def _m_chunk(job: tuple) -> tuple[int, list]:
    q, blocks, start, stop, keep = job
    space = PiSpace(make_field(q), Partition(blocks))
    dist = _distance_rows(q, blocks)
    orders = space.block_orders
    factorials = [math.factorial(order) for order in orders]
    values = space.all_block_values.tolist()
    weights = space.block_weights

    count = 0
    kept = []
    for index in range(start, stop):
        # mixed radix over the per-block permutation ranks, first block most significant
        ranks = []
        for f in reversed(factorials):
            index, r = divmod(index, f)
            ranks.append(r)
        tables = [unrank_permutation(r, order) for r, order in zip(reversed(ranks), orders)]
        table = [
            sum(tables[i][v] * weights[i] for i, v in enumerate(row))
            for row in values
        ]
        if _preserves_distance(table, dist):
            count += 1
            if keep:
                kept.append(tuple(table))
    return count, kept


# ============================================================
# ENUMERATIONS
# ============================================================

def _jobs(space: PiSpace, total: int, workers: int, keep: bool) -> list[tuple]:
    return [
        (space.q, space.partition.blocks, start, stop, keep)
        for start, stop in chunk_ranges(total, workers)
    ]


def enumerate_symmetries(
    space: PiSpace,
    keep_maps: bool = False,
    workers: Optional[int] = None,
) -> EnumerationReport:
    """
    Count the symmetries of a space by testing every bijection.

    Bijections are visited in lexicographic order of their tables.

    Args:
        space: A space with q^n <= MAX_SYMMETRY_SPACE
        keep_maps: Keep every accepted bijection in the report
        workers: Process count (default: from app.settings)

    Raises:
        SpaceTooLarge: If q^n exceeds MAX_SYMMETRY_SPACE
    """
    if space.size > MAX_SYMMETRY_SPACE:
        raise SpaceTooLarge(
            f"{space.describe()} has {space.size} vectors; bijection enumeration "
            f"is limited to {MAX_SYMMETRY_SPACE} vectors"
        )
    workers = resolve_workers(workers)
    candidates = math.factorial(space.size)
    logger.info("Enumerating symmetries", space=space.describe(), candidates=candidates, workers=workers)

    started = time.perf_counter()
    jobs = _jobs(space, candidates, workers, keep_maps)
    logger.debug("Dispatching chunks", kind="symm", chunks=len(jobs))
    count, tables = _run_chunks(_symmetry_chunk, jobs, workers)
    elapsed = time.perf_counter() - started

    report = EnumerationReport(
        space=space.describe(),
        kind="symm",
        candidates=candidates,
        count=count,
        formula=symm_order(space.partition, space.q),
        elapsed=elapsed,
        workers=workers,
        maps=tuple(ExplicitMap(space, t) for t in tables) if keep_maps else None,
    )
    logger.info("Enumeration finished", kind="symm", count=count, verdict=report.verdict, elapsed=round(elapsed, 3))
    return report


def enumerate_automorphisms(
    space: PiSpace,
    keep_maps: bool = False,
    workers: Optional[int] = None,
) -> EnumerationReport:
    """
    Count the automorphisms of a space by testing every n x n matrix.

    A linear map preserves d_pi iff it preserves the pi-weight, so each
    invertible matrix is checked on the weight of every image.

    Raises:
        SpaceTooLarge: If q^(n^2) exceeds MAX_MATRIX_CANDIDATES
    """
    candidates = space.q ** (space.n * space.n)
    if candidates > MAX_MATRIX_CANDIDATES:
        raise SpaceTooLarge(
            f"{space.describe()} has {candidates} candidate matrices; "
            f"matrix enumeration is limited to {MAX_MATRIX_CANDIDATES}"
        )
    workers = resolve_workers(workers)
    logger.info("Enumerating automorphisms", space=space.describe(), candidates=candidates, workers=workers)

    started = time.perf_counter()
    jobs = _jobs(space, candidates, workers, keep_maps)
    logger.debug("Dispatching chunks", kind="aut", chunks=len(jobs))
    count, matrices = _run_chunks(_automorphism_chunk, jobs, workers)
    elapsed = time.perf_counter() - started

    report = EnumerationReport(
        space=space.describe(),
        kind="aut",
        candidates=candidates,
        count=count,
        formula=aut_order(space.partition, space.q),
        elapsed=elapsed,
        workers=workers,
        maps=tuple(matrix_map(space, m) for m in matrices) if keep_maps else None,
    )
    logger.info("Enumeration finished", kind="aut", count=count, verdict=report.verdict, elapsed=round(elapsed, 3))
    return report


def enumerate_M(
    space: PiSpace,
    keep_maps: bool = False,
    workers: Optional[int] = None,
) -> EnumerationReport:
    """
    Enumerate the block-bijection group M and check each element is a symmetry.

    count is the number of tuples (T_1, ..., T_m) whose expansion preserves
    d_pi; it equals the number of candidates exactly when M is a group of
    symmetries.

    Raises:
        SpaceTooLarge: If prod (q^{k_i})! exceeds MAX_M_CANDIDATES
    """
    space.require_enumerable()
    candidates = math.prod(math.factorial(order) for order in space.block_orders)
    if candidates > MAX_M_CANDIDATES:
        raise SpaceTooLarge(
            f"M for {space.describe()} has {candidates} elements; "
            f"enumeration is limited to {MAX_M_CANDIDATES}"
        )
    workers = resolve_workers(workers)
    logger.info("Enumerating M", space=space.describe(), candidates=candidates, workers=workers)

    started = time.perf_counter()
    jobs = _jobs(space, candidates, workers, keep_maps)
    count, tables = _run_chunks(_m_chunk, jobs, workers)
    elapsed = time.perf_counter() - started

    report = EnumerationReport(
        space=space.describe(),
        kind="m",
        candidates=candidates,
        count=count,
        formula=m_order(space.partition, space.q),
        elapsed=elapsed,
        workers=workers,
        maps=tuple(ExplicitMap(space, t) for t in tables) if keep_maps else None,
    )
    logger.info("Enumeration finished", kind="m", count=count, verdict=report.verdict, elapsed=round(elapsed, 3))
    return report


def enumerate_kind(space: PiSpace, kind: str, keep_maps: bool = False, workers: Optional[int] = None) -> EnumerationReport:
    """Dispatch on kind: "symm", "aut" or "m"."""
    runners = {
        "symm": enumerate_symmetries,
        "aut": enumerate_automorphisms,
        "m": enumerate_M,
    }
    if kind not in runners:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    return runners[kind](space, keep_maps=keep_maps, workers=workers)


# ============================================================
# STRUCTURE CHECKS
# ============================================================

def _symmetry_maps(space: PiSpace, maps: Optional[Sequence[ExplicitMap]], workers: Optional[int]) -> Sequence[ExplicitMap]:
    if maps is not None:
        return maps
    return enumerate_symmetries(space, keep_maps=True, workers=workers).maps


def verify_lemma1(
    space: PiSpace,
    maps: Optional[Sequence[ExplicitMap]] = None,
    workers: Optional[int] = None,
) -> bool:
    """
    Coset property: every map sends each coset v + V_i onto a coset
    F(v) + V_j with k_j = k_i.

    Args:
        space: The space
        maps: Maps to check (default: all enumerated symmetries)
        workers: Process count for the enumeration

    Raises:
        SpaceTooLarge: If the symmetries have to be enumerated and q^n > 9
    """
    for position, f in enumerate(_symmetry_maps(space, maps, workers)):
        violation = coset_violation(f)
        if violation is not None:
            v, i = violation
            logger.info("Coset property violated", map=position, vector=v, block=i + 1)
            return False
    return True


def verify_decomposition_bijection(
    space: PiSpace,
    maps: Optional[Sequence[ExplicitMap]] = None,
    workers: Optional[int] = None,
) -> bool:
    """
    The factorisation (sigma, T) -> sigma T is a bijection onto the symmetries.

    Checks that |S_pi| * |M| equals the number of symmetries, that every
    symmetry decomposes with separable blocks, that re-expansion gives the
    same table, and that no two symmetries share a factorisation.

    Raises:
        SpaceTooLarge: If the symmetries have to be enumerated and q^n > 9
    """
    symmetries = _symmetry_maps(space, maps, workers)
    s_pi = sum(1 for _ in admissible_permutations(space.partition))
    if s_pi != s_pi_order(space.partition.profile()):
        return False
    if s_pi * m_order(space.partition, space.q) != len(symmetries):
        logger.info("Decomposition count mismatch", expected=s_pi * m_order(space.partition, space.q), found=len(symmetries))
        return False

    seen = set()
    for f in symmetries:
        structured = decompose(f, validate=True, assume_symmetry=True)
        if expand(structured).table != f.table:
            logger.info("Re-expansion differs", space=space.describe())
            return False
        seen.add((structured.sigma, tuple(b.table for b in structured.blocks)))
    return len(seen) == len(symmetries)


def verify_group_closure(
    space: PiSpace,
    maps: Sequence[ExplicitMap],
    samples: int = 1000,
    seed: Optional[int] = 0,
) -> bool:
    """
    Closure of a set of maps under composition and inverse.

    Every pair is composed when the set has at most EXHAUSTIVE_CLOSURE_LIMIT
    elements; otherwise `samples` random pairs are drawn.
    """
    if not maps:
        return False
    tables = {f.table for f in maps}
    if any(f.space != space for f in maps):
        return False
    if any(f.inverse().table not in tables for f in maps):
        return False

    if len(maps) <= EXHAUSTIVE_CLOSURE_LIMIT:
        pairs = product(maps, repeat=2)
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(maps), rng.choice(maps)) for _ in range(samples))
    return all(a.compose(b).table in tables for a, b in pairs)
