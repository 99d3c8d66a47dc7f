"""
Permutation Helpers

Permutations of {0, ..., m-1} are tuples of images: perm[i] is the image
of i. Text forms use 1-based image lists, e.g. "[2,1]" for the swap.
"""

from __future__ import annotations

import math
import re
from typing import Optional, Sequence

from pimetric.errors import ParseError


Perm = tuple[int, ...]


def identity_perm(size: int) -> Perm:
    return tuple(range(size))


def is_permutation(perm: Sequence[int], size: Optional[int] = None) -> bool:
    """True iff perm lists every integer of range(len(perm)) exactly once."""
    if size is not None and len(perm) != size:
        return False
    return sorted(perm) == list(range(len(perm)))


def compose_perm(p: Sequence[int], r: Sequence[int]) -> Perm:
    """
    Return p ∘ r (apply r first, then p).

    Raises:
        ValueError: If the lengths differ
    """
    if len(p) != len(r):
        raise ValueError("permutation lengths must match")
    return tuple(p[r[i]] for i in range(len(r)))


def invert_perm(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, image in enumerate(p):
        inv[image] = i
    return tuple(inv)


# ============================================================
# LEXICOGRAPHIC ORDER
# ============================================================

def next_permutation(perm: Sequence[int]) -> Optional[list[int]]:
    """
    Lexicographic successor of perm, or None if perm is the last one.

    Standard procedure: find the longest non-increasing suffix, swap its
    predecessor with the rightmost larger element, reverse the suffix.
    """
    a = list(perm)
    i = len(a) - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return None
    j = len(a) - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    a[i + 1:] = reversed(a[i + 1:])
    return a


def unrank_permutation(rank: int, size: int) -> list[int]:
    """
    The permutation at a given lexicographic rank (factorial number system).

    Raises:
        ValueError: If rank is outside [0, size!)
    """
    if not 0 <= rank < math.factorial(size):
        raise ValueError(f"rank {rank} out of range for permutations of {size}")
    pool = list(range(size))
    out = []
    for pos in range(size, 0, -1):
        f = math.factorial(pos - 1)
        digit, rank = divmod(rank, f)
        out.append(pool.pop(digit))
    return out


def rank_permutation(perm: Sequence[int]) -> int:
    """Inverse of unrank_permutation."""
    pool = sorted(perm)
    rank = 0
    for pos, value in enumerate(perm):
        digit = pool.index(value)
        rank += digit * math.factorial(len(perm) - pos - 1)
        pool.pop(digit)
    return rank


# ============================================================
# TEXT FORM
# ============================================================

_LIST_RE = re.compile(r"^\s*\[\s*([0-9,\s]*)\]\s*$")


def format_perm(perm: Sequence[int]) -> str:
    """1-based image list, e.g. (1, 0) -> "[2,1]"."""
    return "[" + ",".join(str(i + 1) for i in perm) + "]"


def parse_perm(text: str) -> Perm:
    """
    Parse a 1-based image list such as "[2,1]".

    Raises:
        ParseError: If the text is not a bracketed list of a permutation
    """
    match = _LIST_RE.match(text)
    if not match:
        raise ParseError(f"expected a bracketed image list, got {text!r}")
    body = match.group(1).strip()
    if not body:
        raise ParseError("permutation must not be empty")
    try:
        images = tuple(int(x) - 1 for x in body.split(","))
    except ValueError:
        raise ParseError(f"invalid permutation entries: {text!r}")
    if not is_permutation(images):
        raise ParseError(f"not a permutation of 1..{len(images)}: {text!r}")
    return images
