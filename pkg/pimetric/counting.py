"""
Group Orders

Closed-form orders of the symmetry and automorphism groups of
(F_q^n, d_pi), read off the size profile of the partition:

    |S_pi|  = prod_j m_j!                 (one symmetric group per size class)
    |M|     = prod_i (q^{k_i})!
    |Symm|  = |S_pi| * |M|
    |Aut|   = |S_pi| * prod_i |GL(k_i, q)|

The S_pi factor is a product over the size classes. A sum of m_j! would
disagree with exhaustive enumeration as soon as there are two size
classes, e.g. pi = (2,1), q = 2 has 48 symmetries, not 96.

All values are exact Python integers. Factorials are only taken of
arguments up to MAX_FACTORIAL_ARGUMENT; beyond that OrderTooLarge is raised.
"""

from __future__ import annotations

import math

from pimetric.autgroup import gl_order
from pimetric.errors import OrderTooLarge
from pimetric.ffield import prime_power
from pimetric.pispace import Partition, SizeProfile


MAX_FACTORIAL_ARGUMENT = 100_000


def s_pi_order(profile: SizeProfile) -> int:
    """Number of admissible permutations: prod m_j!."""
    return math.prod(math.factorial(mult) for mult in profile.multiplicities)


def m_order(partition: Partition, q: int) -> int:
    """Order of the block-bijection group M: prod (q^{k_i})!."""
    prime_power(q)
    largest = q ** partition.blocks[0]
    if largest > MAX_FACTORIAL_ARGUMENT:
        raise OrderTooLarge(
            f"({largest})! exceeds the exact-arithmetic budget of {MAX_FACTORIAL_ARGUMENT}!"
        )
    return math.prod(math.factorial(q ** k) for k in partition.blocks)


def symm_order(partition: Partition, q: int) -> int:
    """
    |Symm(F_q^n, d_pi)|.

    Raises:
        NotPrimePower: If q is not a prime power
    """
    return s_pi_order(partition.profile()) * m_order(partition, q)


def aut_order(partition: Partition, q: int) -> int:
    """
    |Aut(F_q^n, d_pi)|.

    Raises:
        NotPrimePower: If q is not a prime power
    """
    return s_pi_order(partition.profile()) * math.prod(gl_order(k, q) for k in partition.blocks)


def hamming_orders(n: int, q: int) -> tuple[int, int]:
    """
    (|Symm|, |Aut|) for the Hamming metric: (n! (q!)^n, n! (q-1)^n).
    """
    prime_power(q)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return (
        math.factorial(n) * math.factorial(q) ** n,
        math.factorial(n) * (q - 1) ** n,
    )


def order_report(partition: Partition, q: int) -> dict[str, int]:
    """All orders for one (pi, q), plus the index [Symm : Aut]."""
    symm = symm_order(partition, q)
    aut = aut_order(partition, q)
    return {
        "s_pi": s_pi_order(partition.profile()),
        "m": m_order(partition, q),
        "symm": symm,
        "aut": aut,
        "index": symm // aut,
    }
