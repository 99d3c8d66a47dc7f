"""
pimetric: the pi-metric on F_q^n and its symmetry groups.

Finite field arithmetic, block vectors and the pi-distance, the
factorisation of every symmetry as a block permutation times block
bijections, the automorphism subgroup and closed-form group orders.
"""

from pimetric.errors import (
    PiMetricError,
    NotPrimePower,
    DivisionByZero,
    FieldMismatch,
    InvalidPartition,
    PartitionNotSorted,
    SpaceMismatch,
    SpaceTooLarge,
    ZeroCode,
    NotASymmetry,
    NotBijective,
    SeparabilityViolation,
    NotAdmissible,
    NotAnAutomorphism,
    SingularMatrix,
    ParseError,
    OrderTooLarge,
)
from pimetric.ffield import FieldSpec, FieldElement, make_field, prime_power
from pimetric.pispace import (
    Partition,
    SizeProfile,
    PiSpace,
    BlockVector,
    GeneratorMatrix,
    pi_weight,
    pi_distance,
    hamming_distance,
    enumerate_vectors,
    code_min_distance,
)
from pimetric.symmetry import (
    ExplicitMap,
    BlockBijection,
    StructuredSymmetry,
    is_admissible,
    is_symmetry,
    induced_permutation,
    decompose,
    expand,
    compose,
    invert,
    conjugate_by_permutation,
    random_symmetry,
)
from pimetric.autgroup import (
    BlockMatrix,
    LinearBlockMap,
    is_linear,
    is_automorphism,
    decompose_linear,
    gl_order,
    random_automorphism,
)
from pimetric.counting import s_pi_order, symm_order, aut_order, hamming_orders, m_order, order_report

__all__ = [
    "PiMetricError",
    "NotPrimePower",
    "DivisionByZero",
    "FieldMismatch",
    "InvalidPartition",
    "PartitionNotSorted",
    "SpaceMismatch",
    "SpaceTooLarge",
    "ZeroCode",
    "NotASymmetry",
    "NotBijective",
    "SeparabilityViolation",
    "NotAdmissible",
    "NotAnAutomorphism",
    "SingularMatrix",
    "ParseError",
    "OrderTooLarge",
    "FieldSpec",
    "FieldElement",
    "make_field",
    "prime_power",
    "Partition",
    "SizeProfile",
    "PiSpace",
    "BlockVector",
    "GeneratorMatrix",
    "pi_weight",
    "pi_distance",
    "hamming_distance",
    "enumerate_vectors",
    "code_min_distance",
    "ExplicitMap",
    "BlockBijection",
    "StructuredSymmetry",
    "is_admissible",
    "is_symmetry",
    "induced_permutation",
    "decompose",
    "expand",
    "compose",
    "invert",
    "conjugate_by_permutation",
    "random_symmetry",
    "BlockMatrix",
    "LinearBlockMap",
    "is_linear",
    "is_automorphism",
    "decompose_linear",
    "gl_order",
    "random_automorphism",
    "s_pi_order",
    "symm_order",
    "aut_order",
    "hamming_orders",
    "m_order",
    "order_report",
]
