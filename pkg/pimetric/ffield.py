"""
Finite Field Arithmetic

Exact arithmetic in GF(q) for small prime powers q = p^e <= 256.

Elements are encoded as integer indices in [0, q). For a prime field the
index is the residue itself. For an extension field the index is the base-p
digit vector of the polynomial representative, lowest degree first, so
index = c_0 + c_1*p + ... + c_{e-1}*p^(e-1). Index 0 is zero and index 1 is
one in every field.

All arithmetic goes through precomputed, read-only numpy tables built once
per field. Fields are cached per order, so make_field(q) always returns the
same object.

Reduction polynomials are pinned: for each (p, e) we take the monic
irreducible polynomial of degree e with the smallest base-p encoding of its
coefficients. This gives, for example:

    GF(4)   x^2 + x + 1
    GF(8)   x^3 + x + 1
    GF(9)   x^2 + 1
    GF(16)  x^4 + x + 1
    GF(27)  x^3 + 2x + 1

Element encodings appear in serialized map files, so they must never change.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator

import numpy as np

from pimetric.errors import DivisionByZero, FieldMismatch, NotPrimePower


MAX_FIELD_ORDER = 256

# Spot values of the pinned-polynomial rule, checked by the test suite.
# Coefficients are listed lowest degree first, leading 1 included.
PINNED_REDUCTION_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
}


# ============================================================
# INTEGER HELPERS
# ============================================================

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """
    Split a prime power into (p, e) with q = p^e.

    Raises:
        NotPrimePower: If q is not a prime power (q < 2 included)
    """
    if not isinstance(q, int) or q < 2:
        raise NotPrimePower(f"q must be a prime power >= 2, got {q!r}")
    p = 2
    while q % p != 0:
        p += 1
    e = 0
    rest = q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1 or not _is_prime(p):
        raise NotPrimePower(f"{q} is not a prime power")
    return p, e


# ============================================================
# POLYNOMIALS OVER GF(p)
# ============================================================

def _trim(poly: list[int]) -> list[int]:
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> list[int]:
    """Remainder of a modulo m over GF(p); m must have a nonzero leading coefficient."""
    rem = [c % p for c in a]
    lead_inv = pow(m[-1], p - 2, p)
    while len(rem) >= len(m):
        if rem[-1] == 0:
            rem.pop()
            continue
        shift = len(rem) - len(m)
        factor = (rem[-1] * lead_inv) % p
        for i, c in enumerate(m):
            rem[shift + i] = (rem[shift + i] - factor * c) % p
        rem.pop()
    return _trim(rem) if rem else [0]


def _monic_polys(degree: int, p: int) -> Iterator[tuple[int, ...]]:
    """All monic polynomials of a degree, in increasing base-p encoding."""
    for low in product(range(p), repeat=degree):
        yield tuple(reversed(low)) + (1,)


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """
    Check irreducibility over GF(p) by trial division.

    A polynomial of degree e is irreducible iff no monic polynomial of
    degree 1..e//2 divides it. For e <= 3 this is the same as having no
    root in GF(p).
    """
    degree = len(poly) - 1
    if degree < 1:
        return False
    for d in range(1, degree // 2 + 1):
        for divisor in _monic_polys(d, p):
            rem = _poly_mod(poly, divisor, p)
            if not any(rem):
                return False
    return True


@lru_cache(maxsize=None)
def reduction_polynomial(p: int, e: int) -> tuple[int, ...]:
    """
    The pinned reduction polynomial for GF(p^e), lowest degree first.

    For e = 1 this is x (unused by the arithmetic).
    """
    if e == 1:
        return (0, 1)
    for candidate in _monic_polys(e, p):
        if is_irreducible(candidate, p):
            return candidate
    raise NotPrimePower(f"no irreducible polynomial of degree {e} over GF({p})")


# ============================================================
# FIELD SPECIFICATION
# ============================================================

def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class FieldSpec:
    """
    The field GF(p^e) with its arithmetic tables.

    Equality and hashing depend only on (p, e, reduction_poly).
    The tables are read-only numpy arrays indexed by element index.
    """

    p: int
    e: int
    reduction_poly: tuple[int, ...]
    add_table: np.ndarray = field(init=False, repr=False, compare=False)
    mul_table: np.ndarray = field(init=False, repr=False, compare=False)
    neg_table: np.ndarray = field(init=False, repr=False, compare=False)
    inv_table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise NotPrimePower(f"characteristic must be prime, got {self.p}")
        if self.e < 1:
            raise NotPrimePower(f"extension degree must be >= 1, got {self.e}")
        if self.p ** self.e > MAX_FIELD_ORDER:
            raise NotPrimePower(
                f"field order {self.p ** self.e} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )
        if self.e > 1:
            if len(self.reduction_poly) != self.e + 1 or self.reduction_poly[-1] != 1:
                raise NotPrimePower(
                    f"reduction polynomial must be monic of degree {self.e}: {self.reduction_poly}"
                )
            if not is_irreducible(self.reduction_poly, self.p):
                raise NotPrimePower(
                    f"reduction polynomial {self.reduction_poly} is reducible over GF({self.p})"
                )

        q = self.q
        p = self.p
        powers = p ** np.arange(self.e, dtype=np.int64)
        digits = (np.arange(q, dtype=np.int64)[:, None] // powers[None, :]) % p

        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ powers
        neg = ((-digits) % p) @ powers

        if self.e == 1:
            mul = np.outer(np.arange(q), np.arange(q)) % p
        else:
            conv = np.zeros((q, q, 2 * self.e - 1), dtype=np.int64)
            for i in range(self.e):
                for j in range(self.e):
                    conv[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
            conv %= p
            # x^e = -(r_0 + r_1 x + ... + r_{e-1} x^{e-1})
            for k in range(2 * self.e - 2, self.e - 1, -1):
                coef = conv[:, :, k].copy()
                conv[:, :, k] = 0
                for t in range(self.e):
                    conv[:, :, k - self.e + t] -= coef * self.reduction_poly[t]
                conv %= p
            mul = conv[:, :, : self.e] @ powers

        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = np.argmax(mul[1:] == 1, axis=1)

        object.__setattr__(self, "add_table", _freeze(add.astype(np.int64)))
        object.__setattr__(self, "mul_table", _freeze(mul.astype(np.int64)))
        object.__setattr__(self, "neg_table", _freeze(neg.astype(np.int64)))
        object.__setattr__(self, "inv_table", _freeze(inv))

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def element(self, index: int) -> "FieldElement":
        return FieldElement(self, index)

    def elements(self) -> list["FieldElement"]:
        """All q elements in index order."""
        return [FieldElement(self, i) for i in range(self.q)]

    def nonzero_elements(self) -> list["FieldElement"]:
        return [FieldElement(self, i) for i in range(1, self.q)]

    def describe(self) -> str:
        if self.e == 1:
            return f"GF({self.q})"
        terms = []
        for power in range(self.e, -1, -1):
            c = self.reduction_poly[power]
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
                continue
            mono = "x" if power == 1 else f"x^{power}"
            terms.append(mono if c == 1 else f"{c}{mono}")
        return f"GF({self.q}) mod {' + '.join(terms)}"


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """
    Build (or fetch the cached) field of order q.

    Args:
        q: Field order, a prime power in [2, 256]

    Returns:
        The FieldSpec with the pinned reduction polynomial

    Raises:
        NotPrimePower: If q is not a prime power or is out of range
    """
    p, e = prime_power(q)
    if q > MAX_FIELD_ORDER:
        raise NotPrimePower(f"field order {q} exceeds the supported maximum {MAX_FIELD_ORDER}")
    return FieldSpec(p=p, e=e, reduction_poly=reduction_polynomial(p, e))


# ============================================================
# FIELD ELEMENTS
# ============================================================

@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldSpec, stored as its index."""

    field: FieldSpec
    index: int

    def __post_init__(self) -> None:
        if not 0 <= self.index < self.field.q:
            raise ValueError(f"element index {self.index} out of range for GF({self.field.q})")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return sub(self, other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, other)

    def __neg__(self) -> "FieldElement":
        return neg(self)

    def inverse(self) -> "FieldElement":
        return inv(self)

    def __int__(self) -> int:
        return self.index

    def __str__(self) -> str:
        return str(self.index)


def _same_field(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.field != b.field:
        raise FieldMismatch(f"cannot combine GF({a.field.q}) and GF({b.field.q}) elements")
    return a.field


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same_field(a, b)
    return FieldElement(f, int(f.add_table[a.index, b.index]))


def neg(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, int(a.field.neg_table[a.index]))


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return add(a, neg(b))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same_field(a, b)
    return FieldElement(f, int(f.mul_table[a.index, b.index]))


def inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse; raises DivisionByZero for zero."""
    if a.index == 0:
        raise DivisionByZero(f"zero has no inverse in GF({a.field.q})")
    return FieldElement(a.field, int(a.field.inv_table[a.index]))
