"""
Test Group Orders

Tests verify the closed-form orders of Symm and Aut:
- Known values for small partitions
- The Hamming specialisation for n <= 4, q in {2, 3, 4, 5}
- The product over size classes (the summed variant disagrees on pi=(2,1))
- Exact integer arithmetic, divisibility and the factorial budget
"""

import math
from itertools import permutations

import pytest

from pimetric.counting import (
    MAX_FACTORIAL_ARGUMENT,
    aut_order,
    hamming_orders,
    m_order,
    order_report,
    s_pi_order,
    symm_order,
)
from pimetric.errors import NotPrimePower, OrderTooLarge
from pimetric.pispace import Partition
from pimetric.symmetry import is_admissible


def summed_symm_order(partition, q):
    """The variant with a sum of m_j! over the size classes."""
    return sum(math.factorial(m) for m in partition.profile().multiplicities) * m_order(partition, q)


class TestSPiOrder:
    """Test the number of admissible permutations."""

    @pytest.mark.parametrize("blocks,expected", [((2, 1), 1), ((1, 1), 2), ((2, 2, 1), 2), ((1, 1, 1), 6), ((2, 2, 1, 1), 4)])
    def test_values(self, blocks, expected):
        """Verify prod m_j! on small partitions."""
        assert s_pi_order(Partition(blocks).profile()) == expected

    @pytest.mark.parametrize("blocks", [(2, 2, 1), (3, 1, 1, 1), (2, 2, 1, 1), (1, 1, 1, 1)])
    def test_matches_filter_of_symmetric_group(self, blocks):
        """Verify the count equals the admissible elements of S_m."""
        pi = Partition(blocks)
        brute = sum(1 for sigma in permutations(range(pi.m)) if is_admissible(sigma, pi))
        assert s_pi_order(pi.profile()) == brute


class TestSymmAndAut:
    """Test |Symm| and |Aut|."""

    @pytest.mark.parametrize("q,blocks,expected", [
        (2, (1, 1), 8),
        (2, (2,), 24),
        (2, (2, 1), 48),
        (2, (1, 1, 1), 48),
        (3, (1, 1), 72),
    ])
    def test_symm_values(self, q, blocks, expected):
        """Verify |Symm| on the spaces the oracle enumerates."""
        assert symm_order(Partition(blocks), q) == expected

    @pytest.mark.parametrize("q,blocks,expected", [
        (2, (1, 1), 2),
        (2, (2, 1), 6),
        (2, (1, 1, 1), 6),
        (3, (1, 1), 8),
        (2, (2, 2), 72),
    ])
    def test_aut_values(self, q, blocks, expected):
        """Verify |Aut| on the spaces the oracle enumerates."""
        assert aut_order(Partition(blocks), q) == expected

    def test_m_order(self):
        """Verify |M| = prod (q^k_i)!."""
        assert m_order(Partition((1, 1)), 2) == 4
        assert m_order(Partition((2, 1)), 2) == 48
        assert m_order(Partition((1, 1, 1)), 2) == 8

    def test_product_not_sum(self):
        """Verify the summed variant gives 96 on pi=(2,1), q=2, where 48 symmetries exist."""
        pi = Partition((2, 1))
        assert symm_order(pi, 2) == 48
        assert summed_symm_order(pi, 2) == 96

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
    @pytest.mark.parametrize("blocks", [(1,), (2, 1), (2, 2, 1), (3, 1, 1), (1, 1, 1, 1)])
    def test_aut_divides_symm(self, q, blocks):
        """Verify |Aut| divides |Symm| exactly."""
        pi = Partition(blocks)
        assert symm_order(pi, q) % aut_order(pi, q) == 0

    def test_exact_integers(self):
        """Verify orders beyond 64 bits are exact."""
        value = symm_order(Partition((1, 1)), 25)
        assert value == 2 * math.factorial(25) ** 2
        assert value > 2 ** 64

    def test_not_prime_power(self):
        """Verify invalid q is rejected."""
        with pytest.raises(NotPrimePower):
            symm_order(Partition((1, 1)), 6)
        with pytest.raises(NotPrimePower):
            aut_order(Partition((1, 1)), 10)

    def test_factorial_budget(self):
        """Verify factorials above the budget raise OrderTooLarge."""
        with pytest.raises(OrderTooLarge):
            symm_order(Partition((17,)), 2)
        assert 2 ** 16 <= MAX_FACTORIAL_ARGUMENT


class TestHamming:
    """Test the Hamming specialisation."""

    @pytest.mark.parametrize("n,q,expected", [(2, 2, (8, 2)), (3, 2, (48, 6)), (1, 2, (2, 1))])
    def test_values(self, n, q, expected):
        """Verify (n! (q!)^n, n! (q-1)^n)."""
        assert hamming_orders(n, q) == expected

    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_general_formula(self, n, q):
        """Verify the general orders on pi=(1,...,1)."""
        pi = Partition.hamming(n)
        assert hamming_orders(n, q) == (symm_order(pi, q), aut_order(pi, q))

    def test_invalid_length(self):
        """Verify n < 1 is rejected."""
        with pytest.raises(ValueError):
            hamming_orders(0, 2)


class TestOrderReport:
    """Test the combined report."""

    def test_report(self):
        """Verify all orders and the index for pi=(2,1), q=2."""
        assert order_report(Partition((2, 1)), 2) == {
            "s_pi": 1,
            "m": 48,
            "symm": 48,
            "aut": 6,
            "index": 8,
        }
