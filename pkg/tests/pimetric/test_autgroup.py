"""
Test Automorphisms of the pi-Metric

Tests verify linearity, the block-matrix factorisation of automorphisms,
GL(k, q) orders and random automorphisms.
"""

from itertools import product

import numpy as np
import pytest

from pimetric.autgroup import (
    BlockMatrix,
    LinearBlockMap,
    count_invertible,
    decompose_linear,
    expand_linear,
    gl_order,
    identity_automorphism,
    is_automorphism,
    is_linear,
    iter_gl,
    matrix_map,
    random_automorphism,
)
from pimetric.errors import NotAnAutomorphism, NotPrimePower, SingularMatrix, SpaceMismatch
from pimetric.ffield import make_field
from pimetric.pispace import Partition, PiSpace
from pimetric.symmetry import ExplicitMap, admissible_permutations, is_symmetry


def space(q, blocks):
    return PiSpace(make_field(q), Partition(tuple(blocks)))


GF2 = make_field(2)
SQUARE = space(2, (1, 1))
SHEAR = BlockMatrix(GF2, ((1, 1), (0, 1)))


def shear_map():
    s = space(2, (2, 1))
    return LinearBlockMap(s, (0, 1), (SHEAR, BlockMatrix.identity(GF2, 1)))


class TestBlockMatrix:
    """Test invertible block matrices."""

    def test_singular_rejected(self):
        """Verify a singular matrix raises SingularMatrix."""
        with pytest.raises(SingularMatrix):
            BlockMatrix(GF2, ((1, 1), (1, 1)))

    def test_non_square_rejected(self):
        """Verify non-square entries are rejected."""
        with pytest.raises(ValueError):
            BlockMatrix(GF2, ((1, 0, 0), (0, 1, 0)))

    def test_to_bijection(self):
        """Verify the shear as a table over block values: (a, b) -> (a + b, b)."""
        assert SHEAR.to_bijection().table == (0, 3, 2, 1)

    def test_block_size_checked(self):
        """Verify LinearBlockMap checks matrix sizes against the partition."""
        with pytest.raises(SpaceMismatch):
            LinearBlockMap(space(2, (2, 1)), (0, 1), (BlockMatrix.identity(GF2, 1), SHEAR))


class TestPredicates:
    """Test is_linear and is_automorphism."""

    def test_identity_is_linear(self):
        """Verify the identity is linear."""
        assert is_linear(ExplicitMap.identity(space(3, (2, 1))))

    def test_translation_is_not_linear(self):
        """Verify the antipodal swap (a translation) is not linear."""
        antipodal = ExplicitMap(SQUARE, (3, 1, 2, 0))
        assert not is_linear(antipodal)
        assert is_symmetry(antipodal)
        assert not is_automorphism(antipodal)

    def test_coordinate_swap_is_automorphism(self):
        """Verify the coordinate swap is a linear symmetry."""
        assert is_automorphism(ExplicitMap(SQUARE, (0, 2, 1, 3)))

    def test_shear_is_automorphism(self):
        """Verify the shear on the 2-block of pi=(2,1) is an automorphism."""
        assert is_automorphism(expand_linear(shear_map()))

    def test_linear_non_symmetry(self):
        """Verify the full shear on pi=(1,1) is linear but moves distances."""
        f = matrix_map(SQUARE, [[1, 1], [0, 1]])
        assert is_linear(f)
        assert not is_automorphism(f)

    def test_singular_linear_map(self):
        """Verify a singular linear map is not an automorphism."""
        f = matrix_map(SQUARE, [[1, 0], [0, 0]])
        assert is_linear(f)
        assert not is_automorphism(f)

    def test_scaling_checked_over_gf4(self):
        """Verify a Frobenius-like additive map x -> x^2 fails scaling over GF(4)."""
        s = space(4, (1,))
        square = tuple(int(make_field(4).mul_table[x, x]) for x in range(4))
        assert not is_linear(ExplicitMap(s, square))


class TestLinearDecomposition:
    """Test decompose_linear."""

    def test_identity(self):
        """Verify the identity gives identity matrices."""
        s = space(3, (2, 1))
        assert decompose_linear(ExplicitMap.identity(s)) == identity_automorphism(s)

    def test_coordinate_swap(self):
        """Verify the coordinate swap gives sigma (1 2) and A_1 = A_2 = [1]."""
        lin = decompose_linear(ExplicitMap(SQUARE, (0, 2, 1, 3)))
        assert lin.sigma == (1, 0)
        assert [m.entries for m in lin.mats] == [((1,),), ((1,),)]

    def test_shear(self):
        """Verify the shear is read back with its columns."""
        lin = decompose_linear(expand_linear(shear_map()))
        assert lin.sigma == (0, 1)
        assert lin.mats[0].entries == ((1, 1), (0, 1))
        assert lin.mats[1].entries == ((1,),)

    def test_non_automorphism_rejected(self):
        """Verify the antipodal swap raises NotAnAutomorphism."""
        with pytest.raises(NotAnAutomorphism):
            decompose_linear(ExplicitMap(SQUARE, (3, 1, 2, 0)))

    @pytest.mark.parametrize("blocks", [(1,), (2,), (3,), (1, 1), (2, 1), (1, 1, 1)])
    def test_round_trip_exhaustive(self, blocks):
        """Verify decompose_linear(expand(L)) = L for every automorphism over GF(2), n <= 3."""
        s = space(2, blocks)
        gl = [[BlockMatrix(GF2, tuple(map(tuple, m.tolist()))) for m in iter_gl(GF2, k)] for k in blocks]
        for sigma in admissible_permutations(s.partition):
            for mats in product(*gl):
                lin = LinearBlockMap(s, sigma, mats)
                f = expand_linear(lin)
                assert f.table[0] == 0
                assert decompose_linear(f) == lin

    def test_full_matrix_agrees(self):
        """Verify to_matrix gives the same map as the block form."""
        s = space(3, (2, 1, 1))
        for seed in range(10):
            lin = random_automorphism(s, seed)
            assert matrix_map(s, lin.to_matrix()).table == expand_linear(lin).table

    def test_full_matrix_layout(self):
        """Verify the coordinate swap matrix."""
        lin = decompose_linear(ExplicitMap(SQUARE, (0, 2, 1, 3)))
        assert np.array_equal(lin.to_matrix(), [[0, 1], [1, 0]])


class TestGLOrder:
    """Test |GL(k, q)|."""

    @pytest.mark.parametrize("k,q,expected", [(1, 2, 1), (2, 2, 6), (3, 2, 168), (2, 3, 48), (1, 5, 4)])
    def test_values(self, k, q, expected):
        """Verify the closed form."""
        assert gl_order(k, q) == expected

    @pytest.mark.parametrize("k,q", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
    def test_matches_brute_force(self, k, q):
        """Verify the closed form equals the count of invertible matrices."""
        assert count_invertible(k, q) == gl_order(k, q)

    def test_invalid_arguments(self):
        """Verify bad q and k are rejected."""
        with pytest.raises(NotPrimePower):
            gl_order(2, 6)
        with pytest.raises(ValueError):
            gl_order(0, 2)


class TestRandomAutomorphism:
    """Test random automorphisms."""

    def test_reproducible(self):
        """Verify a fixed seed gives the same element."""
        s = space(3, (2, 2, 1))
        assert random_automorphism(s, 3) == random_automorphism(s, 3)

    def test_outputs_are_automorphisms(self):
        """Verify every sample expands to an automorphism and a symmetry."""
        s = space(2, (2, 1))
        for seed in range(20):
            f = expand_linear(random_automorphism(s, seed))
            assert is_automorphism(f)
            assert is_symmetry(f)

    def test_covers_order_two_group(self):
        """Verify 1000 draws on q=2, pi=(1,1) hit both automorphisms."""
        seen = {expand_linear(random_automorphism(SQUARE, seed)).table for seed in range(1000)}
        assert seen == {(0, 1, 2, 3), (0, 2, 1, 3)}
