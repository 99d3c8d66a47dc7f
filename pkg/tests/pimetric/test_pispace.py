"""
Test the pi-Metric Space

Tests verify partitions, vector enumeration, the pi-weight and
pi-distance, and minimum distances of linear error-block codes:
- Partition validation and size profiles
- Enumeration order and index conversions
- Metric axioms and translation invariance, exhaustively for q^n <= 256
- Minimum pi-distance of small codes
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pimetric.errors import (
    InvalidPartition,
    PartitionNotSorted,
    SpaceMismatch,
    SpaceTooLarge,
    ZeroCode,
)
from pimetric.ffield import make_field
from pimetric.pispace import (
    BlockVector,
    GeneratorMatrix,
    Partition,
    PiSpace,
    block_distance_rows,
    code_min_distance,
    enumerate_vectors,
    hamming_distance,
    pi_distance,
    pi_weight,
)


def space(q, blocks):
    return PiSpace(make_field(q), Partition(tuple(blocks)))


def vec(q, blocks):
    return BlockVector.from_blocks(make_field(q), blocks)


class TestPartition:
    """Test partition construction."""

    def test_basic_properties(self):
        """Verify n, m and offsets."""
        pi = Partition((3, 2, 2, 1))
        assert (pi.n, pi.m) == (8, 4)
        assert pi.offsets == (0, 3, 5, 7)
        assert str(pi) == "3,2,2,1"

    def test_profile(self):
        """Verify the size profile groups equal sizes."""
        assert Partition((2, 2, 1)).profile().entries == ((2, 2), (1, 1))
        assert Partition((1, 1, 1)).profile().multiplicities == (3,)

    def test_unsorted_rejected(self):
        """Verify increasing sizes raise PartitionNotSorted."""
        with pytest.raises(PartitionNotSorted):
            Partition((1, 2))

    @pytest.mark.parametrize("blocks", [(), (0,), (2, -1), (True,)])
    def test_invalid_rejected(self, blocks):
        """Verify empty and non-positive partitions are rejected."""
        with pytest.raises(InvalidPartition):
            Partition(blocks)

    def test_parse(self):
        """Verify the comma-separated form."""
        assert Partition.parse("2,1").blocks == (2, 1)
        with pytest.raises(InvalidPartition):
            Partition.parse("2,x")

    def test_hamming(self):
        """Verify the all-ones partition."""
        assert Partition.hamming(3).blocks == (1, 1, 1)


class TestEnumeration:
    """Test vector enumeration and index conversions."""

    def test_order_is_lexicographic(self):
        """Verify q=2, pi=(2,1) enumerates 000, 001, 010, ..., 111."""
        vectors = enumerate_vectors(make_field(2), Partition((2, 1)))
        assert [v.coords for v in vectors] == [
            (0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1),
            (1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1),
        ]

    def test_index_round_trip(self):
        """Verify index, block values and coordinates agree for every vector."""
        s = space(3, (2, 1))
        for i in range(s.size):
            v = s.vector(i)
            assert v.index == i
            assert s.index_from_block_values(s.block_values_of(i)) == i
            assert tuple(s.all_block_values[i]) == s.block_values_of(i)
            assert tuple(s.all_coords[i]) == v.coords

    def test_block_coords(self):
        """Verify block values read as base-q numbers, most significant first."""
        s = space(2, (2, 1))
        assert s.block_coords(0, 2) == (1, 0)
        assert s.block_value_from_coords((1, 0)) == 2

    def test_too_large(self):
        """Verify enumeration refuses spaces above the cap."""
        with pytest.raises(SpaceTooLarge):
            enumerate_vectors(make_field(2), Partition.hamming(21))


class TestVectors:
    """Test BlockVector arithmetic and text form."""

    def test_str(self):
        """Verify the '1,0|1' text form."""
        assert str(vec(2, [[1, 0], [1]])) == "1,0|1"

    def test_arithmetic(self):
        """Verify addition, negation and scaling over GF(3)."""
        u = vec(3, [[1, 2], [0]])
        v = vec(3, [[2, 2], [1]])
        assert (u + v).coords == (0, 1, 1)
        assert (-u).coords == (2, 1, 0)
        assert (u - u).is_zero()
        assert u.scale(2).coords == (2, 1, 0)

    def test_scale_by_field_element(self):
        """Verify scaling by a FieldElement of the same field."""
        f = make_field(4)
        u = BlockVector.from_blocks(f, [[2, 1]])
        assert u.scale(f.element(2)).coords == (3, 2)

    def test_space_mismatch(self):
        """Verify vectors of different partitions do not mix."""
        with pytest.raises(SpaceMismatch):
            vec(2, [[1, 0], [1]]) + vec(2, [[1], [0], [1]])
        with pytest.raises(SpaceMismatch):
            pi_distance(vec(2, [[1]]), vec(3, [[1]]))

    def test_wrong_length(self):
        """Verify coordinates must fill the partition."""
        with pytest.raises(SpaceMismatch):
            BlockVector(make_field(2), Partition((2, 1)), (1, 0))


class TestPiMetric:
    """Test the pi-weight and pi-distance."""

    def test_weight_counts_nonzero_blocks(self):
        """Verify (1,0|1) has pi-weight 2 and (1,1|0) has pi-weight 1."""
        assert pi_weight(vec(2, [[1, 0], [1]])) == 2
        assert pi_weight(vec(2, [[1, 1], [0]])) == 1
        assert pi_weight(vec(2, [[0, 0], [0]])) == 0

    def test_distance_vs_hamming(self):
        """Verify one changed block with two changed coordinates has distance 1."""
        u = vec(2, [[0, 0], [0]])
        v = vec(2, [[1, 1], [0]])
        assert pi_distance(u, v) == 1
        assert hamming_distance(u, v) == 2

    def test_hamming_partition_is_hamming_metric(self):
        """Verify all-ones blocks give the Hamming distance."""
        s = space(3, (1, 1, 1))
        for i in range(s.size):
            for j in range(s.size):
                assert pi_distance(s.vector(i), s.vector(j)) == hamming_distance(s.vector(i), s.vector(j))

    @pytest.mark.parametrize("q,blocks", [
        (2, (1,)),
        (2, (2, 1)),
        (2, (3, 2, 2, 1)),
        (3, (2, 1)),
        (3, (1, 1, 1, 1, 1)),
        (4, (2, 1, 1)),
        (5, (2, 1)),
        (7, (1, 1)),
        (9, (2,)),
        (16, (1, 1)),
    ])
    def test_metric_axioms_exhaustive(self, q, blocks):
        """Verify the metric axioms, translation invariance and that pi_distance matches the batch rows."""
        s = space(q, blocks)
        values = s.all_block_values
        dist = block_distance_rows(s, values, values)

        assert (np.diag(dist) == 0).all()
        off_diagonal = ~np.eye(s.size, dtype=bool)
        assert (dist[off_diagonal] > 0).all()
        assert (dist == dist.T).all()
        for v in range(s.size):
            assert (dist[:, [v]] + dist[[v], :] >= dist).all()

        coords = s.all_coords
        add = s.field.add_table
        for w in range(s.size):
            shifted = add[coords, coords[w]] @ s.index_weights
            assert (dist[np.ix_(shifted, shifted)] == dist).all()

        vectors = [s.vector(i) for i in range(s.size)]
        for i, u in enumerate(vectors):
            assert [pi_distance(u, v) for v in vectors] == dist[i].tolist()

    @given(st.data())
    def test_distance_properties_large_space(self, data):
        """Verify the metric axioms on random vectors of q=5, pi=(3,2,2,1)."""
        f = make_field(5)
        pi = Partition((3, 2, 2, 1))
        draw = lambda: BlockVector(f, pi, tuple(data.draw(st.lists(st.integers(0, 4), min_size=8, max_size=8))))
        u, v, w = draw(), draw(), draw()
        assert pi_distance(u, v) == pi_distance(v, u)
        assert pi_distance(u, w) <= pi_distance(u, v) + pi_distance(v, w)
        assert pi_distance(u + w, v + w) == pi_distance(u, v)
        assert (pi_distance(u, v) == 0) == (u == v)


class TestCodes:
    """Test minimum distance of linear error-block codes."""

    def test_repetition_code(self):
        """Verify the binary repetition code of length 3 has distance 3."""
        g = GeneratorMatrix((vec(2, [[1], [1], [1]]),))
        assert code_min_distance(g) == 3

    def test_single_row(self):
        """Verify span{(1,0|1)} over pi=(2,1) has distance 2."""
        g = GeneratorMatrix((vec(2, [[1, 0], [1]]),))
        assert code_min_distance(g) == 2

    def test_full_space(self):
        """Verify standard basis rows give distance 1."""
        rows = tuple(vec(2, blocks) for blocks in ([[1, 0], [0]], [[0, 1], [0]], [[0, 0], [1]]))
        assert code_min_distance(GeneratorMatrix(rows)) == 1

    def test_dependent_rows(self):
        """Verify repeated rows do not change the code."""
        row = vec(3, [[1, 2], [1]])
        assert code_min_distance(GeneratorMatrix((row, row.scale(2)))) == 2

    def test_zero_code(self):
        """Verify zero rows and an empty matrix raise ZeroCode."""
        with pytest.raises(ZeroCode):
            code_min_distance(GeneratorMatrix((vec(2, [[0, 0], [0]]),)))
        with pytest.raises(ZeroCode):
            GeneratorMatrix(())
