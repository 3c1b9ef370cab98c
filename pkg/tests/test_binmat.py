import numpy as np
import pytest

from polarsub.binmat import (BitMatrix, digit_reversal, gpd, gpd_reconstruct,
                             kronecker_power, null_space, permutation_matrix,
                             rank, right_rref, row_space_equal)

from conftest import G1_GOLDEN, G2_GOLDEN, G3_GOLDEN, bits


def rnd_matrix(rng, rows, cols):
    return BitMatrix.from_rows(rng.integers(0, 2, size=(rows, cols)))


class TestKronecker:
    def test_f2_squared(self):
        f2 = bits("10", "11")
        k = kronecker_power(f2, 2)
        assert k.to_array().tolist() == [
            [1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]]

    def test_power_one_is_identity_op(self):
        rng = np.random.default_rng(1)
        f = rnd_matrix(rng, 3, 3)
        assert kronecker_power(f, 1) == f

    def test_oversize_rejected(self):
        f2 = bits("10", "11")
        with pytest.raises(ValueError, match="limit"):
            kronecker_power(f2, 21)

    def test_subset_structure(self):
        # (F2^(x)m)[i, j] = 1 iff j's bits are a subset of i's
        k = kronecker_power(bits("10", "11"), 3).to_array()
        for i in range(8):
            for j in range(8):
                assert k[i, j] == ((i & j) == j)


class TestDigitReversal:
    def test_binary_examples(self):
        perm = digit_reversal(2, 3)
        assert perm[1] == 4
        assert perm[3] == 6

    def test_single_digit_identity(self):
        assert digit_reversal(2, 1) == [0, 1]

    def test_radix4(self):
        perm = digit_reversal(4, 2)
        assert perm[7] == 13  # (1,3) base 4 -> (3,1)

    def test_involution(self):
        for l, m in ((2, 5), (3, 3), (4, 2)):
            perm = digit_reversal(l, m)
            assert [perm[perm[i]] for i in range(len(perm))] == list(range(len(perm)))


class TestRightRref:
    def test_small_example(self):
        v, piv = right_rref(bits("110", "011"))
        assert piv == [1, 2]
        assert v.to_array().tolist() == [[1, 1, 0], [1, 0, 1]]

    def test_identity_fixed_point(self):
        i5 = BitMatrix.identity(5)
        v, piv = right_rref(i5)
        assert v == i5
        assert piv == list(range(5))

    def test_zero_matrix(self):
        v, piv = right_rref(BitMatrix.zeros(3, 4))
        assert v.rows == 0
        assert piv == []

    def test_idempotent(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            m = rnd_matrix(rng, rng.integers(1, 8), rng.integers(1, 12))
            v, piv = right_rref(m)
            v2, piv2 = right_rref(v)
            assert piv == piv2 and v == v2

    def test_invariant_under_row_operations(self):
        rng = np.random.default_rng(8)
        for _ in range(25):
            r, c = 6, 10
            m = rnd_matrix(rng, r, c)
            # random invertible left factor
            while True:
                q = rnd_matrix(rng, r, r)
                if rank(q) == r:
                    break
            v1, p1 = right_rref(m)
            v2, p2 = right_rref(q.matmul(m))
            assert p1 == p2
            assert v1 == v2

    def test_pivot_columns_are_singletons(self):
        rng = np.random.default_rng(9)
        m = rnd_matrix(rng, 6, 9)
        v, piv = right_rref(m)
        arr = v.to_array()
        for i, c in enumerate(piv):
            col = arr[:, c]
            assert col.sum() == 1 and col[i] == 1
            # pivot is the last nonzero entry of its row
            assert arr[i, c:].sum() == 1


class TestNullSpace:
    def test_identity_has_trivial_kernel(self):
        assert null_space(BitMatrix.identity(4)).rows == 0

    def test_parity_row(self):
        ns = null_space(bits("11"))
        assert ns.to_array().tolist() == [[1, 1]]

    def test_random_dimensions_and_orthogonality(self):
        rng = np.random.default_rng(10)
        for _ in range(20):
            m = rnd_matrix(rng, 8, 12)
            ns = null_space(m)
            assert ns.rows == 12 - rank(m)
            for r in ns.row_bits:
                for h in m.row_bits:
                    assert (r & h).bit_count() % 2 == 0


class TestRowSpaceEqual:
    def test_permuted_rows(self):
        rng = np.random.default_rng(11)
        m = rnd_matrix(rng, 5, 9)
        shuffled = BitMatrix(5, 9, [m.row_bits[i] for i in rng.permutation(5)])
        assert row_space_equal(m, shuffled)

    def test_elementary_operation(self):
        m = bits("1100", "0110")
        m2 = bits("1100", "1010")  # second row replaced by sum
        assert row_space_equal(m, m2)

    def test_detects_difference(self):
        assert not row_space_equal(bits("10"), bits("01"))


class TestGpd:
    def test_worked_example(self, gen_16_7_6):
        g1, g2, g3, (k1, k3) = gpd(gen_16_7_6)
        assert (k1, g2.rows, k3) == (3, 4, 2)
        assert row_space_equal(g1, bits(*G1_GOLDEN))
        assert row_space_equal(g2, bits(*G2_GOLDEN))
        assert row_space_equal(g3, bits(*G3_GOLDEN))
        rec = gpd_reconstruct(g1, g2, g3, (k1, k3))
        assert row_space_equal(rec, gen_16_7_6)

    def test_pure_repetition(self):
        ga = bits("101", "011")
        g = ga.hstack(ga)
        g1, g2, g3, (k1, k3) = gpd(g)
        assert k1 == 0 and k3 == 0
        assert row_space_equal(g2, ga)

    def test_dependent_rows_rejected(self):
        g = bits("1010", "1010")
        with pytest.raises(ValueError, match="dependent"):
            gpd(g)

    def test_random_codes_reconstruct(self):
        rng = np.random.default_rng(12)
        done = 0
        while done < 200:
            half = int(rng.integers(2, 17))
            k = int(rng.integers(1, 2 * half))
            g = rnd_matrix(rng, k, 2 * half)
            if rank(g) != k:
                continue
            g1, g2, g3, shape = gpd(g)
            assert shape[0] + g2.rows == k
            assert shape[1] <= shape[0]
            assert rank(g1) == shape[0] and rank(g2) == g2.rows
            rec = gpd_reconstruct(g1, g2, g3, shape)
            assert row_space_equal(rec, g)
            done += 1

    def test_g2_rows_have_equal_halves(self, gen_16_7_6):
        g1, g2, g3, shape = gpd(gen_16_7_6)
        rec = gpd_reconstruct(g1, g2, g3, shape)
        # rows beyond k1 must repeat their halves
        arr = rec.to_array()
        for i in range(shape[0], rec.rows):
            assert (arr[i, :8] == arr[i, 8:]).all()


def test_permutation_matrix_left_action():
    perm = [2, 0, 1]
    p = permutation_matrix(perm)
    m = bits("100", "010", "001")
    assert p.matmul(m).to_array().tolist() == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
