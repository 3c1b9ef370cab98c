import numpy as np
import pytest

from polarsub.binmat import BitMatrix, rank, row_space_equal
from polarsub.galois import cyclotomic_cosets, make_field
from polarsub.parentcodes import (crc_constraint_rows, crc_remainder_bits,
                                  ebch_check_matrix, generator_from_checks,
                                  min_distance_bruteforce, rm_frozen_set)
from polarsub.polarize import ConstraintSystem

from conftest import bits


class TestEbchCheckMatrix:
    def test_16_7_6_parameters(self, ebch_16_7_6):
        assert (ebch_16_7_6.n, ebch_16_7_6.k) == (16, 7)
        assert rank(ebch_16_7_6.H) == 9

    def test_printed_generator_is_ebch_under_its_field(self, gen_16_7_6):
        # the worked generator matrix coordinatizes the code via x^4 + x + 1
        code = ebch_check_matrix(make_field(4, 0b10011), 6)
        for g in gen_16_7_6.row_bits:
            assert code.contains(g)
        assert code.k == gen_16_7_6.rows

    def test_single_parity_check(self, field16):
        code = ebch_check_matrix(field16, 2)
        assert code.k == code.n - 1
        assert code.H.rows == 1
        assert code.H.row_bits[0] == (1 << code.n) - 1

    def test_m5_d4_dimension(self):
        f = make_field(5)
        code = ebch_check_matrix(f, 4)
        assert code.k == 32 - (1 + 5)

    def test_rank_matches_coset_count(self):
        # n - k = 1 + sum of coset sizes with representative in [1, d-1)
        for m in (4, 5, 6, 7):
            f = make_field(m)
            cosets = cyclotomic_cosets(m)
            for d in range(2, (1 << m) + 1, max(1, m - 2)):
                code = ebch_check_matrix(f, d)
                expected = 1 + sum(c.size for c in cosets
                                   if 1 <= c.representative < d - 1)
                assert code.n - code.k == min(expected, code.n), (m, d)

    def test_generators_have_even_weight(self):
        f = make_field(5)
        for d in (2, 4, 6, 8):
            code = ebch_check_matrix(f, d)
            gen = generator_from_checks(code.H)
            for g in gen.row_bits:
                assert g.bit_count() % 2 == 0

    def test_design_distance_is_lower_bound(self):
        for m in (4, 5):
            f = make_field(m)
            for d in range(2, 9, 2):
                code = ebch_check_matrix(f, d)
                if code.k == 0 or code.k > 26:
                    continue
                gen = generator_from_checks(code.H)
                assert min_distance_bruteforce(gen) >= d

    def test_locator_powers_match_displayed_values(self, field16):
        # spot values of the third-power locator column in the worked table
        f = field16
        a = 2
        assert f.power(f.add(1, f.power(a, 2)), 3) == f.add(1, a)  # x_5
        assert f.power(f.power(a, 3), 3) == f.add(1, f.power(a, 2))  # x_8
        x15 = 1 ^ a ^ f.power(a, 2) ^ f.power(a, 3)
        assert f.power(x15, 3) == f.power(a, 3)  # x_15

    def test_d_out_of_range(self, field16):
        with pytest.raises(ValueError):
            ebch_check_matrix(field16, 1)
        with pytest.raises(ValueError):
            ebch_check_matrix(field16, 17)

    def test_nondefault_basis_same_dimensions(self, field16):
        code = ebch_check_matrix(field16, 6, basis=(1, 2, 4, 8))
        alt = ebch_check_matrix(field16, 6, basis=(3, 2, 4, 8))
        assert code.k == alt.k == 7
        assert not row_space_equal(code.H, alt.H)  # different coordinates


class TestRmFrozenSet:
    def test_weight_one_m3(self):
        assert rm_frozen_set(1, 3) == (0, 1, 2, 4)

    def test_full_freeze(self):
        assert len(rm_frozen_set(4, 4)) == 16

    def test_matches_static_freezes_of_worked_example(self):
        assert rm_frozen_set(1, 4) == (0, 1, 2, 4, 8)

    def test_bounds(self):
        with pytest.raises(ValueError):
            rm_frozen_set(5, 4)


class TestCrcConstraints:
    def test_zero_degree_error(self):
        base = ConstraintSystem(n=8, frozen=(0,), rows={0: ()})
        with pytest.raises(ValueError):
            crc_constraint_rows(base, 0)

    def test_overall_parity(self):
        # n=8, 4 open positions, parity CRC (x + 1): the last open position
        # becomes the XOR of the first three
        base = ConstraintSystem(n=8, frozen=(0, 1, 2, 4),
                                rows={j: () for j in (0, 1, 2, 4)})
        out = crc_constraint_rows(base, 0b11)
        assert out.frozen == (0, 1, 2, 4, 7)
        assert out.rows[7] == (3, 5, 6)

    def test_too_many_crc_bits(self):
        base = ConstraintSystem(n=4, frozen=(0, 1), rows={0: (), 1: ()})
        with pytest.raises(ValueError):
            crc_constraint_rows(base, 0b111)  # 2 CRC bits, 2 open

    def test_reencoded_words_pass_crc(self):
        rng = np.random.default_rng(4)
        base = ConstraintSystem(n=16, frozen=(0, 1, 2, 4, 8),
                                rows={j: () for j in (0, 1, 2, 4, 8)})
        poly = 0b1011  # x^3 + x + 1
        cs = crc_constraint_rows(base, poly)
        open_pos = [i for i in range(16) if i not in cs.frozen]
        crc_pos = [i for i in base.unfrozen if i not in open_pos]
        assert len(crc_pos) == 3
        from polarsub.construct import precoder_matrix
        w = precoder_matrix(cs).to_array()
        for _ in range(50):
            x = rng.integers(0, 2, size=cs.k, dtype=np.uint8)
            sel = w[x == 1]
            u = np.bitwise_xor.reduce(sel, axis=0) if sel.size else np.zeros(16, np.uint8)
            msg = [int(u[i]) for i in open_pos]
            reg = crc_remainder_bits(msg, poly)
            got = 0
            for t, p in enumerate(crc_pos):
                got |= int(u[p]) << (2 - t)
            assert got == reg


class TestMinDistance:
    def test_worked_example_distance(self, gen_16_7_6):
        assert min_distance_bruteforce(gen_16_7_6) == 6

    def test_repetition(self):
        g = BitMatrix(1, 9, [(1 << 9) - 1])
        assert min_distance_bruteforce(g) == 9

    def test_subcode_distance_at_least_parent(self, spec_16_6):
        from polarsub.parentcodes import generator_from_checks
        from polarsub.polarize import transform_matrix, make_kernel
        gen_u = generator_from_checks(spec_16_6.constraints.to_matrix())
        a = transform_matrix(make_kernel("arikan", 2), 4)
        assert min_distance_bruteforce(gen_u.matmul(a)) >= 6

    def test_dimension_bound(self):
        g = BitMatrix.identity(27)
        with pytest.raises(ValueError, match="bound"):
            min_distance_bruteforce(g)
