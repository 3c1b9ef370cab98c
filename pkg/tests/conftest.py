"""Shared fixtures: the worked (16,7,6) extended BCH code and its goldens."""

import numpy as np
import pytest

from polarsub import (BitMatrix, bec_reliability, build_polar_subcode,
                      derive_constraints, ebch_check_matrix, make_field,
                      make_kernel)


def bits(*rows):
    """Rows given as bit strings, e.g. bits('1010', '0101')."""
    return BitMatrix.from_rows([[int(ch) for ch in r] for r in rows])


# Generator of the (16,7,6) code as printed in the worked example.
GEN_16_7_6 = [
    "1001011010010110",
    "0101010101010101",
    "0011001100110011",
    "0000111100001111",
    "0010101100011000",
    "1000001011011000",
    "1111111100000000",
]

# Its Plotkin-style factors.
G1_GOLDEN = ["00110011", "01011010", "11111111"]
G2_GOLDEN = ["10010110", "01010101", "00110011", "00001111"]
G3_GOLDEN = ["00011000", "11011000"]

# Binary constraint matrix rows of the same code under the 16-point
# polarizing transform (u . V^T = 0 form).
V_GOLDEN_16_7_6 = [
    "0000000000101000",
    "0001010000100000",
    "0000010001000000",
    "0000000010000000",
    "0001001000000000",
    "0000100000000000",
    "0010000000000000",
    "0100000000000000",
    "1000000000000000",
]

FROZEN_16_7_6 = (0, 1, 2, 4, 6, 8, 9, 10, 12)

# Bhattacharyya parameters on BEC(1/2) after four levels, as printed
# (index: value at the printed precision).
Z16_PRINTED = [0.999, 0.992, 0.985, 0.77, 0.96, 0.65, 0.53, 0.1,
               0.9, 0.47, 0.35, 3.7e-2, 0.23, 1.5e-2, 7.8e-3, 1.5e-5]


@pytest.fixture(scope="session")
def field16():
    return make_field(4)


@pytest.fixture(scope="session")
def ebch_16_7_6(field16):
    return ebch_check_matrix(field16, 6)


@pytest.fixture(scope="session")
def arikan():
    return make_kernel("arikan", 2)


@pytest.fixture(scope="session")
def cs_16_7_6(ebch_16_7_6, arikan):
    return derive_constraints(ebch_16_7_6, arikan, 4)


@pytest.fixture(scope="session")
def spec_16_6(cs_16_7_6, ebch_16_7_6):
    profile = bec_reliability(4, 0.5)
    return build_polar_subcode(cs_16_7_6, profile, 6,
                               parent_label=ebch_16_7_6.label)


@pytest.fixture(scope="session")
def gen_16_7_6():
    return BitMatrix.from_rows([[int(c) for c in r] for r in GEN_16_7_6])
