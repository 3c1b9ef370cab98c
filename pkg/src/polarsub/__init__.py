"""Polar subcodes with dynamic frozen symbols.

Construction of binary codes as subcodes of extended BCH codes under the
polarizing transform, list successive-cancellation decoding, and
reproducible frame-error-rate simulation.
"""

from .binmat import (BitMatrix, digit_reversal, gpd, gpd_reconstruct,
                     kronecker_power, null_space, rank, right_rref,
                     row_space_equal)
from .channel import ChannelSpec, channel_llrs, frame_rng
from .construct import (CodeSpec, build_classical_polar, build_polar_subcode,
                        precoder_matrix, stack_outer_constraints,
                        theorem2_census)
from .decode import DecodeResult, ListDecoder, list_sc_decode, ml_oracle, sc_decode
from .galois import Coset, Field, cyclotomic_cosets, make_field, minimal_polynomial
from .parentcodes import (ParentCode, crc_constraint_rows, ebch_check_matrix,
                          generator_from_checks, min_distance_bruteforce,
                          rm_frozen_set)
from .polarize import (ConstraintSystem, Kernel, ReliabilityProfile,
                       bec_reliability, derive_constraints, eval_frozen,
                       ga_reliability, make_kernel, mc_reliability,
                       sc_error_prob, transform_encode)
from .simulate import SimReport, run_fer

__all__ = [
    "BitMatrix", "ChannelSpec", "CodeSpec", "ConstraintSystem", "Coset",
    "DecodeResult", "Field", "Kernel", "ListDecoder", "ParentCode",
    "ReliabilityProfile", "SimReport", "bec_reliability",
    "build_classical_polar", "build_polar_subcode", "channel_llrs",
    "crc_constraint_rows", "cyclotomic_cosets", "derive_constraints",
    "digit_reversal", "ebch_check_matrix", "eval_frozen", "frame_rng",
    "ga_reliability", "generator_from_checks", "gpd", "gpd_reconstruct",
    "kronecker_power", "list_sc_decode", "make_field", "make_kernel",
    "mc_reliability", "min_distance_bruteforce", "minimal_polynomial",
    "ml_oracle", "null_space", "precoder_matrix", "rank", "right_rref",
    "rm_frozen_set", "row_space_equal", "run_fer", "sc_decode",
    "sc_error_prob", "stack_outer_constraints", "transform_encode",
]

__version__ = "0.1.0"
