"""Strongly separable matrices for nonadaptive combinatorial group testing."""

from .codes import QaryCode, columns_as_code, concatenate, descendant, is_ssc, minimal_frames
from .construction import build_2ssm, expurgate_to_ssc, known_bounds, random_code, rate_bound
from .decoding import DecodeResult, decode_dm, decode_sm_table, decode_ssm, run_campaign
from .matrix import BinaryMatrix, BooleanVector, boolean_sum, covers, read_matrix, write_matrix
from .properties import PropertyReport, is_bar_separable, is_disjunct, is_ssm, is_ssm_bruteforce
from .search import search_max

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "BooleanVector",
    "DecodeResult",
    "PropertyReport",
    "QaryCode",
    "boolean_sum",
    "build_2ssm",
    "columns_as_code",
    "concatenate",
    "covers",
    "decode_dm",
    "decode_sm_table",
    "decode_ssm",
    "descendant",
    "expurgate_to_ssc",
    "is_bar_separable",
    "is_disjunct",
    "is_ssc",
    "is_ssm",
    "is_ssm_bruteforce",
    "known_bounds",
    "minimal_frames",
    "random_code",
    "rate_bound",
    "read_matrix",
    "run_campaign",
    "search_max",
    "write_matrix",
]
