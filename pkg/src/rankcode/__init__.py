"""Rank-metric codes: Gabidulin and twisted Gabidulin codes over GF(q^n).

Field elements are plain ints packing base-q digits (``sum c_i q^i``), so
``GF(q)`` is ``range(q)`` and the generator ``x`` of GF(q^n) is the int ``q``.
"""

from .errors import (CoefficientOutOfRange, DecodeFailure, DegenerateLeadingCoefficient,
                     DivisionByZero, InvalidRank, KernelDimMismatch, MalformedInput,
                     RankCodeError, SingularMatrix, TooLarge)
from .gabidulin import (BmState, CodeParams, DecodeOutcome, bm_run, bm_solve, decode, encode,
                        evaluate, interpolate, reconstruct_error_poly, u_sequence)
from .gf import FieldCtx, PrimeField, fe_vector_rank, mat_inv_gfqn, mat_kernel_gfq, \
    mat_kernel_gfqn, mat_rank_gfq, mat_rank_gfqn
from .harness import (OracleResult, TrialRecord, inject_error, min_distance, oracle_decode,
                      records_to_csv, simulate, write_csv)
from .linpoly import (LinPoly, dickson, format_linpoly, from_trace_terms, lp_compose, lp_eval,
                      lp_kernel, lp_rank, moore, parse_linpoly, random_error_poly, rank_decompose)
from .rng import SplitMix64
from .twisted import (TwistedParams, build_system, p_of_a_roots, raw_p_roots, solve_dim2_system,
                      t_decode, t_encode, trinomial_roots)

__version__ = "0.1.0"
