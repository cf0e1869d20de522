"""Stratification combinatorics and exact valuation dynamics for Hilbert modular varieties with level p."""

from .index import EmbSet, PrimeSplitting, ideal_block, shift
from .strata import AdmissiblePair, TAdmissiblePair, enumerate_admissible, enumerate_t_admissible, is_admissible
from .cube import FaceCode, face_in_closure, face_of_vector, face_to_pair, pair_to_face
from .dynamics import (
    Interval,
    IntervalVector,
    PrimeClass,
    Role,
    ValuationVector,
    classify_at_prime,
    in_U,
    iterate_canonical,
    pi_exact,
    pi_fiberwise,
    quotient_valuation,
    reduction_precision,
    section_dagger,
    w_map,
)
from .errors import DomainError, GuardError, InvariantViolation, ParseError, SplittingMismatchError, TooSingularError

__version__ = "0.1.0"
