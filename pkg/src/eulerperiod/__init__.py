"""Euler up/down numbers modulo q: preperiods, periods, and Arnold's sequence."""
from .arnold import ArnoldTable, arnold_sequence, diagonal_minima, valuation_row
from .conjectures import (
    Prediction,
    Scope,
    VerificationReport,
    Verdict,
    check_kb_bounds,
    crt_check,
    kb_bounds,
    kb_d,
    predict,
    verify_suite,
)
from .core_arith import CappedValuation, DomainError, PrimePowerFactorization, Residue, factorize, v2_capped
from .ftransform import apply_f, f_transform
from .periodicity import PeriodProfile, detect, profile_euler
from .seidel import EulerSequence, TriangleRow, brute_force_entringer, euler_sequence, next_row

__version__ = "0.1.0"
