"""Tikhonov regularization with oversmoothing penalties in diagonal Hilbert scales.

Parameter choice by the sequential discrepancy principle, a separable
benchmark problem with a logarithmic source condition, and numerical
diagnostics for the accompanying convergence-rate bounds.
"""

from .auxiliary import a_priori_beta, auxiliary_element, chi, chi_inverse
from .discrepancy import DiscrepancyConfig, check_bracket, select_alpha
from .exceptions import (
    ConfigurationError,
    ConstructionError,
    InvalidInputError,
    LagrangeSolveError,
    SearchFailure,
)
from .experiment import TABLE1_DELTAS, NoiseSpec, SweepRow, oracle_minimize, perturb, phi_of_delta, run_sweep
from .hilbert_scale import DiagonalHilbertScale, IndexFunctionPhi, check_index_function, check_interpolation
from .model import SourceSpec, TestProblem, estimate_smoothing_constants, make_paper_problem
from .solver import RegularizedSolution, coordinate_minimize, minimize_tikhonov, residual_norm

__version__ = "0.1.0"
