"""Truncated Fourier operators on symmetric sets and their commuting differential operators."""

from .analysis import (
    PreconditionError,
    PswfSet,
    compute_pswf,
    convergence_study,
    verify_case,
    verify_commutation_matrix,
    verify_commutation_on_function,
    verify_cross_spectrum,
    verify_multiplicity_assignment,
    verify_symmetric_reduction,
)
from .diffops import DiffOpKind, DiffOpSpec, apply_diffop_pointwise, check_endpoint_conditions
from .domain import DomainKind, DomainSpec, QuadratureGrid, SampledFunction, build_grid
from .eigensolve import eig_sym_dense, eig_sym_tridiagonal, rayleigh_quotient
from .fourier import build_gram, build_parity, build_truncated_fourier
from .operators import OperatorMatrix, Storage
from .report import Claim, SpectralReport

__version__ = "0.1.0"
