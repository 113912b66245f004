"""Bound-state solvers for hyperbolic confining wells.

Three independent routes to the same spectra: a tridiagonal
wave-operator representation in a Jacobi basis (capped by finite
orthogonality), Hamiltonian diagonalization in a relaxed basis with
Gauss-quadrature matrix elements (unlimited size), and a
finite-difference oracle for cross-checking both.
"""

from .eigen import SymmetricDense, TridiagonalSymmetric, eig_dense, eig_tridiagonal
from .fd import GridSpec, fd_spectrum, node_count_fd, solve_potential_grid
from .hdm import HdmAssembly, HdmConfig, assemble_h, spectrum_hdm
from .jacobi_basis import (
    BasisSpec,
    QuadratureRule,
    basis_eval,
    gauss_rule,
    jacobi_eval,
    norm_ratio,
    orthonormal_table,
    recursion_coeffs,
)
from .potentials import (
    CENTRIFUGAL_COEFFS,
    EffectiveParams,
    PotentialSpec,
    TraParams,
    centrifugal_approx,
    centrifugal_error,
    effective_params,
    map_to_basis,
    nmax_bound,
    potential_value,
    t_matrix_size_cap,
)
from .spectrum import Spectrum
from .tra import (
    CoefficientSet,
    build_t_matrix,
    closed_form_spectrum,
    hbar_eval,
    refine_eigenvalue,
    spectrum_tra,
)
from .waves import WaveSample, eval_radial, parity_extend

__version__ = "0.1.0"

__all__ = [
    "BasisSpec",
    "CENTRIFUGAL_COEFFS",
    "CoefficientSet",
    "EffectiveParams",
    "GridSpec",
    "HdmAssembly",
    "HdmConfig",
    "PotentialSpec",
    "QuadratureRule",
    "Spectrum",
    "SymmetricDense",
    "TraParams",
    "TridiagonalSymmetric",
    "WaveSample",
    "assemble_h",
    "basis_eval",
    "build_t_matrix",
    "centrifugal_approx",
    "centrifugal_error",
    "closed_form_spectrum",
    "effective_params",
    "eig_dense",
    "eig_tridiagonal",
    "eval_radial",
    "fd_spectrum",
    "gauss_rule",
    "hbar_eval",
    "jacobi_eval",
    "map_to_basis",
    "nmax_bound",
    "node_count_fd",
    "norm_ratio",
    "orthonormal_table",
    "parity_extend",
    "potential_value",
    "recursion_coeffs",
    "refine_eigenvalue",
    "solve_potential_grid",
    "spectrum_hdm",
    "spectrum_tra",
    "t_matrix_size_cap",
]
