"""Spectral solver built on the tridiagonal wave-operator representation.

In the mapped Jacobi basis the wave operator is a symmetric tridiagonal
matrix T whose eigenvalues are the dimensionless energies; the expansion
coefficients of each eigenstate obey a three-term recursion whose
polynomial solutions are generated here as well.  The usable matrix size
is capped by the finite orthogonality of the basis, which is what makes
the companion Hamiltonian-diagonalization solver (``hdm``) necessary for
most parameter sets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigen import TridiagonalSymmetric, eig_tridiagonal
from .jacobi_basis import BasisSpec, _coeff_c, _coeff_d, norm_ratio
from .potentials import PotentialSpec, TraParams, effective_params, map_to_basis, t_matrix_size_cap
from .spectrum import Spectrum

__all__ = [
    "CoefficientSet",
    "build_t_matrix",
    "spectrum_tra",
    "closed_form_spectrum",
    "hbar_eval",
    "refine_eigenvalue",
]

_SHIFT_CONVENTIONS = ("series_3_2", "literal_3_5")

# Per-level convergence target used for the n vs n-5 self-comparison.
_TRA_TOL = 1e-9


@dataclass(frozen=True)
class CoefficientSet:
    """Expansion-coefficient polynomials evaluated at one energy.

    ``pk_values[k]`` is the degree-k polynomial value (pk_values[0] = 1);
    ``fk_ratios[k]`` the corresponding coefficient ratio f_k/f_0 in the
    orthonormal basis.
    """

    eps: float
    pk_values: np.ndarray
    fk_ratios: np.ndarray


def build_t_matrix(
    p: TraParams, ell: int, n: int, shift_convention: str = "series_3_2"
) -> TridiagonalSymmetric:
    """n x n tridiagonal wave-operator matrix for the mapped parameters.

    Canonical convention ("series_3_2"): diag_k = -[(k+s)^2 + u0 C_k] with
    s = (mu+nu+1)/2, a pure shifted-energy matrix; the centrifugal energy
    shift is added downstream.  "literal_3_5" additionally puts
    +ell(ell+1)/12 on the diagonal and is retained for A/B comparison
    only.  Off-diagonal: u0 D_k.
    """
    if shift_convention not in _SHIFT_CONVENTIONS:
        raise ValueError(f"shift_convention must be one of {_SHIFT_CONVENTIONS}")
    # the coupled matrix holds <k|y|k> moments, absent in the diagonal limit
    cap = t_matrix_size_cap(p) if p.u0 != 0.0 else _nmax_from_params(p) + 1
    if n < 1:
        raise ValueError("matrix size must be positive")
    if n > cap:
        raise ValueError(
            f"TRA basis exhausted; use HDM (size {n} exceeds the "
            f"finite-orthogonality cap {cap})"
        )
    k = np.arange(n)
    s = (p.mu + p.nu + 1.0) / 2.0
    diag = -((k + s) ** 2 + p.u0 * _coeff_c(k, p.mu, p.nu))
    if shift_convention == "literal_3_5":
        diag = diag + ell * (ell + 1) / 12.0
    off = p.u0 * _coeff_d(k[:-1], p.mu, p.nu) if n > 1 else np.zeros(0)
    return TridiagonalSymmetric(diag=diag, offdiag=off)


def _eps_tra(spec: PotentialSpec, n: int) -> np.ndarray:
    p = map_to_basis(spec)
    t = build_t_matrix(p, spec.ell, n)
    return eig_tridiagonal(t)


def spectrum_tra(spec: PotentialSpec, n: int) -> Spectrum:
    """All n eigenvalues of the size-n wave-operator matrix.

    Physical energies are lam^2 eps / 2 plus the centrifugal shift.
    Convergence is estimated by re-solving at size n-5.
    """
    eps = _eps_tra(spec, n)
    e_shift = effective_params(spec).e_shift
    energies = spec.lam**2 * eps / 2.0 + e_shift
    err = np.full(n, np.nan)
    conv = np.zeros(n, dtype=bool)
    if n > 5:
        eps_small = _eps_tra(spec, n - 5)
        m = eps_small.size
        err[:m] = np.abs(spec.lam**2 * (eps[:m] - eps_small) / 2.0)
        conv[:m] = err[:m] < _TRA_TOL
    return Spectrum(
        eps=eps,
        energies=energies,
        method="tra",
        basis_size=n,
        err_est=err,
        converged=conv,
    )


def closed_form_spectrum(spec: PotentialSpec, n: int) -> float:
    """E_n for v2 = 0, where the wave-operator matrix is diagonal.

    eps_n = -(n + (mu+nu+1)/2)^2 with the mapped basis parameters: the
    hyperbolic Poschl-Teller ladder.  For radial3d this is
    -1/4 (2n + 1 + sqrt(8 v0/lam^2 + 1/4) - sqrt(1/4 - 8 v1/lam^2))^2;
    the 1D parity sectors take mu = -/+ 1/2 instead of the positive
    root.  Valid for n <= nmax_bound.
    """
    if spec.v2 != 0.0:
        raise ValueError("closed-form spectrum requires v2 = 0")
    p = map_to_basis(spec)
    if n < 0 or n > _nmax_from_params(p):
        raise ValueError(f"level not bound: n = {n} exceeds the basis cap")
    eff = effective_params(spec)
    eps_n = -((n + (p.mu + p.nu + 1.0) / 2.0) ** 2)
    return float(spec.lam**2 * eps_n / 2.0 + eff.e_shift)


def _nmax_from_params(p: TraParams) -> int:
    bound = -(p.mu + p.nu + 1.0) / 2.0
    n = int(np.floor(bound))
    return n - 1 if n == bound else n


def hbar_eval(p: TraParams, eps: float, k_max: int) -> CoefficientSet:
    """Coefficient polynomials P_0..P_kmax at the energy eps.

    Generated upward from P_{-1} = 0, P_0 = 1 through the three-term
    recursion; defined for any real eps, eigenvalue or not.  fk_ratios
    carries the orthonormal-basis coefficient ratios
    f_k/f_0 = sqrt(norm ratio) * P_k.

    Forward recursion picks up the dominant solution, so for strongly
    bound states the ratios below ~1e-10 of the leading one are noise;
    see ``refine_eigenvalue`` for the best achievable eigenvalue input.
    """
    if p.u0 == 0.0:
        raise ValueError("u0 = 0 degenerates the recursion; use the closed form")
    if k_max < 0 or k_max > _nmax_from_params(p):
        raise ValueError(f"k_max = {k_max} exceeds the basis cap")
    mu, nu, u0 = p.mu, p.nu, p.u0
    s = (mu + nu + 1.0) / 2.0
    pk = np.zeros(k_max + 1)
    pk[0] = 1.0
    prev = 0.0
    for k in range(k_max):
        a_k = 2 * (k + 1) * (k + mu + nu + 1) / ((2 * k + mu + nu + 1) * (2 * k + mu + nu + 2))
        b_k = 2 * (k + mu) * (k + nu) / ((2 * k + mu + nu) * (2 * k + mu + nu + 1)) if k > 0 else 0.0
        if a_k == 0.0:
            raise ValueError(f"zero recursion denominator at k = {k}")
        rhs = ((eps + (k + s) ** 2) / u0 + _coeff_c(k, mu, nu)) * pk[k] - b_k * prev
        prev = pk[k]
        pk[k + 1] = rhs / a_k
    bspec = BasisSpec(mu=mu, nu=nu, size_n=k_max + 1)
    ratios = np.array([np.sqrt(norm_ratio(bspec, k)) for k in range(k_max + 1)])
    return CoefficientSet(eps=float(eps), pk_values=pk, fk_ratios=ratios * pk)


def _truncation_residual(p: TraParams, eps: float, n: int) -> float:
    """Last-row residual of (T - eps) applied to the forward-recursion vector."""
    f = hbar_eval(p, eps, n - 1).fk_ratios
    k = n - 1
    s = (p.mu + p.nu + 1.0) / 2.0
    diag_k = -((k + s) ** 2 + p.u0 * _coeff_c(k, p.mu, p.nu))
    return float((diag_k - eps) * f[k] + p.u0 * _coeff_d(k - 1, p.mu, p.nu) * f[k - 1])


def refine_eigenvalue(p: TraParams, eps: float, n: int, max_steps: int = 60) -> float:
    """Polish eps toward the nearest size-n matrix eigenvalue.

    Secant iteration on the truncation residual of the coefficient
    recursion.  Used before synthesizing wavefunctions so the truncated
    expansion is a clean eigenvector of the size-n problem rather than
    one polluted by the eigenvalue's own rounding.
    """
    if n < 2:
        return float(eps)
    scale = max(abs(eps), 1.0)
    e0, e1 = float(eps), float(eps) + 1e-11 * scale
    r0, r1 = _truncation_residual(p, e0, n), _truncation_residual(p, e1, n)
    best, rbest = (e0, abs(r0)) if abs(r0) <= abs(r1) else (e1, abs(r1))
    for _ in range(max_steps):
        if r1 == r0:
            break
        e2 = e1 - r1 * (e1 - e0) / (r1 - r0)
        if not np.isfinite(e2) or abs(e2 - eps) > 0.1 * scale:
            break
        e0, r0, e1 = e1, r1, e2
        r1 = _truncation_residual(p, e1, n)
        if abs(r1) < rbest:
            best, rbest = e1, abs(r1)
        if e1 == e0:
            break
    return best
