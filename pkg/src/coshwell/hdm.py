"""Hamiltonian diagonalization in a relaxed Jacobi basis.

The tridiagonal-representation solver is capped by the finite
orthogonality of the physically mapped basis.  Here the Hamiltonian is
assembled in a basis whose nu parameter is pushed deep enough to support
any requested matrix size; the price is a non-tridiagonal correction
proportional to (nu_b^2 - nu_p^2), whose matrix elements
<k| 1/(1+y) |l> are evaluated by Gauss quadrature for the basis weight.
Eigenvalues are converged by growing the matrix through a nested ladder
of sizes with the basis held fixed, which makes the Rayleigh-Ritz
monotonicity of each level an exact check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .eigen import SymmetricDense, TridiagonalSymmetric, eig_dense, eig_tridiagonal
from .jacobi_basis import BasisSpec, _coeff_c, _coeff_d
from .potentials import PotentialSpec, TraParams, effective_params, map_to_basis
from .spectrum import Spectrum

__all__ = ["HdmConfig", "HdmAssembly", "assemble_h", "spectrum_hdm"]

# Ladder default ends at 60: the last-step estimate for the tenth level of
# the benchmark wells then clears the 1e-9 tolerance with margin (a 50-top
# ladder leaves level 9 marginally flagged at ~1.2e-9).
_DEFAULT_SIZES = (20, 30, 40, 50, 60)


@dataclass(frozen=True)
class HdmConfig:
    """Basis and convergence-ladder choices.

    ``basis_mu`` defaults to the potential's mu (mismatches are
    rejected, see ``assemble_h``).  The basis nu is
    -(2 N + 1 + basis_mu + basis_nu_margin) for the largest ladder size
    N, unless ``basis_nu`` overrides it outright.  ``quad_order``
    defaults to the largest ladder size, the most the finite
    orthogonality permits.
    """

    basis_mu: float | None = None
    basis_nu: float | None = None
    basis_nu_margin: float = 1.0
    sizes: tuple[int, ...] = _DEFAULT_SIZES
    quad_order: int | None = None
    convergence_tol: float = 1e-9

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError("sizes must be positive integers")
        if list(sizes) != sorted(sizes) or len(set(sizes)) != len(sizes):
            raise ValueError("sizes must be strictly ascending")
        object.__setattr__(self, "sizes", sizes)
        if self.basis_nu is None and not self.basis_nu_margin > 0:
            raise ValueError("basis_nu_margin must be positive")


@dataclass(frozen=True)
class HdmAssembly:
    """Assembled dimensionless Hamiltonian and its two components."""

    h: np.ndarray
    tridiagonal: TridiagonalSymmetric
    quadrature: np.ndarray
    c_minus: float
    c_plus: float
    basis: BasisSpec
    potential_params: TraParams = field(repr=False, default=None)


def _resolve_basis(spec: PotentialSpec, cfg: HdmConfig, n: int) -> tuple[BasisSpec, TraParams, int]:
    """Fixed basis, potential parameters and quadrature order for size n."""
    p = map_to_basis(spec)
    mu_b = p.mu if cfg.basis_mu is None else cfg.basis_mu
    if mu_b != p.mu:
        raise ValueError(
            "basis mu must match the potential mu: a mismatch puts the "
            "singular 1/(1-y) term under the quadrature, which is rejected "
            "rather than approximated"
        )
    n_ref = max(max(cfg.sizes), n)
    nu_b = cfg.basis_nu if cfg.basis_nu is not None else -(2 * n_ref + 1 + mu_b + cfg.basis_nu_margin)
    order = cfg.quad_order if cfg.quad_order is not None else n_ref
    basis = BasisSpec(mu=mu_b, nu=nu_b, size_n=max(n, order))
    moment_cap = int(np.floor(-(mu_b + nu_b) / 2.0))
    if order > moment_cap:
        raise ValueError(
            f"quadrature order {order} exceeds the basis cap {moment_cap} "
            "(the weight has no higher finite moments)"
        )
    return basis, p, order


def _poly_rows_at_nodes(basis: BasisSpec, order: int, n: int):
    """(nodes, B) with B[k, i] = sqrt(w_i) p_k(x_i) for k < n.

    For k < order these are exactly the Jacobi-matrix eigenvector
    components, which keeps the high-degree rows at machine accuracy;
    rows beyond the quadrature order (possible only when order < n)
    continue by the orthonormal recursion.
    """
    kq = np.arange(order)
    jm = TridiagonalSymmetric(
        diag=-_coeff_c(kq, basis.mu, basis.nu),
        offdiag=_coeff_d(kq[:-1], basis.mu, basis.nu) if order > 1 else np.zeros(0),
    )
    nodes, vecs = eig_tridiagonal(jm, want_vectors=True)
    if n <= order:
        return nodes, vecs[:n].copy()
    b = np.zeros((n, order))
    b[:order] = vecs
    for k in range(order - 1, n - 1):
        ck = _coeff_c(k, basis.mu, basis.nu)
        dk = _coeff_d(k, basis.mu, basis.nu)
        dkm1 = _coeff_d(k - 1, basis.mu, basis.nu)
        b[k + 1] = ((nodes + ck) * b[k] - dkm1 * b[k - 1]) / dk
    return nodes, b


def assemble_h(spec: PotentialSpec, cfg: HdmConfig, n: int) -> HdmAssembly:
    """n x n dimensionless Hamiltonian whose eigenvalues are the shifted
    energies eps = 2 (E - e_shift) / lam^2.

    h = u0*Y - diag((k+s_b)^2) + c_plus * G+, where Y is the tridiagonal
    y-multiplication of the *basis* parameters, s_b = (mu_b+nu_b+1)/2,
    c_plus = (nu_b^2 - nu_p^2)/2 and G+_{kl} = <k| 1/(1+y) |l> by Gauss
    quadrature.  When the basis equals the potential parameters the
    correction vanishes identically and h is the plain tridiagonal
    wave-operator matrix.
    """
    basis, p, order = _resolve_basis(spec, cfg, n)
    k = np.arange(n)
    s_b = (basis.mu + basis.nu + 1.0) / 2.0
    tridiag = TridiagonalSymmetric(
        diag=-((k + s_b) ** 2 + p.u0 * _coeff_c(k, basis.mu, basis.nu)),
        offdiag=p.u0 * _coeff_d(k[:-1], basis.mu, basis.nu) if n > 1 else np.zeros(0),
    )
    c_minus = (basis.mu**2 - p.mu**2) / 2.0
    c_plus = (basis.nu**2 - p.nu**2) / 2.0
    if c_plus != 0.0:
        nodes, b = _poly_rows_at_nodes(basis, order, n)
        gplus = (b * (1.0 / (1.0 + nodes))) @ b.T
        quad = c_plus * gplus
        quad = 0.5 * (quad + quad.T)
    else:
        quad = np.zeros((n, n))
    h = tridiag.to_dense() + quad
    return HdmAssembly(
        h=h,
        tridiagonal=tridiag,
        quadrature=quad,
        c_minus=c_minus,
        c_plus=c_plus,
        basis=basis,
        potential_params=p,
    )


def spectrum_hdm(spec: PotentialSpec, cfg: HdmConfig, levels: int) -> Spectrum:
    """Lowest ``levels`` energies, converged along the nested size ladder.

    The basis is fixed by the largest ladder size, so every smaller
    matrix is a leading principal submatrix of the largest one; each
    level decreases monotonically along the ladder (Rayleigh-Ritz) and
    the per-level error estimate is the last step's change.  Levels that
    fail the tolerance are returned flagged, not raised.
    """
    sizes = cfg.sizes
    if levels < 1:
        raise ValueError("levels must be positive")
    if levels > sizes[0] // 2:
        raise ValueError(
            f"levels = {levels} exceeds half the smallest ladder size "
            f"({sizes[0]}); only the lower half of the spectrum is trusted"
        )
    full = assemble_h(spec, cfg, sizes[-1])
    ladder = []
    for n in sizes:
        vals = eig_dense(SymmetricDense(full.h[:n, :n]))
        ladder.append(vals[:levels])
    eps = ladder[-1]
    if len(sizes) > 1:
        err = np.abs(spec.lam**2 * (ladder[-1] - ladder[-2]) / 2.0)
        conv = err < cfg.convergence_tol
    else:
        err = np.full(levels, np.nan)
        conv = np.zeros(levels, dtype=bool)
    e_shift = effective_params(spec).e_shift
    return Spectrum(
        eps=eps,
        energies=spec.lam**2 * eps / 2.0 + e_shift,
        method="hdm",
        basis_size=sizes[-1],
        err_est=err,
        converged=conv,
    )
