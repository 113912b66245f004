"""Jacobi polynomials on [1, oo) with finitely many orthogonal members.

The weight (y-1)^mu (y+1)^nu on [1, oo) has finite moments only up to a
degree set by mu + nu, so the polynomial family P_k^(mu,nu) is orthogonal
only for k <= N with mu + nu < -2N - 1.  This module evaluates the raw
polynomials, their three-term recursion coefficients, the stable
normalization ratios, the attached square-integrable basis functions, and
Gauss quadrature rules built from the recursion (Golub-Welsch).

Only *ratios* of normalization constants are ever computed: the absolute
constant contains sine factors of delicate sign at negative non-integer
arguments, and every downstream quantity needs ratios only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigen import TridiagonalSymmetric, eig_tridiagonal

__all__ = [
    "BasisSpec",
    "QuadratureRule",
    "jacobi_eval",
    "recursion_coeffs",
    "norm_ratio",
    "basis_eval",
    "gauss_rule",
    "orthonormal_table",
]


@dataclass(frozen=True)
class BasisSpec:
    """Jacobi basis parameters (mu, nu) and the number of retained functions.

    Invariants:
      * mu > -1,
      * mu + nu < -2*(size_n - 1) - 1  (finite orthogonality for all
        retained degrees k = 0 .. size_n - 1),
      * mu + nu must not zero a recursion denominator.  Under the cap
        above the only reachable zero is in C_{size_n-1}, hit exactly
        when mu + nu = -2*size_n; that degenerate value is rejected, not
        perturbed.  (Physical parameter maps give irrational mu + nu;
        integer values elsewhere stay clear of every denominator used.)
    """

    mu: float
    nu: float
    size_n: int

    def __post_init__(self):
        if self.size_n < 1:
            raise ValueError("size_n must be a positive integer")
        if not self.mu > -1.0:
            raise ValueError(f"mu must exceed -1, got {self.mu}")
        cap = -2.0 * (self.size_n - 1) - 1.0
        if not self.mu + self.nu < cap:
            raise ValueError(
                f"finite-orthogonality condition violated: mu + nu = "
                f"{self.mu + self.nu} must be < {cap} for size_n = {self.size_n}"
            )
        if self.mu + self.nu == -2.0 * self.size_n:
            raise ValueError(
                "mu + nu = -2*size_n zeroes the top recursion denominator; "
                "choose a different size or parameters"
            )

    @property
    def alpha(self) -> float:
        """Exponent of (y-1) in the basis functions."""
        return (2.0 * self.mu + 1.0) / 4.0

    @property
    def beta(self) -> float:
        """Exponent of (y+1) in the basis functions."""
        return (2.0 * self.nu + 1.0) / 4.0


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for the weight (y-1)^mu (y+1)^nu, total mass scaled to 1."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def __post_init__(self):
        x = np.asarray(self.nodes, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if x.size != self.order or w.size != self.order:
            raise ValueError("node/weight count must equal order")
        if not np.all(np.diff(x) > 0) or not np.all(x > 1.0):
            raise ValueError("nodes must be strictly increasing and > 1")
        if not np.all(w > 0):
            raise ValueError("weights must be strictly positive")
        object.__setattr__(self, "nodes", x)
        object.__setattr__(self, "weights", w)


def _coeff_c(k, mu: float, nu: float):
    """C_k of the three-term recursion; vectorized over k."""
    k = np.asarray(k, dtype=float)
    den = (2 * k + mu + nu) * (2 * k + mu + nu + 2)
    if np.any(den == 0.0):
        raise ValueError("zero denominator in C_k: mu + nu hit an even integer")
    return (mu * mu - nu * nu) / den


def _coeff_d(k, mu: float, nu: float):
    """D_k of the three-term recursion; vectorized over k."""
    k = np.asarray(k, dtype=float)
    den = (2 * k + mu + nu + 1) * (2 * k + mu + nu + 3)
    if np.any(den == 0.0):
        raise ValueError("zero denominator in D_k: mu + nu hit an odd integer")
    rad = (k + 1) * (k + mu + 1) * (k + nu + 1) * (k + mu + nu + 1) / den
    if np.any(rad < 0):
        raise ValueError("basis parameters outside finite-orthogonality regime")
    return 2.0 / (2 * k + mu + nu + 2) * np.sqrt(rad)


def recursion_coeffs(spec: BasisSpec, k: int) -> tuple[float, float]:
    """(C_k, D_k) such that y-multiplication is tridiagonal:
    <k|y|l> = -C_k d_{kl} + D_{k-1} d_{k,l+1} + D_k d_{k,l-1}.
    """
    if not 0 <= k < spec.size_n:
        raise ValueError(f"k = {k} out of range for size_n = {spec.size_n}")
    return float(_coeff_c(k, spec.mu, spec.nu)), float(_coeff_d(k, spec.mu, spec.nu))


def jacobi_eval(spec: BasisSpec, k: int, y):
    """P_k^(mu,nu)(y) for y >= 1 by upward recurrence from P_0 = 1."""
    if not 0 <= k < spec.size_n:
        raise ValueError(f"k = {k} out of range for size_n = {spec.size_n}")
    y = np.asarray(y, dtype=float)
    if np.any(y < 1.0):
        raise ValueError("y must be >= 1")
    a, b = spec.mu, spec.nu
    p = np.ones_like(y)
    if k == 0:
        return p if p.ndim else float(p)
    q = (a + b + 2) * y / 2 + (a - b) / 2
    for n in range(2, k + 1):
        c1 = 2 * n * (n + a + b) * (2 * n + a + b - 2)
        c2 = (2 * n + a + b - 1) * ((2 * n + a + b) * (2 * n + a + b - 2) * y + a * a - b * b)
        c3 = 2 * (n + a - 1) * (n + b - 1) * (2 * n + a + b)
        q, p = (c2 * q - c3 * p) / c1, q
    return q if q.ndim else float(q)


def norm_ratio(spec: BasisSpec, k: int) -> float:
    """Squared-norm ratio of P_k to P_0 under the basis weight.

    Evaluated as the finite product
        (2k+mu+nu+1)/(mu+nu+1) * prod_{j=1..k} j (mu+nu+j) / ((nu+j)(mu+j)),
    never through Gamma at negative arguments.
    """
    if not 0 <= k < spec.size_n:
        raise ValueError(f"k = {k} out of range for size_n = {spec.size_n}")
    mu, nu = spec.mu, spec.nu
    out = (2 * k + mu + nu + 1) / (mu + nu + 1)
    for j in range(1, k + 1):
        den = (nu + j) * (mu + j)
        if den == 0.0:
            raise ValueError(f"zero denominator in norm ratio at j = {j}")
        out *= j * (mu + nu + j) / den
    return float(out)


def basis_eval(spec: BasisSpec, k: int, y):
    """Basis function (y-1)^a (y+1)^b P_k(y), up to the overall constant."""
    y = np.asarray(y, dtype=float)
    if np.any(y < 1.0):
        raise ValueError("y must be >= 1")
    pref = (y - 1.0) ** spec.alpha * (y + 1.0) ** spec.beta
    out = pref * jacobi_eval(spec, k, y)
    return out if out.ndim else float(out)


def orthonormal_table(spec: BasisSpec, k_max: int, y) -> np.ndarray:
    """Rows p_0(y) .. p_kmax(y) of the orthonormalized polynomials.

    p_k = (A_k/A_0) P_k with p_0 = 1; generated directly by the
    orthonormal recursion y p_k = D_k p_{k+1} - C_k p_k + D_{k-1} p_{k-1}.
    """
    if not 0 <= k_max < spec.size_n:
        raise ValueError(f"k_max = {k_max} out of range for size_n = {spec.size_n}")
    y = np.atleast_1d(np.asarray(y, dtype=float))
    table = np.zeros((k_max + 1, y.size))
    table[0] = 1.0
    if k_max >= 1:
        table[1] = (y + _coeff_c(0, spec.mu, spec.nu)) / _coeff_d(0, spec.mu, spec.nu)
    for k in range(1, k_max):
        ck = _coeff_c(k, spec.mu, spec.nu)
        dk = _coeff_d(k, spec.mu, spec.nu)
        dkm1 = _coeff_d(k - 1, spec.mu, spec.nu)
        table[k + 1] = ((y + ck) * table[k] - dkm1 * table[k - 1]) / dk
    return table


def gauss_rule(spec: BasisSpec, order: int) -> QuadratureRule:
    """Gauss rule of the given order for the basis weight (Golub-Welsch).

    Nodes are the eigenvalues of the order x order Jacobi matrix
    (diagonal -C_k, off-diagonal D_k); weights are squared first
    eigenvector components.  Total mass is normalized to 1, the
    convention under which the p_k of ``orthonormal_table`` satisfy
    sum_i w_i p_k(x_i) p_l(x_i) = delta_kl for k, l < order.

    Beyond order < -(mu+nu)/2 the top Jacobi entry stands for a moment
    the weight does not have, and the rule degenerates (a node escapes
    the support); such orders are rejected.
    """
    moment_cap = int(np.floor(-(spec.mu + spec.nu) / 2.0))
    if not 1 <= order <= min(spec.size_n, moment_cap):
        raise ValueError(
            f"order must be in 1..{min(spec.size_n, moment_cap)} "
            f"(basis size {spec.size_n}, finite moments up to order {moment_cap})"
        )
    k = np.arange(order)
    jm = TridiagonalSymmetric(
        diag=-_coeff_c(k, spec.mu, spec.nu),
        offdiag=_coeff_d(k[:-1], spec.mu, spec.nu) if order > 1 else np.zeros(0),
    )
    nodes, vecs = eig_tridiagonal(jm, want_vectors=True)
    return QuadratureRule(nodes=nodes, weights=vecs[0] ** 2, order=order)
