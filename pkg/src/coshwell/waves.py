"""Bound-state wavefunction synthesis from the basis expansion.

psi(r) is proportional to (y-1)^a (y+1)^b sum_k (f_k/f_0) p_k(y) with
y = cosh(lam r), coefficient ratios from the three-term recursion and
p_k the orthonormalized polynomials.  The overall constant is fixed
numerically (trapezoid rule) or left raw; the sign convention is
psi > 0 at the first sample point where it is nonzero.  For the 1D well
the half-line function is extended to the full line by parity.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .eigen import eig_tridiagonal
from .fd import node_count_fd
from .jacobi_basis import BasisSpec
from .potentials import PotentialSpec, map_to_basis, nmax_bound, t_matrix_size_cap
from .tra import build_t_matrix, hbar_eval

__all__ = ["WaveSample", "eval_radial", "parity_extend"]

# The truncated expansion is a finite polynomial in y: beyond the physical
# region it carries spurious zeros at ~1e-8 of the peak.  Node counting on
# synthesized waves ignores everything below this floor; only zeros the
# expansion actually resolves are Sturm nodes.
_TRUNCATION_FLOOR = 1e-6


def _scaled_basis_table(basis: BasisSpec, k_max: int, y: np.ndarray) -> np.ndarray:
    """Rows of prefactor * p_k(y), recursion run on the scaled functions.

    Seeding the orthonormal recursion with (y-1)^a (y+1)^b instead of 1
    keeps every intermediate near the wavefunction's own magnitude: the
    raw p_k grow like y^k and overflow around degree 100 at large y,
    while the scaled rows stay bounded by y^(a+b+k) < 1.
    """
    from .jacobi_basis import _coeff_c, _coeff_d

    y = np.atleast_1d(np.asarray(y, dtype=float))
    table = np.zeros((k_max + 1, y.size))
    table[0] = (y - 1.0) ** basis.alpha * (y + 1.0) ** basis.beta
    if k_max >= 1:
        table[1] = (y + _coeff_c(0, basis.mu, basis.nu)) / _coeff_d(0, basis.mu, basis.nu) * table[0]
    for k in range(1, k_max):
        ck = _coeff_c(k, basis.mu, basis.nu)
        dk = _coeff_d(k, basis.mu, basis.nu)
        dkm1 = _coeff_d(k - 1, basis.mu, basis.nu)
        table[k + 1] = ((y + ck) * table[k] - dkm1 * table[k - 1]) / dk
    return table


@dataclass(frozen=True)
class WaveSample:
    """Sampled wavefunction with its energy and node count."""

    coordinates: np.ndarray
    values: np.ndarray
    eps: float
    normalized: bool
    node_count: int

    def __post_init__(self):
        x = np.asarray(self.coordinates, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.shape != v.shape:
            raise ValueError("coordinates and values must have equal length")
        if np.any(np.diff(x) <= 0):
            raise ValueError("coordinates must be strictly ascending")
        object.__setattr__(self, "coordinates", x)
        object.__setattr__(self, "values", v)


def eval_radial(
    spec: PotentialSpec,
    eps: float,
    n_terms: int,
    r_points,
    normalize: bool = True,
    refine: bool = True,
) -> WaveSample:
    """Synthesize the eigenstate at eps on the given half-line points.

    ``eps`` should come from one of the spectral solvers (dimensionless,
    shift-free); nothing can validate an arbitrary value here.  With
    ``refine`` (default) eps is snapped to the nearest eigenvalue of the
    truncated problem and the coefficients are read off its exact
    eigenvector; the two are the same object by the recursion identity,
    but the eigenvector route keeps coefficients below ~1e-8 of the
    leading one noise-free where forward recursion cannot.  (This caps
    the expansion at the integrable matrix size, at most one term short
    of the basis cap.)  ``normalize=False`` returns the raw expansion,
    e.g. for plotting unnormalized states.
    """
    p = map_to_basis(spec)
    cap = nmax_bound(spec) + 1
    if not 1 <= n_terms <= cap:
        raise ValueError(f"n_terms must be in 1..{cap}")
    r = np.atleast_1d(np.asarray(r_points, dtype=float))
    if np.any(r < 0):
        raise ValueError("sample points must be >= 0")
    if np.any(np.diff(r) <= 0):
        raise ValueError("sample points must be strictly ascending")
    if refine and n_terms >= 2 and p.u0 > 0:
        n_terms = min(n_terms, t_matrix_size_cap(p))
        t = build_t_matrix(p, spec.ell, n_terms)
        vals, vecs = eig_tridiagonal(t, want_vectors=True)
        nearest = int(np.argmin(np.abs(vals - eps)))
        if abs(vals[nearest] - eps) > 1e-6 * max(abs(eps), 1.0):
            warnings.warn(
                f"eps = {eps:.6g} is not close to any eigenvalue of the "
                f"{n_terms}-term problem (nearest: {vals[nearest]:.6g}); "
                "synthesizing the nearest eigenstate",
                stacklevel=2,
            )
        eps = vals[nearest]
        coeffs = vecs[:, nearest]
    else:
        coeffs = hbar_eval(p, eps, n_terms - 1).fk_ratios

    y = np.cosh(spec.lam * r)
    basis = BasisSpec(mu=p.mu, nu=p.nu, size_n=n_terms)
    psi = coeffs @ _scaled_basis_table(basis, n_terms - 1, y)

    nonzero = np.nonzero(np.abs(psi) > 0)[0]
    if nonzero.size and psi[nonzero[0]] < 0:
        psi = -psi
    if normalize:
        norm = np.sqrt(np.trapezoid(psi**2, r))
        if norm == 0.0:
            raise ValueError("cannot normalize an identically zero sample")
        psi = psi / norm
    return WaveSample(
        coordinates=r,
        values=psi,
        eps=float(eps),
        normalized=normalize,
        node_count=node_count_fd(psi, threshold_ratio=_TRUNCATION_FLOOR),
    )


def parity_extend(half_line: WaveSample, parity: str) -> WaveSample:
    """Extend a half-line sample to the full line by the parity rule.

    even: psi(-x) = psi(x); odd: psi(-x) = -psi(x) with psi(0) = 0.  Odd
    input whose value at x = 0 is not negligible is inconsistent and
    rejected.  Normalization is re-applied on the full line when the
    input was normalized.
    """
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    x = half_line.coordinates
    v = half_line.values.copy()
    if x[0] < 0:
        raise ValueError("half-line sample must live on x >= 0")
    has_origin = x[0] == 0.0
    if parity == "odd" and has_origin:
        if abs(v[0]) > 1e-8 * np.abs(v).max():
            raise ValueError("odd parity but the sample does not vanish at x = 0")
        v[0] = 0.0
    sign = 1.0 if parity == "even" else -1.0
    # mirror every point; drop the duplicated origin from the mirrored half
    keep = x.size - int(has_origin)
    full_x = np.concatenate([-x[::-1][:keep], x])
    full_v = np.concatenate([sign * v[::-1][:keep], v])
    if half_line.normalized:
        full_v = full_v / np.sqrt(np.trapezoid(full_v**2, full_x))
    return WaveSample(
        coordinates=full_x,
        values=full_v,
        eps=half_line.eps,
        normalized=half_line.normalized,
        node_count=node_count_fd(full_v, threshold_ratio=_TRUNCATION_FLOOR),
    )
