"""Independent finite-difference cross-check for every spectral result.

Second-order three-point discretization of the Schrodinger operator on a
truncated domain with Dirichlet boundaries, Richardson-extrapolated
across step h and h/2.  Deliberately shares no code with the Jacobi
machinery: the potential is sampled pointwise and the matrix handed to a
generic tridiagonal eigensolver, so the two routes can only agree if
both are right.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal, eigvalsh_tridiagonal

from .potentials import PotentialSpec, effective_params, potential_value
from .spectrum import Spectrum

__all__ = ["GridSpec", "fd_spectrum", "solve_potential_grid", "node_count_fd"]

# The oracle targets ~1e-6 absolute accuracy after extrapolation; levels
# whose Richardson estimate beats this are flagged converged.
_FD_TOL = 1e-6


@dataclass(frozen=True)
class GridSpec:
    """Domain and resolution for the finite-difference solve.

    ``x_min``/``x_max`` left as None are chosen automatically so the
    potential exceeds the tracked energies by a wide margin at the
    boundary.  ``centrifugal`` picks the barrier model for radial3d.
    """

    points: int = 4001
    x_min: float | None = None
    x_max: float | None = None
    centrifugal: str = "none"

    def __post_init__(self):
        if self.points < 3:
            raise ValueError("points must be >= 3")
        if self.x_min is not None and self.x_max is not None and not self.x_min < self.x_max:
            raise ValueError("x_min must be < x_max")
        if self.centrifugal not in ("none", "exact", "approximated_3_2"):
            raise ValueError("unknown centrifugal mode")


def _dirichlet_levels(vfun, x_min, x_max, points, levels, want_vectors=False):
    x, h = np.linspace(x_min, x_max, points, retstep=True)
    xi = x[1:-1]
    diag = 1.0 / h**2 + vfun(xi)
    if not np.all(np.isfinite(diag)):
        raise ValueError("potential is not finite on the interior grid")
    off = np.full(xi.size - 1, -0.5 / h**2)
    if want_vectors:
        vals, vecs = eigh_tridiagonal(
            diag, off, select="i", select_range=(0, levels - 1), lapack_driver="stemr"
        )
        return xi, vals, vecs
    vals = eigvalsh_tridiagonal(
        diag, off, select="i", select_range=(0, levels - 1), lapack_driver="stebz"
    )
    return xi, vals, None


def solve_potential_grid(
    vfun: Callable[[np.ndarray], np.ndarray],
    x_min: float,
    x_max: float,
    points: int,
    levels: int,
    want_vectors: bool = False,
    richardson: bool = True,
):
    """Lowest ``levels`` Dirichlet eigenvalues of -1/2 d^2/dx^2 + vfun.

    Returns (energies, err_est) or (energies, err_est, grid, vectors).
    With ``richardson`` the solve runs at steps h and h/2 and each level
    is extrapolated with the c*h^2 error model; err_est compares against
    the same extrapolation one resolution lower, which sits at the
    genuine O(h^4) residue scale.  Vectors come from the fine grid,
    normalized to unit discrete norm.
    """
    if levels < 1:
        raise ValueError("levels must be positive")
    if levels > points // 10:
        raise ValueError("levels must be far below the number of grid points")
    if not richardson:
        grid, vals, vecs = _dirichlet_levels(vfun, x_min, x_max, points, levels, want_vectors)
        err = np.full(levels, np.nan)
        return (vals, err, grid, vecs) if want_vectors else (vals, err)

    def extrapolate(e_a, h_a, e_b, h_b):
        return (h_a**2 * e_b - h_b**2 * e_a) / (h_a**2 - h_b**2)

    span = x_max - x_min
    half_points = points // 2 + 1
    _, half, _ = _dirichlet_levels(vfun, x_min, x_max, half_points, levels)
    _, mid, _ = _dirichlet_levels(vfun, x_min, x_max, points, levels)
    grid, fine, vecs = _dirichlet_levels(vfun, x_min, x_max, 2 * points - 1, levels, want_vectors)
    extrap = extrapolate(mid, span / (points - 1), fine, span / (2 * points - 2))
    # the same model fitted one resolution lower bounds the O(h^4) residue
    check = extrapolate(half, span / (half_points - 1), mid, span / (points - 1))
    err = np.abs(extrap - check)
    return (extrap, err, grid, vecs) if want_vectors else (extrap, err)


def _potential_callable(spec: PotentialSpec, centrifugal: str):
    def vfun(x):
        return potential_value(spec, x, centrifugal=centrifugal)

    return vfun


def _auto_bounds(spec: PotentialSpec, centrifugal: str, levels: int) -> tuple[float, float]:
    """Expand the domain until V at the boundary dwarfs the top energy.

    A coarse pre-pass estimates the highest tracked level; the boundary
    is pushed out until V - E_est exceeds 50 times the relevant energy
    scale.  That scale is the binding depth E_est - min V, not |E_est|:
    near-threshold levels (E_est ~ 0) otherwise get a wall their tails
    can still feel.  The confining cosh term guarantees termination for
    v2 > 0.
    """
    if spec.v2 <= 0:
        raise ValueError("automatic domain selection needs v2 > 0")
    vfun = _potential_callable(spec, centrifugal)
    radial = spec.geometry == "radial3d"
    half_width = 2.0 / spec.lam
    for _ in range(80):
        lo, hi = (0.0, half_width) if radial else (-half_width, half_width)
        est, _ = solve_potential_grid(vfun, lo, hi, 801, levels, richardson=False)
        e_top = est[-1]
        v_min = vfun(np.linspace(lo, hi, 801)[1:-1]).min()
        edge = vfun(np.asarray([hi]))[0]
        scale = max(abs(e_top), e_top - v_min, 1.0)
        if edge - e_top > 50.0 * scale:
            return lo, hi
        half_width *= 1.25
    raise ValueError("failed to find a confining domain (is v2 > 0?)")


def fd_spectrum(
    spec: PotentialSpec,
    grid: GridSpec,
    levels: int,
    want_vectors: bool = False,
    validate_domain: bool = False,
):
    """Richardson-extrapolated finite-difference spectrum (physical E).

    For radial3d the wavefunction is pinned to zero at the origin and at
    x_max; line1d solves the full line, so both parity sectors appear
    interleaved.  With ``want_vectors`` returns (Spectrum, grid, vectors).
    """
    centrifugal = grid.centrifugal
    if spec.geometry == "radial3d" and spec.ell > 0 and centrifugal == "none":
        raise ValueError("ell > 0 needs centrifugal 'exact' or 'approximated_3_2'")
    vfun = _potential_callable(spec, centrifugal)
    if grid.x_min is None or grid.x_max is None:
        lo, hi = _auto_bounds(spec, centrifugal, levels)
        lo = grid.x_min if grid.x_min is not None else lo
        hi = grid.x_max if grid.x_max is not None else hi
    else:
        lo, hi = grid.x_min, grid.x_max
    if spec.geometry == "radial3d" and lo < 0:
        raise ValueError("x_min must be >= 0 for radial3d")

    if validate_domain:
        # widen by 20% at fixed step h so only the boundary effect shows
        coarse = 1601
        h = (hi - lo) / (coarse - 1)
        base, _ = solve_potential_grid(vfun, lo, hi, coarse, levels, richardson=False)
        lo_w = lo if spec.geometry == "radial3d" else 1.2 * lo
        hi_w = 1.2 * hi
        wide_points = round((hi_w - lo_w) / h) + 1
        wide, _ = solve_potential_grid(vfun, lo_w, lo_w + (wide_points - 1) * h,
                                       wide_points, levels, richardson=False)
        drift = np.abs(base - wide).max()
        if drift > 1e-8 * max(np.abs(base).max(), 1.0):
            raise ValueError(
                f"domain too small: widening x_max by 20% moves levels by {drift:.3e}"
            )

    out = solve_potential_grid(vfun, lo, hi, grid.points, levels, want_vectors=want_vectors)
    energies, err = out[0], out[1]
    e_shift = (
        effective_params(spec).e_shift if centrifugal == "approximated_3_2" else 0.0
    )
    spectrum = Spectrum(
        eps=2.0 * (energies - e_shift) / spec.lam**2,
        energies=energies,
        method="fd_oracle",
        basis_size=grid.points,
        err_est=err,
        converged=err < _FD_TOL,
    )
    if want_vectors:
        return spectrum, out[2], out[3]
    return spectrum


def node_count_fd(eigenvector: np.ndarray, threshold_ratio: float = 1e-10) -> int:
    """Strict sign changes of a sampled function, ignoring the noise floor.

    Entries below ``threshold_ratio`` of the max magnitude are dropped
    before counting.
    """
    v = np.asarray(eigenvector, dtype=float)
    if v.size == 0:
        return 0
    kept = v[np.abs(v) > threshold_ratio * np.abs(v).max()]
    if kept.size < 2:
        return 0
    return int(np.sum(kept[:-1] * kept[1:] < 0))
