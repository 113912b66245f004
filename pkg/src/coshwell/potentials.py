"""Hyperbolic confining potentials and their map to Jacobi-basis parameters.

Two geometries are supported (hbar = m = 1 throughout):

  radial3d:  V(r) = v0/sinh^2(lam r/2) + v1/cosh^2(lam r/2) + v2 cosh(lam r)
             on r > 0, optionally plus the centrifugal barrier
             ell(ell+1)/(2 r^2) or its hyperbolic approximation;
  line1d:    V(x) = v1/cosh^2(lam x/2) + v2 cosh(lam x) on the whole line,
             with even/odd parity sectors.

With y = cosh(lam r) the wave operator becomes tridiagonal in the Jacobi
basis of ``jacobi_basis`` once (mu, nu, u0) are chosen from the strengths:
v0 = lam^2 (mu^2 - 1/4)/8, v1 = -lam^2 (nu^2 - 1/4)/8, v2 = lam^2 u0 / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CENTRIFUGAL_COEFFS",
    "PotentialSpec",
    "EffectiveParams",
    "TraParams",
    "potential_value",
    "centrifugal_approx",
    "centrifugal_error",
    "effective_params",
    "map_to_basis",
    "nmax_bound",
    "t_matrix_size_cap",
]

# Coefficients of the hyperbolic centrifugal approximation
#   1/r^2 ~ (lam^2/4) [1/sinh^2(lam r/2) + A/cosh^2(lam r/2)
#                      + B cosh(lam r) + C],
# fixed uniquely by cancelling the r^0, r^2, r^4 terms of the Taylor
# expansion (residual is O(r^6)).
CENTRIFUGAL_COEFFS = (31.0 / 945.0, -16.0 / 945.0, 20.0 / 63.0)

_GEOMETRIES = ("radial3d", "line1d")
_PARITIES = ("even", "odd")


@dataclass(frozen=True)
class PotentialSpec:
    """Physical problem definition.

    ``v0`` and ``ell`` apply to radial3d only; ``parity`` to line1d only.
    """

    geometry: str
    v1: float
    v2: float
    lam: float
    v0: float = 0.0
    ell: int = 0
    parity: str | None = None

    def __post_init__(self):
        if self.geometry not in _GEOMETRIES:
            raise ValueError(f"geometry must be one of {_GEOMETRIES}")
        if not self.lam > 0:
            raise ValueError("lam must be positive")
        if self.geometry == "radial3d":
            if self.v0 < 0:
                raise ValueError("v0 must be >= 0 for radial3d")
            if self.ell < 0:
                raise ValueError("ell must be a non-negative integer")
            if self.parity is not None:
                raise ValueError("parity applies to line1d only")
        else:
            if self.v0 != 0.0:
                raise ValueError("v0 applies to radial3d only")
            if self.ell != 0:
                raise ValueError("ell applies to radial3d only")
            if self.parity is not None and self.parity not in _PARITIES:
                raise ValueError(f"parity must be one of {_PARITIES}")
        if self.v1 > self.lam**2 / 32.0:
            raise ValueError(
                "v1 exceeds lam^2/32: nu branch turns complex (no real basis)"
            )

    @classmethod
    def radial(cls, v0: float, v1: float, v2: float, lam: float, ell: int = 0):
        return cls(geometry="radial3d", v0=v0, v1=v1, v2=v2, lam=lam, ell=ell)

    @classmethod
    def line(cls, v1: float, v2: float, lam: float, parity: str | None = None):
        return cls(geometry="line1d", v1=v1, v2=v2, lam=lam, parity=parity)


@dataclass(frozen=True)
class EffectiveParams:
    """Strengths after absorbing the approximated centrifugal barrier.

    Physical energies are recovered from the shifted problem by
    E = E_shifted + e_shift.  For ell = 0 (and for line1d) the effective
    values equal the bare ones and e_shift = 0.
    """

    v0_eff: float
    v1_eff: float
    v2_eff: float
    e_shift: float


@dataclass(frozen=True)
class TraParams:
    """Dimensionless basis/recursion parameters (mu, nu, u0)."""

    mu: float
    nu: float
    u0: float


def potential_value(spec: PotentialSpec, coordinate, centrifugal: str = "none"):
    """V at the given coordinate(s), in energy units.

    ``centrifugal`` selects how the ell(ell+1) barrier is included for
    radial3d: "none", "exact" (1/r^2) or "approximated_3_2" (hyperbolic
    approximation).  line1d accepts "none" only.
    """
    x = np.asarray(coordinate, dtype=float)
    lam = spec.lam
    if spec.geometry == "line1d":
        if centrifugal != "none":
            raise ValueError("centrifugal term applies to radial3d only")
        v = spec.v1 / np.cosh(lam * x / 2) ** 2 + spec.v2 * np.cosh(lam * x)
        return v if v.ndim else float(v)

    singular = spec.v0 > 0 or (spec.ell > 0 and centrifugal != "none")
    if np.any(x < 0) or (singular and np.any(x == 0)):
        raise ValueError("radial coordinate must be positive")
    v = spec.v1 / np.cosh(lam * x / 2) ** 2 + spec.v2 * np.cosh(lam * x)
    if spec.v0 != 0.0:
        v = v + spec.v0 / np.sinh(lam * x / 2) ** 2
    if spec.ell > 0 and centrifugal != "none":
        if centrifugal == "exact":
            v = v + spec.ell * (spec.ell + 1) / (2 * x**2)
        elif centrifugal == "approximated_3_2":
            v = v + spec.ell * (spec.ell + 1) / 2 * centrifugal_approx(lam, x)
        else:
            raise ValueError(f"unknown centrifugal mode {centrifugal!r}")
    return v if v.ndim else float(v)


def centrifugal_approx(lam: float, r):
    """Hyperbolic approximation of 1/r^2 (inverse length squared)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    a, b, c = CENTRIFUGAL_COEFFS
    z = lam * r / 2
    out = lam**2 / 4 * (1 / np.sinh(z) ** 2 + a / np.cosh(z) ** 2 + b * np.cosh(2 * z) + c)
    return out if out.ndim else float(out)


def _sinh_minus_z(z: np.ndarray) -> np.ndarray:
    """sinh(z) - z to full relative precision, series-summed for small z."""
    direct = np.sinh(z) - z
    small = np.abs(z) < 0.25
    if np.any(small):
        zs = np.where(small, z, 0.0)
        z2 = zs * zs
        # z^3/6 (1 + z^2/20 (1 + z^2/42 (1 + z^2/72 (1 + z^2/110))))
        series = zs**3 / 6 * (1 + z2 / 20 * (1 + z2 / 42 * (1 + z2 / 72 * (1 + z2 / 110))))
        direct = np.where(small, series, direct)
    return direct


def centrifugal_error(lam: float, r):
    """centrifugal_approx(lam, r) - 1/r^2, evaluated cancellation-free.

    The difference is O(r^6) and ~13 orders below 1/r^2 at lam*r = 0.02,
    so the naive subtraction drowns in rounding there.  Rewriting
    1/sinh^2 z - 1/z^2 = -(sinh z - z)(sinh z + z)/(z^2 sinh^2 z), with
    the sinh z - z factor series-summed, keeps the small-r signal.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    a, b, c = CENTRIFUGAL_COEFFS
    z = lam * r / 2
    sh = np.sinh(z)
    sinh_sq_defect = -_sinh_minus_z(z) * (sh + z) / (z * sh) ** 2
    out = lam**2 / 4 * (sinh_sq_defect + a / np.cosh(z) ** 2 + b * np.cosh(2 * z) + c)
    return out if out.ndim else float(out)


def effective_params(spec: PotentialSpec) -> EffectiveParams:
    """Absorb the approximated centrifugal barrier into the strengths."""
    if spec.geometry == "line1d" or spec.ell == 0:
        return EffectiveParams(spec.v0, spec.v1, spec.v2, 0.0)
    a, b, c = CENTRIFUGAL_COEFFS
    shift = spec.lam**2 * spec.ell * (spec.ell + 1) / 8.0
    return EffectiveParams(
        v0_eff=spec.v0 + shift,
        v1_eff=spec.v1 + a * shift,
        v2_eff=spec.v2 + b * shift,
        e_shift=c * shift,
    )


def map_to_basis(spec: PotentialSpec) -> TraParams:
    """(mu, nu, u0) for the Jacobi basis that tridiagonalizes the problem.

    radial3d takes the positive mu root and the negative nu root (the only
    normalizable choice); line1d fixes mu = -1/2 (even) or +1/2 (odd).
    For ell > 0 the effective (centrifugal-absorbed) strengths are used.
    """
    if spec.v2 < 0:
        raise ValueError("v2 < 0 is outside the bound-state formalism (plotting only)")
    eff = effective_params(spec)
    if eff.v2_eff < 0:
        raise ValueError(
            "effective v2 turns negative under the centrifugal absorption; "
            "outside the bound-state formalism"
        )
    lam2 = spec.lam**2
    if spec.geometry == "radial3d":
        mu = math.sqrt(0.25 + 8.0 * eff.v0_eff / lam2)
    else:
        if spec.parity is None:
            raise ValueError("line1d solvers need parity ('even' or 'odd')")
        mu = -0.5 if spec.parity == "even" else +0.5
    nu_sq = 0.25 - 8.0 * eff.v1_eff / lam2
    if nu_sq < 0:
        raise ValueError("complex nu branch: v1_eff exceeds lam^2/32")
    nu = -math.sqrt(nu_sq)
    if nu >= -0.5:
        raise ValueError(
            "no normalizable basis: potential too shallow for this formalism "
            f"(nu = {nu:.6g} >= -1/2)"
        )
    return TraParams(mu=mu, nu=nu, u0=2.0 * eff.v2_eff / lam2)


def nmax_bound(spec: PotentialSpec) -> int:
    """Largest basis index N with N < -(mu + nu + 1)/2.

    Caps the number of orthogonal basis functions (indices 0..N) and the
    quadrature order for the physically mapped basis.
    """
    p = map_to_basis(spec)
    bound = -(p.mu + p.nu + 1.0) / 2.0
    n = math.floor(bound)
    if n == bound:
        n -= 1
    if n < 0:
        raise ValueError("no valid basis functions for these parameters")
    return n


def t_matrix_size_cap(p: TraParams) -> int:
    """Largest wave-operator matrix size n with every element finite.

    The n x n matrix needs the moment <n-1|y|n-1>, which converges only
    for n < -(mu + nu)/2.  This is one stricter than nmax_bound + 1
    whenever frac(-(mu+nu)/2) < 1/2; beyond it the recursion formula
    still returns numbers, but they represent divergent integrals and
    inject a spurious low eigenvalue.
    """
    bound = -(p.mu + p.nu) / 2.0
    n = math.floor(bound)
    if n == bound:
        n -= 1
    if n < 1:
        raise ValueError("no valid basis functions for these parameters")
    return n
