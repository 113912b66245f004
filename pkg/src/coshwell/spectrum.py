"""Shared container for computed bound-state spectra."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Spectrum"]

_METHODS = ("tra", "hdm", "closed_form", "fd_oracle")


@dataclass(frozen=True)
class Spectrum:
    """Sorted bound-state levels from one solver run.

    ``eps`` holds the dimensionless eigenvalues of the (shift-free)
    problem; ``energies`` the physical E = lam^2 * eps / 2 + e_shift.
    ``err_est`` is an estimated absolute error per level and ``converged``
    the per-level flag derived from it (True when the estimate beats the
    solver's tolerance).
    """

    eps: np.ndarray
    energies: np.ndarray
    method: str
    basis_size: int
    err_est: np.ndarray = field(default=None)
    converged: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}")
        eps = np.asarray(self.eps, dtype=float)
        en = np.asarray(self.energies, dtype=float)
        if eps.shape != en.shape:
            raise ValueError("eps and energies must have equal length")
        if np.any(np.diff(eps) < 0):
            raise ValueError("eps must be ascending")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "energies", en)
        err = self.err_est
        if err is None:
            err = np.full(eps.shape, np.nan)
        object.__setattr__(self, "err_est", np.asarray(err, dtype=float))
        conv = self.converged
        if conv is None:
            conv = np.zeros(eps.shape, dtype=bool)
        object.__setattr__(self, "converged", np.asarray(conv, dtype=bool))

    def __len__(self) -> int:
        return self.eps.size

    @property
    def all_converged(self) -> bool:
        return bool(np.all(self.converged))
