"""Symmetric eigenvalue computations shared by all solvers.

Thin, validated wrappers around LAPACK (via scipy.linalg) for real
symmetric tridiagonal and dense matrices.  Eigenvalues are always
returned ascending; eigenvectors, when requested, come back as
orthonormal columns matching the eigenvalue order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh, eigh_tridiagonal, eigvalsh, eigvalsh_tridiagonal

__all__ = [
    "TridiagonalSymmetric",
    "SymmetricDense",
    "eig_tridiagonal",
    "eig_dense",
]


@dataclass(frozen=True)
class TridiagonalSymmetric:
    """Symmetric tridiagonal matrix stored as diagonal + off-diagonal arrays."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        e = np.asarray(self.offdiag, dtype=float)
        if d.ndim != 1 or e.ndim != 1 or e.size != max(d.size - 1, 0):
            raise ValueError("offdiag must have length len(diag) - 1")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("matrix entries must be finite")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def size(self) -> int:
        return self.diag.size

    def to_dense(self) -> np.ndarray:
        m = np.diag(self.diag)
        idx = np.arange(self.size - 1)
        m[idx, idx + 1] = self.offdiag
        m[idx + 1, idx] = self.offdiag
        return m


@dataclass(frozen=True)
class SymmetricDense:
    """Dense real symmetric matrix."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("entries must be a square matrix")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        scale = max(np.abs(a).max(), 1.0)
        if np.abs(a - a.T).max() > 1e-12 * scale:
            raise ValueError("matrix is not symmetric to 1e-12 relative")
        object.__setattr__(self, "entries", a)

    @property
    def size(self) -> int:
        return self.entries.shape[0]


def eig_tridiagonal(m: TridiagonalSymmetric, want_vectors: bool = False):
    """All eigenvalues (ascending) of a symmetric tridiagonal matrix.

    Returns ``values`` or ``(values, vectors)``; vectors are orthonormal
    columns.
    """
    if m.size == 1:
        vals = m.diag.copy()
        return (vals, np.ones((1, 1))) if want_vectors else vals
    if want_vectors:
        vals, vecs = eigh_tridiagonal(m.diag, m.offdiag)
        return vals, vecs
    return eigvalsh_tridiagonal(m.diag, m.offdiag)


def eig_dense(m: SymmetricDense, want_vectors: bool = False):
    """All eigenvalues (ascending) of a dense symmetric matrix."""
    if want_vectors:
        vals, vecs = eigh(m.entries)
        return vals, vecs
    return eigvalsh(m.entries)
