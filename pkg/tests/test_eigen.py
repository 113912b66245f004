"""Tests for the symmetric eigensolver wrappers."""

import mpmath as mp
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import qr

from coshwell import SymmetricDense, TridiagonalSymmetric, eig_dense, eig_tridiagonal


def charpoly_roots_mp(diag, off, dps=50):
    """Roots of the characteristic polynomial via the three-term recursion
    p_k(x) = (x - d_k) p_{k-1}(x) - e_{k-1}^2 p_{k-2}(x), in mpmath.

    Coefficient lists are in descending powers of x.
    """
    with mp.workdps(dps):
        p_prev = [mp.mpf(1)]
        p = [mp.mpf(1), -mp.mpf(diag[0])]
        for k in range(1, len(diag)):
            xp = p + [mp.mpf(0)]
            dk = [mp.mpf(0)] + [mp.mpf(diag[k]) * c for c in p]
            e2 = [mp.mpf(0), mp.mpf(0)] + [mp.mpf(off[k - 1]) ** 2 * c for c in p_prev]
            newp = [xp[i] - dk[i] - e2[i] for i in range(len(xp))]
            p_prev, p = p, newp
        roots = mp.polyroots(p, maxsteps=200, extraprec=200)
        return sorted(float(r) for r in roots)


class TestTridiagonal:
    def test_already_diagonal(self):
        m = TridiagonalSymmetric(diag=[1.0, 2.0, 3.0], offdiag=[0.0, 0.0])
        assert_allclose(eig_tridiagonal(m), [1.0, 2.0, 3.0])

    def test_exchange_block(self):
        m = TridiagonalSymmetric(diag=[0.0, 0.0], offdiag=[1.0])
        assert_allclose(eig_tridiagonal(m), [-1.0, 1.0], atol=1e-15)

    def test_random_against_charpoly_roots(self):
        rng = np.random.default_rng(7)
        diag = rng.normal(size=6)
        off = rng.normal(size=5)
        m = TridiagonalSymmetric(diag=diag, offdiag=off)
        got = eig_tridiagonal(m)
        want = charpoly_roots_mp(diag, off)
        assert_allclose(got, want, atol=1e-10)

    def test_vectors_orthonormal(self):
        rng = np.random.default_rng(11)
        m = TridiagonalSymmetric(diag=rng.normal(size=9), offdiag=rng.normal(size=8))
        vals, vecs = eig_tridiagonal(m, want_vectors=True)
        assert np.abs(vecs.T @ vecs - np.eye(9)).max() < 1e-10
        assert np.all(np.diff(vals) >= 0)

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError, match="finite"):
            TridiagonalSymmetric(diag=[1.0, np.nan], offdiag=[0.5])

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="length"):
            TridiagonalSymmetric(diag=[1.0, 2.0], offdiag=[0.5, 0.5])


class TestDense:
    def test_identity(self):
        m = SymmetricDense(np.eye(4))
        assert_allclose(eig_dense(m), np.ones(4))

    def test_constructed_spectrum(self):
        rng = np.random.default_rng(3)
        q, _ = qr(rng.normal(size=(3, 3)))
        m = SymmetricDense(q @ np.diag([-2.0, 5.0, 7.0]) @ q.T)
        assert_allclose(eig_dense(m), [-2.0, 5.0, 7.0], rtol=1e-12, atol=1e-12)

    def test_matches_tridiagonal_route(self):
        from scipy.linalg import hessenberg

        rng = np.random.default_rng(19)
        a = rng.normal(size=(8, 8))
        a = (a + a.T) / 2
        hess = hessenberg(a)
        got = eig_dense(SymmetricDense(a))
        tri = TridiagonalSymmetric(diag=np.diag(hess), offdiag=np.diag(hess, 1))
        want = eig_tridiagonal(tri)
        assert_allclose(got, want, atol=1e-10)

    def test_asymmetric_rejected(self):
        a = np.eye(3)
        a[0, 1] = 1e-6
        with pytest.raises(ValueError, match="symmetric"):
            SymmetricDense(a)


class TestStructuralInvariants:
    def test_cauchy_interlacing(self):
        rng = np.random.default_rng(23)
        a = rng.normal(size=(7, 7))
        a = (a + a.T) / 2
        full = eig_dense(SymmetricDense(a))
        minor = eig_dense(SymmetricDense(a[:6, :6]))
        scale = np.abs(a).max()
        assert np.all(full[:-1] <= minor + 1e-10 * scale)
        assert np.all(minor <= full[1:] + 1e-10 * scale)

    def test_trace_identity(self):
        rng = np.random.default_rng(29)
        m = TridiagonalSymmetric(diag=rng.normal(size=12), offdiag=rng.normal(size=11))
        vals = eig_tridiagonal(m)
        assert_allclose(vals.sum(), m.diag.sum(), rtol=1e-12)
