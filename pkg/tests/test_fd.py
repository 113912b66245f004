"""Tests for the finite-difference oracle."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from coshwell import (
    GridSpec,
    PotentialSpec,
    fd_spectrum,
    node_count_fd,
    solve_potential_grid,
)

SQRT2 = math.sqrt(2.0)

WELL_1D = PotentialSpec.line(v1=-100.0, v2=5.0, lam=SQRT2)
BENCH_3D_L5 = PotentialSpec.radial(v0=10.0, v1=-200.0, v2=10.0, lam=SQRT2, ell=5)


class TestTextbookSpectra:
    def test_particle_in_a_box(self):
        length = 1.0
        energies, _ = solve_potential_grid(np.zeros_like, 0.0, length, 4001, 3)
        exact = [(n + 1) ** 2 * math.pi**2 / (2 * length**2) for n in range(3)]
        assert np.abs(energies - exact).max() < 1e-8

    def test_harmonic_oscillator(self):
        energies, _ = solve_potential_grid(lambda x: x * x / 2, -12.0, 12.0, 6001, 4)
        assert np.abs(energies - (np.arange(4) + 0.5)).max() < 1e-8


class TestWellSpectra:
    def test_merged_parities_on_the_line(self):
        sp = fd_spectrum(WELL_1D, GridSpec(points=8001, x_min=-6.0, x_max=6.0), 2)
        assert abs(sp.energies[0] - (-89.8612818110)) < 1e-5
        assert abs(sp.energies[1] - (-79.7931821718)) < 1e-5

    def test_auto_domain_matches_explicit(self):
        auto = fd_spectrum(WELL_1D, GridSpec(points=4001), 4)
        explicit = fd_spectrum(WELL_1D, GridSpec(points=4001, x_min=-7.0, x_max=7.0), 4)
        assert np.abs(auto.energies - explicit.energies).max() < 1e-6

    def test_centrifugal_models_agree_loosely(self):
        # quantifies the physical error of the hyperbolic barrier model
        approx = fd_spectrum(
            BENCH_3D_L5,
            GridSpec(points=8001, x_min=0.0, x_max=6.0, centrifugal="approximated_3_2"),
            1,
        )
        exact = fd_spectrum(
            BENCH_3D_L5,
            GridSpec(points=8001, x_min=0.0, x_max=6.0, centrifugal="exact"),
            1,
        )
        assert abs(approx.energies[0] - exact.energies[0]) < 1e-2

    def test_missing_centrifugal_rejected(self):
        with pytest.raises(ValueError, match="centrifugal"):
            fd_spectrum(BENCH_3D_L5, GridSpec(points=2001, x_min=0.0, x_max=6.0), 1)


class TestConvergenceOrder:
    def test_pre_extrapolation_slope_is_two(self):
        vfun = lambda x: -100.0 / np.cosh(SQRT2 * x / 2) ** 2 + 5.0 * np.cosh(SQRT2 * x)
        best, _ = solve_potential_grid(vfun, -6.0, 6.0, 16001, 1)
        hs, errs = [], []
        for points in (501, 1001, 2001):
            raw, _ = solve_potential_grid(vfun, -6.0, 6.0, points, 1, richardson=False)
            hs.append(12.0 / (points - 1))
            errs.append(abs(raw[0] - best[0]))
        slope = np.polyfit(np.log(hs), np.log(errs), 1)[0]
        assert abs(slope - 2.0) < 0.1


class TestDomainValidation:
    def test_small_domain_detected(self):
        with pytest.raises(ValueError, match="domain too small"):
            fd_spectrum(
                WELL_1D,
                GridSpec(points=2001, x_min=-1.5, x_max=1.5),
                4,
                validate_domain=True,
            )

    def test_adequate_domain_passes(self):
        sp = fd_spectrum(
            WELL_1D,
            GridSpec(points=2001, x_min=-7.0, x_max=7.0),
            4,
            validate_domain=True,
        )
        assert len(sp) == 4


class TestNodeCounts:
    def test_ground_state_has_no_nodes(self):
        _, _, _, vecs = solve_potential_grid(
            lambda x: x * x / 2, -10.0, 10.0, 2001, 4, want_vectors=True
        )
        assert node_count_fd(vecs[:, 0]) == 0

    def test_sturm_sequence_on_the_well(self):
        sp, grid, vecs = fd_spectrum(
            WELL_1D, GridSpec(points=4001, x_min=-6.0, x_max=6.0), 4, want_vectors=True
        )
        for n in range(4):
            assert node_count_fd(vecs[:, n]) == n

    def test_constant_sign_vector(self):
        assert node_count_fd(np.ones(40)) == 0

    def test_noise_floor_ignored(self):
        v = np.ones(50)
        v[25] = -1e-12  # below 1e-10 * max, must not count
        assert node_count_fd(v) == 0
