"""Projection estimators: identities, unbiasedness, and the closed-form bounds."""

import math

import numpy as np
import pytest

from riesz_mmd import (
    DimensionMismatchError,
    KernelSpec,
    RngStream,
    UnsupportedKernelError,
    concentration_bound,
    mean_error_bound,
    mmd_1d_sq,
    naive_grad,
    naive_mmd_sq,
    riesz_constant,
    sample_directions,
    sliced_grad,
    sliced_mmd_sq,
)


def ulp_close(a, b, ulps=2):
    return np.all(np.abs(a - b) <= ulps * np.spacing(np.maximum(np.abs(a), np.abs(b))))


class TestSampleDirections:
    def test_one_dimension_is_signs(self):
        dirs = sample_directions(1, 64, RngStream(5))
        assert set(np.unique(dirs)) <= {-1.0, 1.0}

    def test_unit_norms(self):
        for d in (2, 3, 17):
            dirs = sample_directions(d, 200, RngStream(d))
            np.testing.assert_allclose(np.linalg.norm(dirs, axis=1), 1.0, rtol=0, atol=1e-12)

    def test_empirical_mean_near_zero(self):
        dirs = sample_directions(3, 100_000, RngStream(11))
        assert np.all(np.abs(dirs.mean(axis=0)) < 0.02)

    def test_deterministic(self):
        a = sample_directions(4, 32, RngStream(3, 9))
        b = sample_directions(4, 32, RngStream(3, 9))
        np.testing.assert_array_equal(a, b)

    def test_validation(self):
        with pytest.raises(ValueError):
            sample_directions(0, 1, RngStream(0))
        with pytest.raises(ValueError):
            sample_directions(2, 0, RngStream(0))


class TestSlicedGrad:
    def test_one_dimension_reduces_to_exact_gradient(self):
        """In d=1 every projection is a sign flip, so the estimate is exact.

        Bitwise equality for power-of-two projection counts; otherwise the
        final averaging may round the last ulp.
        """
        rng = np.random.default_rng(0)
        for trial in range(10):
            n, m = int(rng.integers(1, 200)), int(rng.integers(1, 200))
            x, y = rng.standard_normal(n), rng.standard_normal(m)
            exact = naive_grad(x, y)
            for p in (1, 2, 4, 64):
                est = sliced_grad(x, y, p, RngStream(trial, p))
                np.testing.assert_array_equal(est.grads, exact)
            for p in (3, 7, 100):
                est = sliced_grad(x, y, p, RngStream(trial, p))
                assert ulp_close(est.grads, exact)

    def test_unbiased_against_exact_gradient(self):
        """Componentwise sample mean over many streams stays within CLT range."""
        rng = np.random.default_rng(101)
        n, m, d, p, reps = 50, 50, 10, 8, 500
        x = rng.standard_normal((n, d))
        y = rng.standard_normal((m, d))
        exact = naive_grad(x, y)
        root = RngStream(2024)
        draws = np.stack([sliced_grad(x, y, p, root.split(k)).grads for k in range(reps)])
        mean = draws.mean(axis=0)
        se = draws.std(axis=0, ddof=1) / math.sqrt(reps)
        within = np.abs(mean - exact) <= 4.0 * se
        assert within.mean() >= 0.99

    def test_expectation_zero_when_sets_coincide(self):
        rng = np.random.default_rng(7)
        x = rng.standard_normal((20, 3))
        root = RngStream(55)
        draws = np.stack([sliced_grad(x, x, 4, root.split(k)).grads for k in range(400)])
        mean = draws.mean(axis=0)
        se = draws.std(axis=0, ddof=1) / math.sqrt(400) + 1e-15
        assert np.all(np.abs(mean) <= 5.0 * se)

    def test_per_particle_norm_bound(self):
        rng = np.random.default_rng(31)
        for d in (1, 2, 8):
            x = rng.standard_normal((40, d))
            y = rng.standard_normal((60, d))
            est = sliced_grad(x, y, 16, RngStream(d))
            c_d = riesz_constant(d, 1.0)
            norms = np.linalg.norm(est.grads, axis=1)
            assert np.all(norms <= 2.0 * c_d / 40 + 2.0 / 40)
            assert est.p_used == 16
            assert est.c_d == pytest.approx(c_d)

    def test_deterministic(self):
        rng = np.random.default_rng(13)
        x, y = rng.standard_normal((12, 5)), rng.standard_normal((9, 5))
        a = sliced_grad(x, y, 33, RngStream(4, 2)).grads
        b = sliced_grad(x, y, 33, RngStream(4, 2)).grads
        np.testing.assert_array_equal(a, b)

    def test_rejects_other_kernels(self):
        x = np.zeros((2, 2))
        with pytest.raises(UnsupportedKernelError):
            sliced_grad(x, x, 4, RngStream(0), kernel=KernelSpec.riesz(1.5))
        with pytest.raises(UnsupportedKernelError):
            sliced_grad(x, x, 4, RngStream(0), kernel=KernelSpec.gaussian(1.0))
        sliced_grad(x, x, 4, RngStream(0), kernel=KernelSpec.riesz(1.0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            sliced_grad(np.zeros((3, 2)), np.zeros((3, 3)), 4, RngStream(0))

    def test_projection_count_validated(self):
        with pytest.raises(ValueError):
            sliced_grad(np.zeros((2, 2)), np.ones((2, 2)), 0, RngStream(0))


class TestSlicedMmdSq:
    def test_one_dimension_reduces_to_exact_value(self):
        rng = np.random.default_rng(17)
        for trial in range(10):
            x, y = rng.standard_normal(25), rng.standard_normal(31)
            exact = mmd_1d_sq(x, y)
            for p in (1, 2, 8):
                assert sliced_mmd_sq(x, y, p, RngStream(trial, p)) == exact
            for p in (3, 5, 100):
                got = sliced_mmd_sq(x, y, p, RngStream(trial, p))
                assert ulp_close(got, exact)

    def test_identical_sets_give_exact_zero(self):
        rng = np.random.default_rng(19)
        x = rng.standard_normal((30, 4))
        for k in range(10):
            assert sliced_mmd_sq(x, x, 8, RngStream(k)) == 0.0

    def test_two_diracs_at_unit_distance(self):
        x = np.zeros((1, 3))
        y = np.array([[1.0, 0.0, 0.0]])
        got = sliced_mmd_sq(x, y, 1_000_000, RngStream(99))
        assert abs(got - 1.0) < 0.01

    def test_statistically_unbiased(self):
        rng = np.random.default_rng(23)
        x = rng.standard_normal((15, 4))
        y = rng.standard_normal((20, 4)) + 0.5
        exact = naive_mmd_sq(x, y)
        root = RngStream(7)
        vals = np.array([sliced_mmd_sq(x, y, 16, root.split(k)) for k in range(300)])
        se = vals.std(ddof=1) / math.sqrt(300)
        assert abs(vals.mean() - exact) <= 4.0 * se

    def test_rejects_other_kernels(self):
        x = np.zeros((2, 2))
        with pytest.raises(UnsupportedKernelError):
            sliced_mmd_sq(x, x, 4, RngStream(0), kernel=KernelSpec.laplace(0.1))


class TestMeanErrorBound:
    def test_reference_value(self):
        want = math.exp(0.25) * math.sqrt(32.0 * math.pi) * 2.0 / 2.0
        assert mean_error_bound(1, 1) == pytest.approx(want, rel=1e-15)
        assert mean_error_bound(1, 1) == pytest.approx(12.874, abs=5e-3)

    def test_decreasing_in_projections(self):
        for d in (1, 10, 100):
            vals = [mean_error_bound(d, p) for p in (1, 2, 4, 10, 100, 10_000)]
            assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_quadrupling_projections_halves_bound(self):
        for d in (1, 7, 64):
            for p in (1, 3, 25):
                np.testing.assert_allclose(
                    mean_error_bound(d, 4 * p), 0.5 * mean_error_bound(d, p), rtol=1e-15
                )

    def test_grows_with_dimension(self):
        vals = [mean_error_bound(d, 100) for d in (1, 4, 16, 256)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_validation(self):
        with pytest.raises(ValueError):
            mean_error_bound(1, 0)


class TestConcentrationBound:
    def test_reference_value(self):
        assert concentration_bound(1, 32, 2.0) == pytest.approx(math.exp(-0.75), rel=1e-15)

    def test_small_t_limit_is_vacuous(self):
        got = concentration_bound(3, 10, 1e-12)
        assert got == pytest.approx(math.exp(0.25), rel=1e-6)
        assert got > 1.0

    def test_doubling_t_quadruples_exponent(self):
        d, p = 5, 40
        base = math.log(concentration_bound(d, p, 1.0)) - 0.25
        for t in (2.0, 4.0):
            got = math.log(concentration_bound(d, p, t)) - 0.25
            np.testing.assert_allclose(got, t * t * base, rtol=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            concentration_bound(1, 1, 0.0)
        with pytest.raises(ValueError):
            concentration_bound(1, 0, 1.0)
