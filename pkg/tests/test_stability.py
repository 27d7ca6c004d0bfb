import math
import unittest

import numpy as np

from shrinkcs.certificates import (
    alpha_beta,
    certify_stability,
    noisy_alpha_beta,
    noisy_global_oracle,
    projected_error_bounds,
    stability_bound,
    stability_constants,
)
from shrinkcs.penalties import PenaltySpec, penalty_total
from shrinkcs.sensing import SensingProblem, gaussian_matrix, orthonormalize_rows
from shrinkcs.utils.checks import CertificateError, ConfigurationError


class TestNoisyBounds(unittest.TestCase):
    def test_single_row(self):
        problem = SensingProblem([[0.6, 0.8]], [1.0], epsilon=0.1)
        cert = noisy_alpha_beta(problem)
        np.testing.assert_allclose(np.sort(cert.alpha_S), [1.25, 5 / 3], rtol=1e-12)
        np.testing.assert_allclose(np.sort(cert.inverse_norms), [1.25, 5 / 3], rtol=1e-12)
        self.assertAlmostEqual(cert.eps_max, 1.0, delta=1e-12)
        self.assertAlmostEqual(cert.alpha, 1.125, delta=1e-12)
        self.assertAlmostEqual(cert.beta, 5 / 3 + 1 / 6, delta=1e-12)
        self.assertEqual(cert.alpha_S_min, np.min(cert.alpha_S))
        self.assertFalse(cert.complete)

    def test_zero_noise_matches_alpha_beta(self):
        problem = SensingProblem([[0.6, 0.8]], [1.0])
        cert = noisy_alpha_beta(problem)
        np.testing.assert_allclose([cert.alpha, cert.beta], alpha_beta(problem), rtol=1e-12)

        problem = orthonormalize_rows(SensingProblem(gaussian_matrix(2, 5, 4), [0.3, -1.1]))
        cert = noisy_alpha_beta(problem)
        np.testing.assert_allclose([cert.alpha, cert.beta], alpha_beta(problem), rtol=1e-10)

    def test_errors(self):
        with self.assertRaises(CertificateError) as ctx:
            noisy_alpha_beta(SensingProblem([[0.6, 0.8]], [1.0], epsilon=1.5))
        self.assertIn('eps_max', str(ctx.exception))
        with self.assertRaises(CertificateError):
            noisy_alpha_beta(SensingProblem(np.eye(2), [1.0, 0.0], epsilon=0.1))


class TestProjectedBounds(unittest.TestCase):
    def setUp(self):
        self.cert = noisy_alpha_beta(SensingProblem([[0.6, 0.8]], [1.0], epsilon=0.1))

    def test_examples(self):
        alpha_prime, beta_prime = projected_error_bounds(self.cert, [0.1, 1.2], [1], 0.05)
        self.assertAlmostEqual(alpha_prime, 0.925, delta=1e-12)
        self.assertAlmostEqual(beta_prime, self.cert.beta + 0.05, delta=1e-12)

        exact = noisy_alpha_beta(SensingProblem([[0.6, 0.8]], [1.0]))
        bounds = projected_error_bounds(exact, [0.0, 1.25], [1], 0.0)
        np.testing.assert_allclose(bounds, [exact.alpha, exact.beta], rtol=1e-15)

    def test_errors(self):
        # the admissible noise is min_S (alpha_S - 0.1) / (2 + ‖A_S⁻¹‖) = 1.15 / 3.25
        with self.assertRaises(CertificateError):
            projected_error_bounds(self.cert, [0.1, 1.2], [1], 0.4)
        with self.assertRaises(CertificateError):
            projected_error_bounds(self.cert, [1.3, 1.2], [1], 0.01)
        with self.assertRaises(ConfigurationError):
            projected_error_bounds(self.cert, [0.1, 1.2], [1], -0.01)


class TestStabilityBound(unittest.TestCase):
    def test_examples(self):
        spec = PenaltySpec.firm(0.5, 1.5)
        bound = stability_bound(spec, 1.0, 2.0, 20, 2, 0.01, 0.0)
        tau = 2 * 0.75 / (18 * (1 - 1 / 3))
        self.assertAlmostEqual(tau, 0.125, delta=1e-15)
        self.assertAlmostEqual(bound, 2 / (1 - tau) * 2 * math.sqrt(20) * 0.01, delta=1e-12)
        self.assertAlmostEqual(bound, 0.2045, delta=1e-4)
        self.assertEqual(stability_bound(spec, 1.0, 2.0, 20, 2, 0.0, 0.0), 0.0)

    def test_constants(self):
        tau, D, C1, C2 = stability_constants(PenaltySpec.firm(0.5, 1.5), 1.0, 2.0, 20, 2)
        self.assertAlmostEqual(tau, 0.125, delta=1e-14)
        self.assertAlmostEqual(D, math.sqrt(20), delta=1e-14)
        self.assertAlmostEqual(C1, 4 * D / (1 - tau), delta=1e-12)
        self.assertAlmostEqual(C2, 2 * (1 + tau) / (1 - tau), delta=1e-12)

    def test_monotone(self):
        spec = PenaltySpec.pshrink(0.1, -0.5)
        eps_values = [stability_bound(spec, 1.0, 2.0, 10, 1, e, 0.2) for e in np.linspace(0, 1, 11)]
        tails = [stability_bound(spec, 1.0, 2.0, 10, 1, 0.1, t) for t in np.linspace(0, 1, 11)]
        self.assertTrue(np.all(np.diff(eps_values) > 0))
        self.assertTrue(np.all(np.diff(tails) > 0))

    def test_blow_up_as_tau_approaches_one(self):
        # soft thresholding: tau = 2 * 2beta' / (18 alpha')
        betas = np.linspace(1.0, 4.4, 18)
        bounds = [stability_bound(PenaltySpec.soft(1.0), 1.0, b, 20, 2, 0.01, 0.0) for b in betas]
        self.assertTrue(np.all(np.diff(bounds) > 0))
        self.assertGreater(bounds[-1], 10 * bounds[0])

    def test_errors(self):
        with self.assertRaises(CertificateError):
            stability_bound(PenaltySpec.soft(1.0), 1.0, 2.0, 4, 1, 0.01, 0.0)
        with self.assertRaises(CertificateError):
            stability_bound(PenaltySpec.firm(0.5, 1.5), 1.0, 2.0, 4, 2, 0.01, 0.0)
        with self.assertRaises(ConfigurationError):
            stability_bound(PenaltySpec.firm(0.5, 1.5), 1.0, 2.0, 20, 2, 0.01, -1.0)


class TestNoisyOracle(unittest.TestCase):
    def test_feasible_and_sparse(self):
        rng = np.random.default_rng(8)
        A = orthonormalize_rows(SensingProblem(gaussian_matrix(2, 5, 8), np.zeros(2))).A
        problem = SensingProblem(A, A @ np.array([0, 1.5, 0, 0, 0]) + 0.01, epsilon=0.05)
        for spec in (PenaltySpec.soft(1.0), PenaltySpec.firm(0.3, 1.0)):
            w = noisy_global_oracle(spec, problem, seed=int(rng.integers(100)))
            self.assertLessEqual(np.linalg.norm(problem.residual(w)), 0.05 * (1 + 1e-9))
            self.assertLessEqual(np.count_nonzero(w), 2)

    def test_zero_is_feasible(self):
        problem = SensingProblem([[0.6, 0.8]], [0.05], epsilon=0.1)
        np.testing.assert_array_equal(noisy_global_oracle(PenaltySpec.soft(1.0), problem), [0, 0])

    def test_needs_noise(self):
        with self.assertRaises(ConfigurationError):
            noisy_global_oracle(PenaltySpec.soft(1.0), SensingProblem([[0.6, 0.8]], [1.0]))

    def test_single_row_minimum(self):
        problem = SensingProblem([[0.8, 0.48, 0.36]], [0.81], epsilon=0.02)
        w = noisy_global_oracle(PenaltySpec.soft(1.0), problem)
        np.testing.assert_allclose(w, [0.79 / 0.8, 0.0, 0.0], atol=1e-8)


class TestStabilityCertificate(unittest.TestCase):
    def test_bound_holds_on_dominant_column(self):
        """Random single-row instances whose planted column has the strictly largest entry."""
        spec = PenaltySpec.pshrink(0.1, -1.0)
        rng = np.random.default_rng(17)
        for seed in range(50):
            n = int(rng.integers(3, 11))
            row = rng.standard_normal(n)
            j = int(rng.integers(n))
            others = np.delete(np.abs(row), j)
            row[j] = rng.choice([-1.0, 1.0]) * 1.5 * np.max(others)
            row /= np.linalg.norm(row)

            x = np.zeros(n)
            x[j] = rng.choice([-1.0, 1.0]) * rng.uniform(1.0, 2.0)
            noise = rng.uniform(-0.01, 0.01)
            problem = SensingProblem(row[None, :], [row @ x + noise], epsilon=0.02)
            cert = certify_stability(problem, spec, x, [j])
            self.assertTrue(cert.complete)
            self.assertLess(cert.tau, 1.0)
            self.assertEqual(cert.C, 1.0)
            self.assertAlmostEqual(cert.D, math.sqrt(n), delta=1e-14)
            self.assertEqual(cert.tail, 0.0)

            w = noisy_global_oracle(spec, problem, seed=seed)
            self.assertEqual(list(np.flatnonzero(w)), [j])
            self.assertLessEqual(penalty_total(spec, x - w), cert.bound)

    def test_to_dict(self):
        problem = SensingProblem([[0.8, 0.48, 0.36]], [0.8])
        cert = certify_stability(problem, PenaltySpec.pshrink(0.1, -1.0), [1.0, 0, 0], [0], 0.02)
        out = cert.to_dict()
        self.assertEqual(out['epsilon'], 0.02)
        self.assertEqual(out['num_supports'], 3)
        self.assertEqual(out['penalty'], {'type': 'pshrink', 'lambda': 0.1, 'p': -1.0})
        self.assertAlmostEqual(out['bound'], out['C1'] * 0.02, delta=1e-15)


if __name__ == '__main__':
    unittest.main()
