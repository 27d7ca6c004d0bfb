import itertools
import math
import unittest

import numpy as np

from shrinkcs.certificates import (
    alpha_beta,
    exact_recovery_check,
    find_p_lambda,
    firm_mu_bound,
    global_min_exhaustive,
    recovery_certificate,
    rnsp_check,
)
from shrinkcs.penalties import PenaltySpec
from shrinkcs.sensing import (
    SensingProblem,
    gaussian_matrix,
    orthonormalize_rows,
    planted_sparse_vector,
)
from shrinkcs.utils.checks import (
    BudgetExceededError,
    CertificateError,
    ConfigurationError,
    InvalidInputError,
)


def direct_alpha_beta(A: np.ndarray, b: np.ndarray):
    m, n = A.shape
    magnitudes = []
    for support in itertools.combinations(range(n), m):
        values = np.linalg.solve(A[:, list(support)], b)
        magnitudes.extend(np.abs(values[np.abs(values) > 1e-10]))
    return min(magnitudes), max(magnitudes)


class TestAlphaBeta(unittest.TestCase):
    def test_single_row(self):
        problem = SensingProblem([[0.6, 0.8]], [1.0])
        alpha, beta = alpha_beta(problem)
        self.assertAlmostEqual(alpha, 1.25, delta=1e-12)
        self.assertAlmostEqual(beta, 5 / 3, delta=1e-12)

        alpha10, beta10 = alpha_beta(SensingProblem([[0.6, 0.8]], [10.0]))
        self.assertAlmostEqual(alpha10, 10 * alpha, delta=1e-11)
        self.assertAlmostEqual(beta10, 10 * beta, delta=1e-11)

    def test_matches_direct_solves(self):
        rng = np.random.default_rng(3)
        for seed in range(5):
            base = SensingProblem(gaussian_matrix(2, 4, seed), rng.standard_normal(2))
            problem = orthonormalize_rows(base)
            alpha, beta = alpha_beta(problem)
            expected = direct_alpha_beta(problem.A, problem.b)
            np.testing.assert_allclose([alpha, beta], expected, rtol=1e-10)

    def test_errors(self):
        with self.assertRaises(CertificateError):
            alpha_beta(SensingProblem([[0.6, 0.8]], [0.0]))
        with self.assertRaises(BudgetExceededError):
            alpha_beta(SensingProblem(gaussian_matrix(6, 40, 0), np.ones(6)))


class TestExactRecoveryCheck(unittest.TestCase):
    def test_examples(self):
        cert = exact_recovery_check(PenaltySpec.firm(0.5, 1.5), 1.0, 2.0, 10, 2)
        self.assertAlmostEqual(cert.lhs, 1.5, delta=1e-12)
        self.assertAlmostEqual(cert.rhs, 6.0, delta=1e-12)
        self.assertTrue(cert.passes)

        cert = exact_recovery_check(PenaltySpec.soft(1.0), 1.0, 2.0, 4, 2)
        self.assertAlmostEqual(cert.lhs, 8.0, delta=1e-12)
        self.assertAlmostEqual(cert.rhs, 3.0, delta=1e-12)
        self.assertFalse(cert.passes)

    def test_needs_2k_le_m(self):
        for spec in (PenaltySpec.firm(0.01, 0.02), PenaltySpec.pshrink(1e-6, -1.0)):
            self.assertFalse(exact_recovery_check(spec, 1.0, 1.0, 10, 6).passes)
            self.assertTrue(exact_recovery_check(spec, 1.0, 1.0, 10, 5).passes)

    def test_to_dict(self):
        cert = exact_recovery_check(PenaltySpec.firm(0.5, 1.5), 1.0, 2.0, 10, 2)
        out = cert.to_dict()
        self.assertEqual(out['penalty'], {'type': 'firm', 'lambda': 0.5, 'mu': 1.5})
        self.assertTrue(out['passes'])
        self.assertIsNone(out['found_params'])

    def test_invalid(self):
        with self.assertRaises(ConfigurationError):
            exact_recovery_check(PenaltySpec.soft(1.0), 2.0, 1.0, 4, 1)
        with self.assertRaises(ConfigurationError):
            exact_recovery_check(PenaltySpec.soft(1.0), 1.0, 2.0, 4, 0)
        with self.assertRaises(ConfigurationError):
            exact_recovery_check({'type': 'firm', 'lambda': 1.0, 'mu': 0.5}, 1.0, 2.0, 4, 1)


class TestFirmMuBound(unittest.TestCase):
    def test_examples(self):
        expected = 4.5 * (1 + math.sqrt(7 / 9))
        self.assertAlmostEqual(firm_mu_bound(1.0, 10.0, 10, 2), expected, delta=1e-12)
        self.assertAlmostEqual(expected, 8.4686, delta=1e-4)
        self.assertEqual(firm_mu_bound(1.0, 1.0, 10, 2), 2.0)
        self.assertGreater(firm_mu_bound(1.0, 10.0, 10, 5), 1.0)
        with self.assertRaises(CertificateError):
            firm_mu_bound(1.0, 2.0, 10, 6)

    def test_mu_inside_bound_passes(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            alpha = rng.uniform(0.1, 1.0)
            beta = rng.uniform(alpha, 5.0)
            m = int(rng.integers(2, 11))
            k = int(rng.integers(1, m // 2 + 1))
            bound = firm_mu_bound(alpha, beta, m, k)
            for fraction in (0.05, 0.5, 0.9, 0.999):
                mu = fraction * bound
                cert = exact_recovery_check(PenaltySpec.firm(0.5 * mu, mu), alpha, beta, m, k)
                self.assertTrue(cert.passes, (alpha, beta, m, k, mu))

    def test_mu_outside_bound_can_fail(self):
        self.assertFalse(exact_recovery_check(PenaltySpec.firm(1.0, 9.0), 1.0, 10.0, 10, 2).passes)
        self.assertFalse(exact_recovery_check(PenaltySpec.firm(1.0, 30.0), 1.0, 10.0, 10, 2).passes)


class TestFindPLambda(unittest.TestCase):
    def test_examples(self):
        cert = find_p_lambda(1.0, 2.0, 4, 1)
        self.assertTrue(cert.passes)
        p, lam = cert.found_params
        self.assertTrue(exact_recovery_check(PenaltySpec.pshrink(lam, p), 1.0, 2.0, 4, 1).passes)

        # subadditivity of g makes the first grid point pass when alpha == beta
        cert = find_p_lambda(1.0, 1.0, 4, 1)
        self.assertEqual(cert.found_params, (0.5, 0.5))
        self.assertEqual(cert.spec, PenaltySpec.pshrink(0.5, 0.5))

    def test_always_found(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            alpha = rng.uniform(0.05, 1.0)
            beta = rng.uniform(alpha, 10.0)
            m = int(rng.integers(2, 11))
            k = int(rng.integers(1, m // 2 + 1))
            cert = find_p_lambda(alpha, beta, m, k)
            self.assertTrue(cert.passes, (alpha, beta, m, k))

    def test_errors(self):
        with self.assertRaises(CertificateError):
            find_p_lambda(1.0, 2.0, 4, 3)
        with self.assertRaises(CertificateError) as ctx:
            find_p_lambda(1.0, 100.0, 2, 1, p_grid=(0.5,), negative_lambda_grid=())
        self.assertIn('closest', str(ctx.exception))


class TestGlobalMinimum(unittest.TestCase):
    def test_examples(self):
        problem = SensingProblem([[0.6, 0.8]], [1.0])
        np.testing.assert_allclose(
            global_min_exhaustive(PenaltySpec.soft(1.0), problem), [0.0, 1.25], atol=1e-12
        )
        np.testing.assert_allclose(
            global_min_exhaustive(PenaltySpec.pshrink(0.01, -1.0), problem), [0.0, 1.25], atol=1e-12
        )
        zero = SensingProblem([[0.6, 0.8]], [0.0])
        np.testing.assert_array_equal(global_min_exhaustive(PenaltySpec.soft(1.0), zero), [0, 0])
        with self.assertRaises(ConfigurationError):
            global_min_exhaustive(PenaltySpec.soft(1.0), problem.with_epsilon(0.1))

    def test_certificate_soundness(self):
        """A passing certificate means the exhaustive minimizer is the planted vector."""
        rng = np.random.default_rng(2024)
        for seed in range(20):
            m = int(rng.integers(3, 7))
            n = int(rng.integers(m + 2, 13))
            k = int(rng.integers(1, m // 2 + 1))
            A = gaussian_matrix(m, n, seed)
            x = planted_sparse_vector(n, k, rng)
            problem = SensingProblem(A, A @ x)

            alpha, beta = alpha_beta(problem)
            mu = 0.9 * firm_mu_bound(alpha, beta, m, k)
            spec = PenaltySpec.firm(0.5 * mu, mu)
            cert = exact_recovery_check(spec, alpha, beta, m, k)
            self.assertTrue(cert.passes)
            np.testing.assert_allclose(global_min_exhaustive(spec, problem), x, atol=1e-8)
            self.assertTrue(rnsp_check(spec, problem, x))

            found = find_p_lambda(alpha, beta, m, k)
            np.testing.assert_allclose(global_min_exhaustive(found.spec, problem), x, atol=1e-8)

    def test_no_false_pass(self):
        """Over many random instances, every passing penalty recovers the planted vector."""
        rng = np.random.default_rng(77)
        passed = failed = 0
        for seed in range(200):
            m = int(rng.integers(2, 7))
            n = int(rng.integers(m + 1, 13))
            k = int(rng.integers(1, m // 2 + 1))
            A = gaussian_matrix(m, n, 1000 + seed)
            x = planted_sparse_vector(n, k, rng)
            problem = SensingProblem(A, A @ x)
            alpha, beta = alpha_beta(problem)
            bound = firm_mu_bound(alpha, beta, m, k)
            scale = float(rng.choice([0.5, 0.9, 2.0, 8.0]))
            specs = [
                PenaltySpec.firm(0.5 * scale * bound, scale * bound),
                PenaltySpec.soft(1.0),
                PenaltySpec.pshrink(0.5, 0.5),
            ]
            for spec in specs:
                cert = exact_recovery_check(spec, alpha, beta, m, k)
                if cert.passes:
                    passed += 1
                    np.testing.assert_allclose(
                        global_min_exhaustive(spec, problem), x, atol=1e-8,
                        err_msg=f'seed={seed}, spec={spec.describe()}',
                    )
                else:
                    failed += 1
        self.assertGreater(passed, 0)
        self.assertGreater(failed, 0)

    def test_recovery_certificate(self):
        A = gaussian_matrix(4, 8, 7)
        x = np.zeros(8)
        x[3] = 1.5
        problem = SensingProblem(A, A @ x)
        alpha, beta = alpha_beta(problem)
        mu = 0.5 * firm_mu_bound(alpha, beta, 4, 1)
        cert = recovery_certificate(PenaltySpec.firm(0.5 * mu, mu), problem, 1)
        self.assertTrue(cert.passes)
        self.assertAlmostEqual(cert.mu_max, 2 * mu, delta=1e-12)
        self.assertEqual((cert.alpha, cert.beta), (alpha, beta))


class TestRNSP(unittest.TestCase):
    def test_vacuous(self):
        problem = SensingProblem(np.eye(2), [1.0, 0.0])
        self.assertTrue(rnsp_check(PenaltySpec.soft(1.0), problem, [1.0, 0.0]))

    def test_violated_for_l1(self):
        # the only other basic solution is (0, 0.1, 0.1), which has smaller l1 norm
        problem = SensingProblem([[0.1, 1.0, 0.0], [0.1, 0.0, 1.0]], [0.1, 0.1])
        x = np.array([1.0, 0.0, 0.0])
        self.assertFalse(rnsp_check(PenaltySpec.soft(1.0), problem, x))
        np.testing.assert_allclose(
            global_min_exhaustive(PenaltySpec.soft(1.0), problem), [0.0, 0.1, 0.1], atol=1e-12
        )
        self.assertFalse(recovery_certificate(PenaltySpec.soft(1.0), problem, 1).passes)

    def test_errors(self):
        problem = SensingProblem([[0.6, 0.8]], [1.0])
        with self.assertRaises(InvalidInputError):
            rnsp_check(PenaltySpec.soft(1.0), problem, [1.0, 0.0])
        with self.assertRaises(CertificateError):
            rnsp_check(PenaltySpec.soft(1.0), problem, [0.0, 1.25])


if __name__ == '__main__':
    unittest.main()
