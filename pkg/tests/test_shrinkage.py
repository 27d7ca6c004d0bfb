import unittest

import numpy as np

from shrinkcs.metainfo import Penalties
from shrinkcs.penalties import (
    PenaltySpec,
    apply_shrinkage,
    firm_threshold,
    hard_threshold,
    p_shrink,
    soft_threshold,
)
from shrinkcs.utils.checks import ConfigurationError, InvalidInputError


class TestShrinkage(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(0)
        self.specs = [
            PenaltySpec.soft(0.7),
            PenaltySpec.pshrink(1.0, 0.5),
            PenaltySpec.pshrink(0.3, 0.0),
            PenaltySpec.pshrink(2.0, -1.0),
            PenaltySpec.pshrink(1.0, -5.0),
            PenaltySpec.firm(1.0, 2.0),
            PenaltySpec.firm(0.1, 2.5),
            PenaltySpec.hard(1.0),
        ]

    def test_soft_threshold(self):
        np.testing.assert_allclose(soft_threshold([2.0], 1), [1.0])
        np.testing.assert_allclose(soft_threshold([-0.5], 1), [0.0])
        np.testing.assert_allclose(soft_threshold([-3.0], 1), [-2.0])

    def test_p_shrink(self):
        np.testing.assert_allclose(p_shrink([4.0], 1, 0.5), [3.5], rtol=1e-14)
        np.testing.assert_allclose(p_shrink([1.0], 1, 0.5), [0.0])
        np.testing.assert_allclose(p_shrink([4.0], 2, 0), [3.0], rtol=1e-14)
        np.testing.assert_array_equal(p_shrink([-4.0, 0.3], 1, 1.0), soft_threshold([-4.0, 0.3], 1))

    def test_hard_threshold(self):
        np.testing.assert_array_equal(hard_threshold([0.5, 2.0], 1), [0.0, 2.0])
        np.testing.assert_array_equal(hard_threshold([1.0], 1), [0.0])
        np.testing.assert_array_equal(hard_threshold([-1.001], 1), [-1.001])

    def test_firm_threshold(self):
        np.testing.assert_allclose(firm_threshold([1.5], 1, 2), [1.0])
        np.testing.assert_allclose(firm_threshold([3.0], 1, 2), [3.0])
        np.testing.assert_allclose(firm_threshold([-0.9], 1, 2), [0.0])
        # continuous at both kinks
        np.testing.assert_allclose(firm_threshold([2.0, 1.0], 1, 2), [2.0, 0.0])

    def test_apply_shrinkage_dispatch(self):
        np.testing.assert_allclose(apply_shrinkage(PenaltySpec.pshrink(1, 1), [2.0]), [1.0])
        np.testing.assert_allclose(apply_shrinkage(PenaltySpec.firm(1, 2), [1.5]), [1.0])
        np.testing.assert_array_equal(apply_shrinkage(PenaltySpec.hard(1), [1.0]), [0.0])
        np.testing.assert_array_equal(
            apply_shrinkage(PenaltySpec.firm(1, 1), [0.5, 1.0, 1.5]), [0.0, 0.0, 1.5]
        )

    def test_invalid_inputs(self):
        for spec in self.specs:
            with self.assertRaises(InvalidInputError):
                apply_shrinkage(spec, [1.0, np.nan])
            with self.assertRaises(InvalidInputError):
                apply_shrinkage(spec, [np.inf])
        with self.assertRaises(ConfigurationError):
            p_shrink([1.0], 1.0, 2.0)
        with self.assertRaises(ConfigurationError):
            firm_threshold([1.0], 1.0, 1.0)
        with self.assertRaises(ConfigurationError):
            soft_threshold([1.0], 0.0)

    def test_odd_symmetry_and_contraction(self):
        x = np.concatenate([self.rng.uniform(-20, 20, 500), np.linspace(-3, 3, 601)])
        t = np.sort(np.abs(x))
        for spec in self.specs:
            np.testing.assert_array_equal(apply_shrinkage(spec, -x), -apply_shrinkage(spec, x))
            s = apply_shrinkage(spec, t)
            self.assertTrue(np.all(s >= 0), spec.describe())
            self.assertTrue(np.all(s <= t), spec.describe())
            self.assertTrue(np.all(np.diff(s) >= 0), spec.describe())

    def test_threshold_is_lambda(self):
        for lam in [0.1, 1.0, 7.5]:
            for p in [-50.0, -5.0, -1.0, 0.0, 0.5, 0.99]:
                below = np.linspace(0, lam, 50)
                above = lam * (1 + np.logspace(-8, 2, 50))
                np.testing.assert_array_equal(p_shrink(below, lam, p), 0.0)
                self.assertTrue(np.all(p_shrink(above, lam, p) > 0))

    def test_hard_limit(self):
        lam = 0.5
        t = np.concatenate([np.linspace(-5, -0.6, 50), np.linspace(-0.4, 0.4, 9), np.linspace(0.6, 5, 50)])
        np.testing.assert_allclose(p_shrink(t, lam, -50.0), hard_threshold(t, lam), atol=1e-3)

    def test_soft_limit_of_firm(self):
        t = np.linspace(-5, 5, 201)
        for lam in [0.1, 1.0]:
            np.testing.assert_allclose(firm_threshold(t, lam, 1e6), soft_threshold(t, lam), atol=1e-5)

    def test_gap_nonincreasing(self):
        lam = 1.3
        t = lam + np.linspace(0, 50, 2001)
        for p in [-3.0, -1.0, 0.0, 0.5, 1.0]:
            gap = t - p_shrink(t, lam, p)
            self.assertTrue(np.all(np.diff(gap) <= 1e-12), p)

    def test_no_overflow_for_very_negative_p(self):
        out = p_shrink([1e-3, 1.0 + 1e-9, 3.0, 1e300], 1.0, -1e4)
        self.assertTrue(np.all(np.isfinite(out)))
        np.testing.assert_allclose(out[2:], [3.0, 1e300])


class TestPenaltySpec(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(ConfigurationError):
            PenaltySpec('l0', 1.0)
        with self.assertRaises(ConfigurationError):
            PenaltySpec.soft(-1.0)
        with self.assertRaises(ConfigurationError):
            PenaltySpec.pshrink(1.0, 1.5)
        with self.assertRaises(ConfigurationError):
            PenaltySpec.firm(1.0, 0.5)
        with self.assertRaises(ConfigurationError):
            PenaltySpec(Penalties.soft, 1.0, mu=2.0)

    def test_from_config(self):
        spec = PenaltySpec.from_config({'type': 'firm', 'lambda': 0.1, 'mu': 2.5})
        self.assertEqual(spec, PenaltySpec.firm(0.1, 2.5))
        self.assertEqual(PenaltySpec.from_config(spec.to_dict()), spec)
        spec = PenaltySpec.from_config({'family': 'pshrink', 'lam': 1, 'p': -0.5})
        self.assertEqual(spec, PenaltySpec.pshrink(1.0, -0.5))
        with self.assertRaises(ConfigurationError):
            PenaltySpec.from_config({'type': 'soft', 'lambda': 1.0, 'nu': 3})

    def test_scale_threshold(self):
        self.assertEqual(PenaltySpec.soft(1.0).scale_threshold(0.5), PenaltySpec.soft(0.5))
        self.assertEqual(
            PenaltySpec.pshrink(1.0, -1.0).scale_threshold(0.5), PenaltySpec.pshrink(0.5, -1.0)
        )
        self.assertEqual(PenaltySpec.firm(0.2, 0.5).scale_threshold(1.0), PenaltySpec.firm(0.2, 0.5))
        self.assertEqual(PenaltySpec.hard(1.0).scale_threshold(0.5), PenaltySpec.firm(0.5, 1.0))
        self.assertEqual(PenaltySpec.hard(1.0).scale_threshold(1.0), PenaltySpec.hard(1.0))
        with self.assertRaises(ConfigurationError):
            PenaltySpec.hard(1.0).scale_threshold(2.0)
        with self.assertRaises(ConfigurationError):
            PenaltySpec.firm(1.0, 1.5).scale_threshold(2.0)


if __name__ == '__main__':
    unittest.main()
