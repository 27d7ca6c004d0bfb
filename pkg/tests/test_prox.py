import unittest

import numpy as np

from shrinkcs.penalties import (
    PenaltySpec,
    apply_shrinkage,
    penalty_inverse,
    penalty_supremum,
    prox_oracle,
)
from shrinkcs.utils.checks import ConfigurationError


def random_spec(rng: np.random.Generator) -> PenaltySpec:
    lam = float(np.exp(rng.uniform(np.log(0.01), np.log(10.0))))
    family = rng.integers(4)
    if family == 0:
        return PenaltySpec.soft(lam)
    if family == 1:
        return PenaltySpec.pshrink(lam, float(rng.choice([-5.0, -1.0, -0.5, 0.0, 0.5, 1.0])))
    if family == 2:
        return PenaltySpec.firm(lam, lam * float(rng.uniform(1.1, 10.0)))
    return PenaltySpec.hard(lam)


class TestProxOracle(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(prox_oracle(PenaltySpec.soft(1.0), 2.0), 1.0, delta=1e-6)
        self.assertAlmostEqual(prox_oracle(PenaltySpec.firm(1.0, 2.0), 1.5), 1.0, delta=1e-6)
        self.assertAlmostEqual(prox_oracle(PenaltySpec.pshrink(1.0, 0.5), 4.0), 3.5, delta=1e-6)
        self.assertEqual(prox_oracle(PenaltySpec.hard(1.0), 0.0), 0.0)

    def test_shrinkage_is_the_proximal_map(self):
        rng = np.random.default_rng(2024)
        for _ in range(500):
            spec = random_spec(rng)
            x = float(rng.uniform(-20.0, 20.0))
            expected = prox_oracle(spec, x)
            actual = float(apply_shrinkage(spec, np.array([x]))[0])
            self.assertLess(abs(actual - expected), 1e-5, (spec.describe(), x))

    def test_step_scales_threshold(self):
        spec = PenaltySpec.soft(1.0)
        self.assertAlmostEqual(prox_oracle(spec, 3.0, step=2.0), 1.0, delta=1e-6)
        scaled = spec.scale_threshold(2.0)
        self.assertAlmostEqual(float(apply_shrinkage(scaled, np.array([3.0]))[0]), 1.0)


class TestPenaltyInverse(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(penalty_inverse(PenaltySpec.soft(1.0), 2.0), 2.0, delta=1e-10)
        self.assertAlmostEqual(penalty_inverse(PenaltySpec.firm(1.0, 2.0), 0.75), 1.0, delta=1e-10)
        self.assertAlmostEqual(penalty_inverse(PenaltySpec.pshrink(1.0, 0.5), 2.375), 3.5, delta=1e-9)
        self.assertEqual(penalty_inverse(PenaltySpec.soft(1.0), 0.0), 0.0)

    def test_bounded_penalties(self):
        self.assertEqual(penalty_supremum(PenaltySpec.pshrink(1.0, -1.0)), 1.5)
        self.assertEqual(penalty_supremum(PenaltySpec.firm(0.5, 2.0)), 1.0)
        self.assertEqual(penalty_supremum(PenaltySpec.hard(3.0)), 1.5)
        self.assertEqual(penalty_supremum(PenaltySpec.pshrink(1.0, 0.5)), np.inf)
        with self.assertRaises(ConfigurationError):
            penalty_inverse(PenaltySpec.pshrink(1.0, -1.0), 1.5)
        t = penalty_inverse(PenaltySpec.pshrink(1.0, -1.0), 1.4)
        self.assertGreater(t, 1.0)


if __name__ == '__main__':
    unittest.main()
