import unittest

from modelscope.utils.config import Config

from shrinkcs.experiments import EXPERIMENTS, CertifySweep, PhantomSweep, PhaseDiagram
from shrinkcs.metainfo import Experiments, Penalties, Solvers, get_member_set
from shrinkcs.penalties import (
    PENALTIES,
    FirmPenalty,
    HardPenalty,
    PenaltySpec,
    PShrinkPenalty,
    SoftPenalty,
    build_penalty,
)
from shrinkcs.solvers import SOLVERS, ADMMSolver, IPSSolver, SolverConfig, build_solver


class TestRegistry(unittest.TestCase):
    def test_penalties_registered(self):
        """every penalty family name has a registered class"""
        for name in get_member_set(Penalties):
            self.assertIsNotNone(PENALTIES.get(name))

    def test_build_penalty(self):
        """penalties are built from specs, dicts and modelscope configs"""
        self.assertTrue(isinstance(build_penalty(PenaltySpec.soft(1.0)), SoftPenalty))
        self.assertTrue(
            isinstance(build_penalty({'type': 'pshrink', 'lambda': 1.0, 'p': 0.5}), PShrinkPenalty)
        )
        self.assertTrue(isinstance(build_penalty(PenaltySpec.firm(1.0, 2.0)), FirmPenalty))
        cfg = Config({'penalty': {'type': 'hard', 'lam': 0.5}})
        penalty = build_penalty(cfg.penalty)
        self.assertTrue(isinstance(penalty, HardPenalty))
        self.assertEqual(penalty.lam, 0.5)

    def test_build_solver(self):
        """solvers are built by name and keep their config"""
        for name in get_member_set(Solvers):
            self.assertIsNotNone(SOLVERS.get(name))
        solver = build_solver(Solvers.ips, {'max_iters': 7})
        self.assertTrue(isinstance(solver, IPSSolver))
        self.assertEqual(solver.config.max_iters, 7)
        solver = build_solver(Solvers.admm, SolverConfig(admm_rho=2.0))
        self.assertTrue(isinstance(solver, ADMMSolver))
        self.assertEqual(solver.config.admm_rho, 2.0)

    def test_experiments_registered(self):
        """every experiment kind has a registered class"""
        expected = {
            Experiments.phase_diagram: PhaseDiagram,
            Experiments.phantom_sweep: PhantomSweep,
            Experiments.certify_sweep: CertifySweep,
        }
        self.assertEqual(set(expected), get_member_set(Experiments))
        for name, cls in expected.items():
            self.assertIs(EXPERIMENTS.get(name), cls)


if __name__ == '__main__':
    unittest.main()
