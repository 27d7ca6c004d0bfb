import json
import os
import os.path as osp
import shutil
import unittest

import numpy as np
import pandas as pd

from shrinkcs.commands import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, main
from shrinkcs.commands.penalty_eval import penalty_table
from shrinkcs.imaging import read_pgm
from shrinkcs.penalties import PenaltySpec, p_shrink
from shrinkcs.sensing import SensingProblem, write_problem_csv
from shrinkcs.utils.file_utils import read_vector_csv, write_matrix_csv


class TestCommands(unittest.TestCase):
    def setUp(self):
        self.work_dir = osp.join('tests', 'tmp')
        os.makedirs(self.work_dir, exist_ok=True)
        self.configs = osp.join('tests', 'resources', 'configs')
        print(('Testing %s.%s' % (type(self).__name__, self._testMethodName)))

    def tearDown(self):
        if osp.exists(self.work_dir):
            shutil.rmtree(self.work_dir, ignore_errors=True)

    def path(self, name):
        return osp.join(self.work_dir, name)

    def write_problem(self, A, b, name='problem.csv'):
        return write_problem_csv(self.path(name), SensingProblem(A, b))

    def test_usage(self):
        self.assertEqual(main([]), EXIT_USAGE)
        self.assertEqual(main(['no-such-command']), EXIT_USAGE)
        self.assertEqual(main(['shrink', '--family', 'soft']), EXIT_USAGE)

    def test_shrink(self):
        x = np.linspace(-6.0, 6.0, 25)
        in_path = write_matrix_csv(self.path('x.csv'), x)
        out_path = self.path('y.csv')
        code = main(
            ['shrink', '--family', 'pshrink', '--lambda', '1', '--p', '0.5']
            + ['--in', in_path, '--out', out_path]
        )
        self.assertEqual(code, EXIT_OK)
        np.testing.assert_allclose(read_vector_csv(out_path), p_shrink(x, 1.0, 0.5), atol=1e-15)

        code = main(['shrink', '--penalty', osp.join(self.configs, 'pshrink.json')]
                    + ['--in', in_path, '--out', self.path('z.csv')])
        self.assertEqual(code, EXIT_OK)
        np.testing.assert_array_equal(read_vector_csv(self.path('z.csv')), read_vector_csv(out_path))

    def test_shrink_errors(self):
        in_path = write_matrix_csv(self.path('x.csv'), np.ones(3))
        code = main(['shrink', '--family', 'pshrink', '--lambda', '1', '--p', '2']
                    + ['--in', in_path, '--out', self.path('y.csv')])
        self.assertEqual(code, EXIT_USAGE)
        code = main(['shrink', '--lambda', '1', '--in', in_path, '--out', self.path('y.csv')])
        self.assertEqual(code, EXIT_USAGE)
        code = main(['shrink', '--family', 'soft', '--in', self.path('missing.csv'),
                     '--out', self.path('y.csv')])
        self.assertEqual(code, EXIT_USAGE)

    def test_penalty_eval(self):
        out_path = self.path('g.csv')
        code = main(['penalty-eval', '--family', 'firm', '--lambda', '1', '--mu', '2']
                    + ['--w-min', '-3', '--w-max', '3', '--num', '7', '--out', out_path])
        self.assertEqual(code, EXIT_OK)
        table = pd.read_csv(out_path)
        self.assertEqual(list(table.columns), ['w', 'g', 'dg'])
        np.testing.assert_allclose(table['g'], [1.0, 1.0, 0.75, 0.0, 0.75, 1.0, 1.0], atol=1e-12)
        expected = penalty_table(PenaltySpec.firm(1.0, 2.0), np.linspace(-3, 3, 7))
        np.testing.assert_allclose(table['dg'], expected['dg'], atol=1e-12)
        self.assertEqual(
            main(['penalty-eval', '--family', 'soft', '--w-min', '1', '--w-max', '0']), EXIT_USAGE
        )

    def test_solve(self):
        problem_path = self.write_problem([[2.0, 0.0], [0.0, 1.0]], [2.0, 0.5])
        out_path = self.path('ips.csv')
        code = main(['solve-ips', '--problem', problem_path, '--family', 'soft', '--lambda', '0.1']
                    + ['--out', out_path])
        self.assertEqual(code, EXIT_USAGE)
        config_path = self.path('solver.json')
        with open(config_path, 'w', encoding='utf8') as f:
            json.dump({'solver': {'rescale': True}, 'penalty': {'type': 'soft', 'lambda': 0.1}}, f)
        code = main(['solve-ips', '--problem', problem_path, '--config', config_path]
                    + ['--out', out_path])
        self.assertEqual(code, EXIT_OK)
        trace = pd.read_csv(out_path)
        self.assertTrue(np.all(np.diff(trace['objective'].dropna()) <= 1e-12))
        with open(osp.join(self.work_dir, 'ips.json'), encoding='utf8') as f:
            summary = json.load(f)
        self.assertEqual(summary['solver'], 'ips')
        self.assertEqual(summary['penalty'], {'type': 'soft', 'lambda': 0.1})
        self.assertLess(summary['scale'], 1.0)

    def test_solve_admm(self):
        problem_path = self.write_problem([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]], [1.0, 1.0])
        out_path = self.path('admm.csv')
        code = main(['solve-admm', '--problem', problem_path, '--family', 'soft']
                    + ['--max-iters', '2000', '--out', out_path])
        self.assertEqual(code, EXIT_OK)
        with open(self.path('admm.json'), encoding='utf8') as f:
            summary = json.load(f)
        np.testing.assert_allclose(summary['x_final'], [0.0, 1.0, 0.0], atol=1e-4)

    def test_certify(self):
        problem_path = self.write_problem([[0.6, 0.8]], [1.0])
        out_path = self.path('cert.json')
        code = main(['certify', '--problem', problem_path, '--k', '1']
                    + ['--penalty', osp.join(self.configs, 'firm.json'), '--out', out_path])
        self.assertEqual(code, EXIT_OK)
        with open(out_path, encoding='utf8') as f:
            self.assertFalse(json.load(f)['passes'])
        code = main(['certify', '--problem', problem_path, '--k', '1', '--search'])
        self.assertEqual(code, EXIT_NUMERIC)

        problem_path = self.write_problem(
            [[1.0, 0.2, 0.3, 0.1], [0.1, 1.0, 0.2, 0.4]], [1.0, 0.1], name='wide.csv'
        )
        code = main(['certify', '--problem', problem_path, '--k', '1', '--family', 'soft']
                    + ['--out', out_path])
        self.assertEqual(code, EXIT_OK)
        with open(out_path, encoding='utf8') as f:
            cert = json.load(f)
        self.assertIn('passes', cert)
        self.assertEqual(cert['k'], 1)
        self.assertLessEqual(cert['alpha'], cert['beta'])

        code = main(['certify', '--problem', problem_path, '--k', '1', '--search']
                    + ['--out', out_path])
        self.assertEqual(code, EXIT_OK)
        with open(out_path, encoding='utf8') as f:
            cert = json.load(f)
        self.assertTrue(cert['passes'])
        self.assertEqual(len(cert['found_params']), 2)

    def test_certify_stability(self):
        problem_path = self.write_problem([[0.8, 0.48, 0.36]], [0.8])
        x_path = write_matrix_csv(self.path('x.csv'), [1.0, 0.0, 0.0])
        out_path = self.path('stability.json')
        code = main(['certify', '--problem', problem_path, '--x', x_path, '--epsilon', '0.02']
                    + ['--family', 'pshrink', '--lambda', '0.1', '--p', '-1', '--out', out_path])
        self.assertEqual(code, EXIT_OK)
        with open(out_path, encoding='utf8') as f:
            cert = json.load(f)
        self.assertEqual(cert['epsilon'], 0.02)
        self.assertEqual(cert['num_supports'], 3)
        self.assertAlmostEqual(cert['bound'], cert['C1'] * 0.02, delta=1e-15)
        code = main(['certify', '--problem', problem_path, '--epsilon', '0.02', '--family', 'soft'])
        self.assertEqual(code, EXIT_USAGE)

    def test_certify_sweep(self):
        config_path = self.path('certify_config.json')
        with open(config_path, 'w', encoding='utf8') as f:
            json.dump({'kind': 'certify-sweep', 'grid': {'n': 8, 'm': [4], 'k': [1, 2]}}, f)
        out_path = self.path('sweep.csv')
        code = main(['certify', '--config', config_path, '--seed', '3', '--out', out_path])
        self.assertEqual(code, EXIT_OK)
        table = pd.read_csv(out_path)
        self.assertEqual(len(table), 2)
        with open(self.path('sweep.json'), encoding='utf8') as f:
            self.assertEqual(json.load(f)['config']['kind'], 'certify-sweep')
        self.assertTrue(osp.exists(self.path('sweep.config.yaml')))
        with open(out_path, 'rb') as f:
            self.assertTrue(f.read().startswith(b'n,m,k,trial'))

    def test_phase_diagram(self):
        out_path = self.path('phase.csv')
        code = main(['phase-diagram', '--config', osp.join(self.configs, 'phase_diagram_small.json')]
                    + ['--seed', '1', '--out', out_path])
        self.assertEqual(code, EXIT_OK)
        table = pd.read_csv(out_path)
        self.assertEqual(list(table['k']), [0, 1, 8])
        with open(self.path('phase.json'), encoding='utf8') as f:
            meta = json.load(f)
        self.assertEqual(meta['config']['seed'], 1)
        self.assertEqual(main(['phase-diagram']), EXIT_USAGE)

    def test_phantom(self):
        out_path = self.path('phantom.pgm')
        code = main(['phantom', '--size', '16', '--lines', '16', '--family', 'soft']
                    + ['--max-iters', '30', '--out', out_path, '--mask-out', self.path('mask.csv')])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(read_pgm(out_path).shape, (16, 16))
        with open(self.path('phantom.json'), encoding='utf8') as f:
            summary = json.load(f)
        self.assertEqual(summary['lines'], 16)
        self.assertLessEqual(summary['constraint_error'], 1e-6)
        self.assertEqual(main(['phantom', '--size', '8', '--family', 'soft']), EXIT_USAGE)


if __name__ == '__main__':
    unittest.main()
