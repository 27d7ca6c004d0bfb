# Copyright (c) The shrinkcs authors.
from .base import (
    EXPERIMENTS,
    Experiment,
    build_experiment,
    map_trials,
    relative_error,
    run_experiment,
    write_table,
)
from .certify_sweep import CertifySweep, same_sparse_vector
from .config import ExperimentConfig
from .phantom_sweep import PhantomSweep, minimal_lines
from .phase_diagram import PhaseDiagram, planted_instance
