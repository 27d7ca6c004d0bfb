# Copyright (c) The shrinkcs authors.
from .oracle import noisy_global_oracle
from .recovery import (
    RecoveryCertificate,
    alpha_beta,
    exact_recovery_check,
    find_p_lambda,
    firm_mu_bound,
    global_min_exhaustive,
    recovery_certificate,
    rnsp_check,
)
from .stability import (
    StabilityCertificate,
    certify_stability,
    noisy_alpha_beta,
    projected_error_bounds,
    stability_bound,
    stability_constants,
)
