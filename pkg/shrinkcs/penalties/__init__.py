# Copyright (c) The shrinkcs authors.
from .base import (
    PENALTIES,
    Penalty,
    PenaltySpec,
    PenaltyValue,
    apply_shrinkage,
    build_penalty,
    penalty_total,
    penalty_values,
)
from .firm import FirmPenalty, HardPenalty, firm_threshold, g_firm_eval, hard_threshold
from .prox import legendre_penalty, penalty_inverse, penalty_supremum, prox_oracle
from .pshrink import PShrinkPenalty, g_p_deriv, g_p_eval, p_shrink, solve_x_of_w
from .soft import SoftPenalty, soft_threshold
