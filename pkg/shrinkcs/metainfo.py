# Copyright (c) The shrinkcs authors.


def get_member_set(_class):
    """Get member names set."""
    return set(
        getattr(_class, _a)
        for _a in dir(_class)
        if not _a.startswith('_') and isinstance(getattr(_class, _a), str)
    )


class Penalties:
    """Names for different shrinkage / penalty families"""

    soft = 'soft'
    p_shrink = 'pshrink'
    firm = 'firm'
    hard = 'hard'


class Solvers:
    """Names for different solvers"""

    ips = 'ips'
    admm = 'admm'


class Experiments:
    """Names for different experiment kinds"""

    phase_diagram = 'phase-diagram'
    phantom_sweep = 'phantom-sweep'
    certify_sweep = 'certify-sweep'
