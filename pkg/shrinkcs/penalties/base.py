# Copyright (c) The shrinkcs authors.
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, replace
from typing import Dict, Optional, Union

import numpy as np
from modelscope.utils.config import Config, ConfigDict
from modelscope.utils.registry import Registry, build_from_cfg

from shrinkcs.metainfo import Penalties, get_member_set
from shrinkcs.utils.checks import ConfigurationError, check_finite

PENALTIES = Registry('penalties')


@dataclass(frozen=True)
class PenaltySpec:
    """
    A shrinkage family with its parameters. The same spec defines the elementwise
    shrinkage S and the penalty g it is the proximal mapping of: S = prox of `lam * G`.

    Args:
        family (str): one of `Penalties` (`soft`, `pshrink`, `firm`, `hard`)
        lam (float): threshold scale λ > 0
        p (float): p-shrinkage exponent, p <= 1 (p = 1 is soft), `pshrink` only
        mu (float): firm cutoff μ ≥ λ, `firm` only (μ = λ is hard thresholding)
    """

    family: str
    lam: float
    p: Optional[float] = None
    mu: Optional[float] = None

    def __post_init__(self):
        if self.family not in get_member_set(Penalties):
            raise ConfigurationError(
                f'Unknown penalty family: {self.family}, '
                f'expected one of {sorted(get_member_set(Penalties))}'
            )
        if not np.isfinite(self.lam) or self.lam <= 0:
            raise ConfigurationError(f'lambda must be positive, got: {self.lam}')
        if self.family == Penalties.p_shrink:
            if self.p is None or not np.isfinite(self.p) or self.p > 1:
                raise ConfigurationError(f'pshrink requires p <= 1, got: {self.p}')
        elif self.p is not None:
            raise ConfigurationError(f'p is only used by pshrink, got p={self.p} for {self.family}')
        if self.family == Penalties.firm:
            if self.mu is None or not np.isfinite(self.mu) or self.mu < self.lam:
                raise ConfigurationError(
                    f'firm requires mu >= lambda, got mu={self.mu}, lambda={self.lam}'
                )
        elif self.mu is not None:
            raise ConfigurationError(f'mu is only used by firm, got mu={self.mu} for {self.family}')

    @classmethod
    def soft(cls, lam: float = 1.0) -> 'PenaltySpec':  # noqa: D102
        return cls(Penalties.soft, float(lam))

    @classmethod
    def pshrink(cls, lam: float, p: float) -> 'PenaltySpec':  # noqa: D102
        return cls(Penalties.p_shrink, float(lam), p=float(p))

    @classmethod
    def firm(cls, lam: float, mu: float) -> 'PenaltySpec':  # noqa: D102
        return cls(Penalties.firm, float(lam), mu=float(mu))

    @classmethod
    def hard(cls, lam: float) -> 'PenaltySpec':  # noqa: D102
        return cls(Penalties.hard, float(lam))

    @classmethod
    def from_config(cls, cfg: Union[Dict, Config, 'PenaltySpec']) -> 'PenaltySpec':
        """Build a spec from `{'type': 'firm', 'lambda': 0.1, 'mu': 2.5}` like dicts.

        `family` is accepted as an alias of `type` and `lam` as an alias of `lambda`.
        """
        if isinstance(cfg, PenaltySpec):
            return cfg
        if isinstance(cfg, Config):
            cfg = cfg.to_dict()
        cfg = dict(cfg)
        family = cfg.pop('type', None) or cfg.pop('family', None)
        if family is None:
            raise ConfigurationError(f'penalty config needs a `type`, got: {cfg}')
        lam = cfg.pop('lambda', cfg.pop('lam', None))
        if lam is None:
            raise ConfigurationError(f'penalty config needs `lambda`, got: {cfg}')
        p, mu = cfg.pop('p', None), cfg.pop('mu', None)
        if cfg:
            raise ConfigurationError(f'Unknown penalty config keys: {sorted(cfg)}')
        return cls(
            family,
            float(lam),
            p=None if p is None else float(p),
            mu=None if mu is None else float(mu),
        )

    def to_dict(self) -> Dict:
        """Inverse of :meth:`from_config`, drops unused parameters."""
        out = {'type': self.family, 'lambda': self.lam}
        if self.p is not None:
            out['p'] = self.p
        if self.mu is not None:
            out['mu'] = self.mu
        return out

    def describe(self) -> str:  # noqa: D102
        params = ', '.join(
            f'{k}={v:g}' for k, v in asdict(self).items() if k != 'family' and v is not None
        )
        return f'{self.family}({params})'

    def scale_threshold(self, factor: float) -> 'PenaltySpec':
        """
        The spec whose shrinkage is the proximal mapping of `factor * lam * G`,
        i.e. the z-step of a splitting method with penalty parameter `rho = 1 / factor`.

        For soft and firm this is exact. For pshrink the threshold becomes
        `factor * lam` (the p-shrinkage penalty is not homogeneous in λ). Hard becomes
        firm with `(factor * lam, mu=lam)`, which requires `factor <= 1`.
        """
        if not np.isfinite(factor) or factor <= 0:
            raise ConfigurationError(f'threshold factor must be positive, got: {factor}')
        lam = self.lam * factor
        if self.family in (Penalties.soft, Penalties.p_shrink):
            return replace(self, lam=lam)
        mu = self.mu if self.family == Penalties.firm else self.lam
        if mu < lam:
            raise ConfigurationError(
                f'{self.describe()} scaled by {factor:g} gives threshold {lam:g} above mu={mu:g}; '
                'use a larger ADMM rho'
            )
        if mu == lam:
            return PenaltySpec.hard(lam)
        return PenaltySpec.firm(lam, mu)


@dataclass
class PenaltyValue:
    """
    Value of an induced penalty g at a query point.

    Args:
        value (float): g(w) ≥ 0, zero iff w = 0
        derivative (float): g'(|w|) when defined
        root_x (float): for pshrink, the point x with s_p(x) = |w| (the conjugate-gradient point)
    """

    value: float
    derivative: Optional[float] = None
    root_x: Optional[float] = None


class Penalty(ABC):
    """
    The base class of a shrinkage family bound to concrete parameters.

    `shrink` is the proximal mapping of `spec.lam * G`; `value` evaluates the
    elementwise penalty g; `derivative` is the signed slope of g away from 0.
    """

    def __init__(self, spec: PenaltySpec):
        self.spec = spec

    @property
    def lam(self) -> float:  # noqa: D102
        return self.spec.lam

    @abstractmethod
    def shrink(self, x: np.ndarray) -> np.ndarray:
        """Elementwise shrinkage, odd in x."""
        raise NotImplementedError

    @abstractmethod
    def value(self, w: np.ndarray) -> np.ndarray:
        """Elementwise g(w), even in w."""
        raise NotImplementedError

    @abstractmethod
    def derivative(self, w: np.ndarray) -> np.ndarray:
        """Elementwise signed g'(w); entries where w = 0 are returned as 0."""
        raise NotImplementedError

    def total(self, w: np.ndarray) -> float:
        """G(w) = sum_i g(w_i)."""
        return float(np.sum(self.value(w)))


def build_penalty(spec: Union[PenaltySpec, Dict, ConfigDict]) -> Penalty:
    """Build the registered penalty object of a spec (or penalty config dict)

    Args:
        spec (PenaltySpec | dict): a spec, or a config accepted by `PenaltySpec.from_config`

    Returns:
        penalty (:obj:`Penalty`): a penalty instance
    """
    spec = PenaltySpec.from_config(spec)
    return build_from_cfg(
        dict(type=spec.family), PENALTIES, group_key='default', default_args=dict(spec=spec)
    )


def apply_shrinkage(spec: PenaltySpec, x) -> np.ndarray:
    """Dispatch to the named shrinkage of `spec.family`."""
    return build_penalty(spec).shrink(check_finite(x, 'x'))


def penalty_total(spec: PenaltySpec, w) -> float:
    """G(w) = sum_i g(w_i) for the penalty induced by `spec`."""
    return build_penalty(spec).total(check_finite(w, 'w'))


def penalty_values(spec: PenaltySpec, w) -> np.ndarray:
    """Elementwise g(w_i), same shape as `w`."""
    return build_penalty(spec).value(check_finite(w, 'w'))
