"""Fitted marginal container: family tag, parameters, fit diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hyperbolic import Hyperbolic, HyperbolicParams
from .meixner import Meixner, MeixnerParams
from .stable import Stable, StableParams

FAMILIES = ("hyperbolic", "stable", "meixner")

_PARAM_TYPES = {
    "hyperbolic": HyperbolicParams,
    "stable": StableParams,
    "meixner": MeixnerParams,
}
_DIST_TYPES = {"hyperbolic": Hyperbolic, "stable": Stable, "meixner": Meixner}


@dataclass
class MarginalModel:
    family: str
    params: HyperbolicParams | StableParams | MeixnerParams
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown marginal family {self.family!r}")
        if not isinstance(self.params, _PARAM_TYPES[self.family]):
            raise TypeError(f"params type does not match family {self.family!r}")
        self.params.validate()
        self._dist = None

    @property
    def dist(self):
        if self._dist is None:
            self._dist = _DIST_TYPES[self.family](self.params)
        return self._dist

    def pdf(self, x):
        return self.dist.pdf(x)

    def logpdf(self, x):
        return self.dist.logpdf(x) if hasattr(self.dist, "logpdf") else np.log(self.dist.pdf(x))

    def cdf(self, x):
        return self.dist.cdf(x)

    def quantile(self, u):
        return self.dist.quantile(u)

    def sample(self, n, rng):
        return self.dist.sample(n, rng)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params.as_dict(),
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MarginalModel":
        family = d["family"]
        params = _PARAM_TYPES[family](**d["params"])
        return cls(family=family, params=params, diagnostics=dict(d.get("diagnostics", {})))


def make_params(family: str, values) -> HyperbolicParams | StableParams | MeixnerParams:
    """Build a params object from a sequence in declaration order."""
    return _PARAM_TYPES[family](*[float(v) for v in values])
