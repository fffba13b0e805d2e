"""
Core Model Data Structures
Reward distributions, game instances, realizations and order-statistic reports
"""
import math
from enum import Enum
from typing import Annotated, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import get_settings
from core_model.errors import NotDiscreteError


class TieRule(str, Enum):
    """How a contested reward is assigned"""
    RANDOM = "random"
    RANKED = "ranked"


class EstimationMethod(str, Enum):
    """How an expectation was obtained"""
    EXACT = "exact"
    MONTE_CARLO = "monte_carlo"


class _FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True)


class DiscreteDistribution(_FrozenModel):
    """Finite-support law; support is canonicalized to strictly increasing values."""
    kind: Literal["discrete"] = "discrete"
    support: List[Tuple[float, float]] = Field(min_length=1)

    @field_validator("support")
    @classmethod
    def _canonical_support(cls, support: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
        merged: dict[float, float] = {}
        for value, prob in support:
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"support value must be finite and non-negative, got {value}")
            if not (0.0 < prob <= 1.0):
                raise ValueError(f"probability must lie in (0, 1], got {prob}")
            merged[float(value)] = merged.get(float(value), 0.0) + float(prob)
        total = math.fsum(merged.values())
        if abs(total - 1.0) > get_settings().probability_tolerance:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        return [(value, merged[value]) for value in sorted(merged)]

    @property
    def is_discrete(self) -> bool:
        return True

    def support_points(self) -> List[Tuple[float, float]]:
        return list(self.support)

    def mean(self) -> float:
        return math.fsum(value * prob for value, prob in self.support)

    def max_value(self) -> float:
        return self.support[-1][0]

    def quantile(self, u: np.ndarray) -> np.ndarray:
        values = np.array([value for value, _ in self.support])
        cumulative = np.cumsum([prob for _, prob in self.support])
        idx = np.searchsorted(cumulative, u, side="right")
        return values[np.minimum(idx, len(values) - 1)]


class PointDistribution(_FrozenModel):
    """Deterministic reward."""
    kind: Literal["point"] = "point"
    value: float = Field(ge=0.0, allow_inf_nan=False)

    @property
    def is_discrete(self) -> bool:
        return True

    def support_points(self) -> List[Tuple[float, float]]:
        return [(self.value, 1.0)]

    def mean(self) -> float:
        return self.value

    def max_value(self) -> float:
        return self.value

    def quantile(self, u: np.ndarray) -> np.ndarray:
        return np.full(np.shape(u), self.value, dtype=float)


class UniformDistribution(_FrozenModel):
    """Continuous uniform law on [lo, hi)."""
    kind: Literal["uniform"] = "uniform"
    lo: float = Field(ge=0.0, allow_inf_nan=False)
    hi: float = Field(allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_bounds(self) -> "UniformDistribution":
        if not self.hi > self.lo:
            raise ValueError(f"uniform requires hi > lo, got lo={self.lo}, hi={self.hi}")
        return self

    @property
    def is_discrete(self) -> bool:
        return False

    def support_points(self) -> List[Tuple[float, float]]:
        raise NotDiscreteError("uniform distribution has no finite support")

    def mean(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def max_value(self) -> float:
        return self.hi

    def quantile(self, u: np.ndarray) -> np.ndarray:
        return self.lo + (self.hi - self.lo) * np.asarray(u, dtype=float)


class ExponentialDistribution(_FrozenModel):
    """Exponential law with the given rate."""
    kind: Literal["exponential"] = "exponential"
    rate: float = Field(gt=0.0, allow_inf_nan=False)

    @property
    def is_discrete(self) -> bool:
        return False

    def support_points(self) -> List[Tuple[float, float]]:
        raise NotDiscreteError("exponential distribution has no finite support")

    def mean(self) -> float:
        return 1.0 / self.rate

    def max_value(self) -> float:
        return math.inf

    def quantile(self, u: np.ndarray) -> np.ndarray:
        return -np.log1p(-np.asarray(u, dtype=float)) / self.rate


Distribution = Annotated[
    Union[DiscreteDistribution, PointDistribution, UniformDistribution, ExponentialDistribution],
    Field(discriminator="kind"),
]


class Instance(_FrozenModel):
    """Ordered reward distributions, agent count and tie-breaking rule."""
    distributions: List[Distribution] = Field(min_length=1)
    num_agents: int = Field(ge=1)
    tie_rule: TieRule = TieRule.RANDOM

    @property
    def n(self) -> int:
        return len(self.distributions)

    @property
    def k(self) -> int:
        return self.num_agents

    @property
    def is_fully_discrete(self) -> bool:
        return all(dist.is_discrete for dist in self.distributions)

    def require_discrete(self) -> None:
        """Raise NotDiscreteError unless every distribution has finite support."""
        for t, dist in enumerate(self.distributions, start=1):
            if not dist.is_discrete:
                raise NotDiscreteError(
                    f"reward {t} has a continuous '{dist.kind}' distribution; exact computation needs discrete laws"
                )

    def support_size_product(self) -> int:
        self.require_discrete()
        return math.prod(len(dist.support_points()) for dist in self.distributions)

    def expected_values(self) -> List[float]:
        return [dist.mean() for dist in self.distributions]

    def with_agents(self, num_agents: int, tie_rule: Optional[TieRule] = None) -> "Instance":
        return self.model_copy(update={
            "num_agents": num_agents,
            "tie_rule": tie_rule or self.tie_rule,
        })


class Realization(_FrozenModel):
    """One joint draw v_1..v_n; probability is set only for fully discrete instances."""
    values: Tuple[float, ...]
    probability: Optional[float] = None


class OrderStatReport(_FrozenModel):
    """Estimates of E[y_j], the expected j-th largest reward, for j = 1..n."""
    expectations: List[float] = Field(min_length=1)
    method: EstimationMethod
    num_samples: int = Field(default=0, ge=0)
    std_errors: List[float]

    @model_validator(mode="after")
    def _check_shape(self) -> "OrderStatReport":
        if len(self.std_errors) != len(self.expectations):
            raise ValueError("std_errors and expectations differ in length")
        tol = get_settings().tolerance
        for j, value in enumerate(self.expectations):
            if value < -tol:
                raise ValueError(f"E[y_{j + 1}] is negative: {value}")
            if j and value > self.expectations[j - 1] + tol:
                raise ValueError("expectations must be non-increasing in j")
        if self.method == EstimationMethod.EXACT and any(self.std_errors):
            raise ValueError("exact reports carry zero std_errors")
        return self

    @property
    def n(self) -> int:
        return len(self.expectations)

    @classmethod
    def from_expectations(cls, expectations: List[float]) -> "OrderStatReport":
        """Exact report from already-known expectations."""
        return cls(
            expectations=list(expectations),
            method=EstimationMethod.EXACT,
            num_samples=0,
            std_errors=[0.0] * len(expectations),
        )
