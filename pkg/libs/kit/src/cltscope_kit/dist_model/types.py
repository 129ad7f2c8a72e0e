import math
from typing import Self, Literal, Annotated

import numpy as np
from pydantic import Field, FiniteFloat, model_validator

from cltscope_core.types import FrozenModel

from ..special_fns import FloatArray

FEASIBILITY_TOLERANCE = 1e-9
PROBABILITY_SUM_TOLERANCE = 1e-12


class MomentSummary(FrozenModel):
    """
    The cumulant fingerprint of a sampling distribution.

    ``mu`` and ``sigma`` are in observation units; ``skewness`` (λ),
    ``excess_kurtosis`` (η) and ``abs_third_std_moment`` (ρ) are standardized.
    """

    mu: FiniteFloat
    sigma: FiniteFloat = Field(gt=0)
    skewness: FiniteFloat
    excess_kurtosis: FiniteFloat | None = None
    abs_third_std_moment: FiniteFloat | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _feasible(self) -> Self:
        lam = self.skewness
        slack = FEASIBILITY_TOLERANCE * (1.0 + lam * lam)
        if self.excess_kurtosis is not None and self.excess_kurtosis < lam * lam - 2.0 - slack:
            raise ValueError(
                f"excess_kurtosis {self.excess_kurtosis} violates the bound "
                f"skewness^2 - 2 = {lam * lam - 2.0}"
            )
        rho = self.abs_third_std_moment
        if rho is not None and rho < abs(lam) - FEASIBILITY_TOLERANCE * (1.0 + abs(lam)):
            raise ValueError(f"abs_third_std_moment {rho} is below |skewness| = {abs(lam)}")
        return self


class FinitePopulation(FrozenModel):
    """Observed values treated as a population: each value carries weight 1/N."""

    kind: Literal["population"] = "population"
    values: tuple[FiniteFloat, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def _two_distinct(self) -> Self:
        if len(set(self.values)) < 2:
            raise ValueError("a finite population needs at least 2 distinct values")
        return self

    def atoms(self) -> tuple[FloatArray, FloatArray]:
        support, counts = np.unique(np.asarray(self.values, dtype=np.float64), return_counts=True)
        return support, counts / len(self.values)


class FinitePMF(FrozenModel):
    kind: Literal["pmf"] = "pmf"
    support: tuple[FiniteFloat, ...] = Field(min_length=1)
    probs: tuple[FiniteFloat, ...]

    @model_validator(mode="after")
    def _valid_pmf(self) -> Self:
        if len(self.probs) != len(self.support):
            raise ValueError(
                f"support has {len(self.support)} points but probs has {len(self.probs)}"
            )
        if any(b <= a for a, b in zip(self.support, self.support[1:])):
            raise ValueError("support must be strictly increasing")
        if any(p < 0.0 for p in self.probs):
            raise ValueError("probabilities must be non-negative")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > PROBABILITY_SUM_TOLERANCE:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        return self

    def atoms(self) -> tuple[FloatArray, FloatArray]:
        return np.asarray(self.support, dtype=np.float64), np.asarray(self.probs, dtype=np.float64)


class TwoPoint(FrozenModel):
    """Y = v2 with probability p, otherwise v1."""

    kind: Literal["two_point"] = "two_point"
    v1: FiniteFloat
    v2: FiniteFloat
    p: float = Field(gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def _ordered(self) -> Self:
        if not self.v1 < self.v2:
            raise ValueError(f"two-point law needs v1 < v2, got v1={self.v1}, v2={self.v2}")
        return self

    def atoms(self) -> tuple[FloatArray, FloatArray]:
        return np.array([self.v1, self.v2]), np.array([1.0 - self.p, self.p])


DistributionSpec = Annotated[FinitePopulation | FinitePMF | TwoPoint, Field(discriminator="kind")]


class LatticeSpec(FrozenModel):
    """Minimal lattice {a + k h_max} in observation units and in standardized units."""

    a: FiniteFloat
    h_max: FiniteFloat = Field(gt=0)
    a_star: FiniteFloat
    h_star: FiniteFloat = Field(gt=0)
