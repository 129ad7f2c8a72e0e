"""
Exact Binomial probabilities and de Moivre's Normal approximations to them.

All mass is computed in log space from log-gamma and summed with
``math.fsum``; nothing here forms a factorial. The full PMF vector is
rescaled by its own fsum so it sums to one within a few ulps.
"""

import math
from enum import StrEnum
from typing import Self

import numpy as np
from scipy import special
from pydantic import Field, model_validator

from cltscope_core.types import FrozenModel
from cltscope_core.errors import InvalidInputError

from .special_fns import FloatArray, std_normal_cdf, std_normal_pdf

INTEGRALITY_TOLERANCE = 1e-9


class DeMoivreForm(StrEnum):
    SYMMETRIC = "symmetric"
    GENERAL = "general"
    STANDARDIZED = "standardized"
    LOG = "log"


class CentralProbQuery(FrozenModel):
    """P(|S_n − np| ≤ d) for S_n ~ Binomial(n, p)."""

    n: int = Field(ge=1)
    p: float = Field(gt=0.0, lt=1.0)
    d: int = Field(ge=0)

    @model_validator(mode="after")
    def _window_fits(self) -> Self:
        widest = max(self.n * self.p, self.n * (1.0 - self.p))
        if self.d > widest + INTEGRALITY_TOLERANCE:
            raise ValueError(f"d = {self.d} exceeds max(np, n(1 - p)) = {widest}")
        return self


class CentralProbability(FrozenModel):
    probability: float
    center: int
    anchored: bool


class DeMoivreRow(FrozenModel):
    d: int
    exact: float
    approx_no_cc: float
    approx_cc: float
    anchored: bool


def _check_np(n: int, p: float) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    if not 0.0 < p < 1.0:
        raise InvalidInputError(f"p must lie in (0, 1), got {p}")


def _check_k(n: int, k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 0 <= k <= n:
        raise InvalidInputError(f"k must be an integer in [0, {n}], got {k!r}")


def binomial_log_pmf_all(n: int, p: float) -> FloatArray:
    _check_np(n, p)
    k = np.arange(n + 1, dtype=np.float64)
    log_choose = special.gammaln(n + 1.0) - special.gammaln(k + 1.0) - special.gammaln(n - k + 1.0)
    return log_choose + special.xlogy(k, p) + special.xlog1py(n - k, -p)


def binomial_pmf_all(n: int, p: float) -> FloatArray:
    """Every P(S_n = k), rescaled so the fsum of the vector is 1 to rounding."""
    pmf = np.exp(binomial_log_pmf_all(n, p))
    return pmf / math.fsum(pmf)


def binomial_pmf(n: int, p: float, k: int) -> float:
    _check_np(n, p)
    _check_k(n, k)
    log_choose = special.gammaln(n + 1.0) - special.gammaln(k + 1.0) - special.gammaln(n - k + 1.0)
    return float(np.exp(log_choose + special.xlogy(k, p) + special.xlog1py(n - k, -p)))


def binomial_cdf(n: int, p: float, k: int) -> float:
    """P(S_n ≤ k)."""
    _check_np(n, p)
    _check_k(n, k)
    if k == n:
        return 1.0
    return min(1.0, math.fsum(binomial_pmf_all(n, p)[: k + 1]))


def binomial_sf(n: int, p: float, k: int) -> float:
    """P(S_n > k), summed over the upper tail directly; k may lie outside [0, n]."""
    _check_np(n, p)
    if k < 0:
        return 1.0
    if k >= n:
        return 0.0
    return min(1.0, math.fsum(binomial_pmf_all(n, p)[k + 1 :]))


def central_binomial_prob(q: CentralProbQuery, allow_anchor: bool = False) -> CentralProbability:
    """
    Exact P(a_n ≤ S_n ≤ b_n) with a_n = max(0, np − d), b_n = min(np + d, n).

    When np is not an integer the window is centred on floor(np), which must be
    allowed explicitly and is reported through ``anchored``.
    """
    mean = q.n * q.p
    nearest = round(mean)
    anchored = abs(mean - nearest) > INTEGRALITY_TOLERANCE
    if anchored and not allow_anchor:
        raise InvalidInputError(
            f"np = {mean} is not an integer; pass allow_anchor=True to centre on floor(np)"
        )
    center = math.floor(mean) if anchored else nearest

    low, high = max(0, center - q.d), min(center + q.d, q.n)
    if low == 0 and high == q.n:
        probability = 1.0
    else:
        probability = min(1.0, math.fsum(binomial_pmf_all(q.n, q.p)[low : high + 1]))
    return CentralProbability(probability=probability, center=center, anchored=anchored)


def de_moivre_central_approx(q: CentralProbQuery, continuity_correction: bool = False) -> float:
    """Φ(z) − Φ(−z) with z = d/√(np(1−p)), or (d + ½)/√(np(1−p)) with the correction."""
    half = 0.5 if continuity_correction else 0.0
    z = (q.d + half) / math.sqrt(q.n * q.p * (1.0 - q.p))
    return std_normal_cdf(z) - std_normal_cdf(-z)


def stirling_ln_factorial(n: int) -> float:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    return 0.5 * math.log(2.0 * math.pi * n) + n * math.log(n) - n


def de_moivre_pmf_approx(n: int, p: float, s_n: int, form: DeMoivreForm) -> float:
    """
    Historical approximations to P(S_n = s_n).

    SYMMETRIC    1/√(πm) exp(−d²/m) for p = ½, n = 2m, s_n = m + d
    GENERAL      exp(−d²/(2npq)) / √(2πnpq) with d = s_n − np
    STANDARDIZED φ((s_n − np)/√(npq)), the approximation to √(npq) P(S_n = s_n)
    LOG          the full large-sample expression for ln P(S_n = s_n); needs s_n ≥ 2
    """
    _check_np(n, p)
    _check_k(n, s_n)
    q = 1.0 - p
    npq = n * p * q

    match form:
        case DeMoivreForm.SYMMETRIC:
            if p != 0.5 or n % 2:
                raise InvalidInputError(
                    f"the symmetric form needs p = 0.5 and even n, got p={p}, n={n}"
                )
            m = n // 2
            d = s_n - m
            return math.exp(-d * d / m) / math.sqrt(math.pi * m)
        case DeMoivreForm.GENERAL:
            d = s_n - n * p
            return math.exp(-d * d / (2.0 * npq)) / math.sqrt(2.0 * math.pi * npq)
        case DeMoivreForm.STANDARDIZED:
            return std_normal_pdf((s_n - n * p) / math.sqrt(npq))
        case DeMoivreForm.LOG:
            if s_n < 2:
                raise InvalidInputError(f"the log form needs s_n >= 2, got {s_n}")
            return (
                (n + 0.5) * math.log(n)
                + s_n * math.log(p)
                + (n - s_n) * math.log(q)
                - 0.5 * math.log(2.0 * math.pi)
                - math.log(s_n)
                - (s_n - 0.5) * math.log(s_n - 1)
                - (n - s_n + 0.5) * math.log(n - s_n + 1)
            )
    raise InvalidInputError(f"unknown de Moivre form {form!r}")


def demoivre_table(n: int, p: float, d_max: int) -> list[DeMoivreRow]:
    """Exact central probabilities beside the Normal approximation without and with correction."""
    rows = []
    for d in range(d_max + 1):
        query = CentralProbQuery(n=n, p=p, d=d)
        exact = central_binomial_prob(query, allow_anchor=True)
        rows.append(
            DeMoivreRow(
                d=d,
                exact=exact.probability,
                approx_no_cc=de_moivre_central_approx(query, continuity_correction=False),
                approx_cc=de_moivre_central_approx(query, continuity_correction=True),
                anchored=exact.anchored,
            )
        )
    return rows
