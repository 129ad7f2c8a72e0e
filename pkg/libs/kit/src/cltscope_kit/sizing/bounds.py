import math
from typing import Self

from pydantic import Field, model_validator

from cltscope_core.types import FrozenModel
from cltscope_core.errors import InvalidInputError, MissingMomentError

from ..rounding import sample_size_ceiling
from ..dist_model import FinitePMF, MomentSummary
from ..special_fns import std_normal_quantile
from ..expansions.edgeworth import check_n

DEFAULT_BERRY_ESSEEN_CONSTANT = 0.4748
# smallest constant attainable within the two-point family below
ESSEEN_CONSTANT = (3.0 + math.sqrt(10.0)) / (6.0 * math.sqrt(2.0 * math.pi))


class BerryEsseenBound(FrozenModel):
    c: float = Field(gt=0.0)
    rho: float = Field(gt=0.0)
    n: int = Field(ge=1)
    bound: float = Field(gt=0.0)

    @model_validator(mode="after")
    def _consistent(self) -> Self:
        expected = self.c * self.rho / math.sqrt(self.n)
        if not math.isclose(self.bound, expected, rel_tol=1e-12):
            raise ValueError(f"bound {self.bound} differs from c*rho/sqrt(n) = {expected}")
        return self


class WllnComparison(FrozenModel):
    clt_n: int
    chebyshev_n: int


def berry_esseen_bound(ms: MomentSummary, n: int, c: float | None = None) -> BerryEsseenBound:
    check_n(n)
    if ms.abs_third_std_moment is None:
        raise MissingMomentError("the Berry-Esseen bound needs the absolute third moment")
    if c is None:
        c = DEFAULT_BERRY_ESSEEN_CONSTANT
    if not c > 0.0:
        raise InvalidInputError(f"the Berry-Esseen constant must be positive, got {c}")

    rho = ms.abs_third_std_moment
    return BerryEsseenBound(c=c, rho=rho, n=n, bound=c * rho / math.sqrt(n))


def esseen_extremal(h: float) -> FinitePMF:
    """Two-point law attaining ``ESSEEN_CONSTANT``; it has mean zero for every span h."""
    if not (math.isfinite(h) and h > 0.0):
        raise InvalidInputError(f"span h must be positive, got {h}")

    root10 = math.sqrt(10.0)
    return FinitePMF(
        support=(-h * (4.0 - root10) / 2.0, h * (root10 - 2.0) / 2.0),
        probs=((root10 - 2.0) / 2.0, (4.0 - root10) / 2.0),
    )


def _check_wlln(p: float, half_width: float, target_prob: float) -> None:
    if not 0.0 < p < 1.0:
        raise InvalidInputError(f"p must lie in (0, 1), got {p}")
    if not 0.0 < half_width < min(p, 1.0 - p):
        raise InvalidInputError(
            f"half_width must lie in (0, min(p, 1 - p)) = (0, {min(p, 1.0 - p)}), got {half_width}"
        )
    if not 0.0 < target_prob < 1.0:
        raise InvalidInputError(f"target_prob must lie in (0, 1), got {target_prob}")


def wlln_clt_n(p: float, half_width: float, target_prob: float) -> int:
    """
    Least n with P(|p̂ − p| ≤ half_width) ≥ target_prob under the Normal
    approximation to the sample proportion.
    """
    _check_wlln(p, half_width, target_prob)
    z = std_normal_quantile((1.0 + target_prob) / 2.0)
    return sample_size_ceiling((z * math.sqrt(p * (1.0 - p)) / half_width) ** 2)


def chebyshev_wlln_n(p: float, half_width: float, target_prob: float) -> int:
    """The distribution-free count from Chebyshev's inequality."""
    _check_wlln(p, half_width, target_prob)
    return sample_size_ceiling(p * (1.0 - p) / (half_width**2 * (1.0 - target_prob)))


def wlln_comparison(p: float, half_width: float, target_prob: float) -> WllnComparison:
    return WllnComparison(
        clt_n=wlln_clt_n(p, half_width, target_prob),
        chebyshev_n=chebyshev_wlln_n(p, half_width, target_prob),
    )
