from typing import Iterable

from pydantic import Field

from cltscope_core.types import FrozenModel
from cltscope_core.errors import InvalidInputError

from .quartic import n3_star, n34_star
from ..dist_model import MomentSummary
from ..expansions import KurtosisForm
from ..special_fns import std_normal_quantile


class SampleSizeCell(FrozenModel):
    """One (ε, quantile) cell of a sample-size matrix."""

    epsilon: float = Field(gt=0.0, lt=0.5)
    p: float = Field(gt=0.0, lt=1.0)
    z: float
    n3: int = Field(ge=1)
    n34: int = Field(ge=1)


def sample_size_table(
    ms: MomentSummary,
    epsilons: Iterable[float],
    probabilities: Iterable[float],
    form: KurtosisForm = KurtosisForm.HE4,
) -> list[SampleSizeCell]:
    """n₃* and n₃₄* at z = Φ⁻¹(p) for every (ε, p) pair, ε-major."""
    probabilities = list(probabilities)
    for p in probabilities:
        if not 0.0 < p < 1.0:
            raise InvalidInputError(f"quantile level must lie in (0, 1), got {p}")

    cells = []
    for epsilon in epsilons:
        for p in probabilities:
            z = float(std_normal_quantile(p))
            cells.append(
                SampleSizeCell(
                    epsilon=epsilon,
                    p=p,
                    z=z,
                    n3=n3_star(z, epsilon, ms.skewness),
                    n34=n34_star(z, epsilon, ms, form),
                )
            )
    return cells
