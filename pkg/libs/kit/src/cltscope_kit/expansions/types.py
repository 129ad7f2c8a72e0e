from enum import StrEnum
from typing import Self, Literal

from pydantic import Field, FiniteFloat, model_validator

from cltscope_core.types import FrozenModel


class ApproxOrder(StrEnum):
    """Error order of an approximation to the law of the standardized mean."""

    ORDER_1 = "order1"
    ORDER_SQRT_N = "order-sqrt-n"
    ORDER_N = "order-n"


class KurtosisForm(StrEnum):
    """
    Which polynomial multiplies the excess kurtosis in the O(1/n) CDF term.

    ``HE3`` is the term of the Edgeworth series (−η He3/24, odd in z); it is the
    antiderivative of the O(1/n) density term. ``HE4`` (+η He4/24, even in z) is
    the variant under which the published sample-size tables were produced,
    kept so those tables can be reproduced.
    """

    HE3 = "he3"
    HE4 = "he4"


class ApproxQuery(FrozenModel):
    n: int = Field(ge=1)
    point: FiniteFloat
    scale: Literal["z", "p"] = "z"
    epsilon: float | None = Field(default=None, gt=0.0, lt=0.5)
    order: ApproxOrder = ApproxOrder.ORDER_N

    @model_validator(mode="after")
    def _point_on_scale(self) -> Self:
        if self.scale == "p" and not 0.0 < self.point < 1.0:
            raise ValueError(f"quantile-scale point must lie in (0, 1), got {self.point}")
        return self


class ApproxValue(FrozenModel):
    """A formal-expansion value; ``in_range`` is false for CDFs outside [0, 1] or negative PDFs."""

    value: float
    in_range: bool
