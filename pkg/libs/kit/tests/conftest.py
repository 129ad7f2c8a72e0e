import math

import pytest

from cltscope_kit.dist_model import TwoPoint, MomentSummary, compute_moments

RED_BLACK_P = 18 / 38


@pytest.fixture
def exponential_moments() -> MomentSummary:
    """Exponential(1): skewness 2, excess kurtosis 6."""
    return MomentSummary(
        mu=1.0, sigma=1.0, skewness=2.0, excess_kurtosis=6.0, abs_third_std_moment=12 / math.e - 2
    )


@pytest.fixture
def income_moments() -> MomentSummary:
    return MomentSummary(mu=82.88, sigma=1.0, skewness=5.07, excess_kurtosis=33.81)


@pytest.fixture
def red_black() -> TwoPoint:
    return TwoPoint(v1=-1.0, v2=1.0, p=RED_BLACK_P)


@pytest.fixture
def red_black_moments(red_black) -> MomentSummary:
    return compute_moments(red_black)
