import pytest

from cltscope_core.errors import InvalidInputError
from cltscope_kit.dist_model import compute_moments
from cltscope_kit.case_studies import income_surrogate
from cltscope_kit.case_studies.surrogate import DEFAULT_SIZE


def test_default_surrogate_hits_targets():
    population = income_surrogate()
    ms = compute_moments(population)

    assert len(population.values) == DEFAULT_SIZE
    assert ms.mu == pytest.approx(82.88, rel=1e-12)
    assert ms.skewness == pytest.approx(5.07, abs=1e-6)
    assert ms.excess_kurtosis > ms.skewness**2 - 2
    assert min(population.values) > 0.0


def test_surrogate_is_deterministic():
    assert income_surrogate(size=200, target_skewness=3.0) == income_surrogate(
        size=200, target_skewness=3.0
    )


def test_custom_targets():
    ms = compute_moments(income_surrogate(size=300, target_skewness=2.5, mean=10.0))
    assert ms.mu == pytest.approx(10.0, rel=1e-12)
    assert ms.skewness == pytest.approx(2.5, abs=1e-6)


@pytest.mark.parametrize(
    "kwargs",
    [{"size": 10}, {"mean": 0.0}, {"target_skewness": -1.0}, {"target_skewness": 1000.0}],
)
def test_surrogate_rejects_bad_targets(kwargs):
    with pytest.raises(InvalidInputError):
        income_surrogate(**kwargs)
