import math

import mpmath
import numpy as np
import pytest
from scipy import stats
from pydantic import ValidationError

from cltscope_core.errors import InvalidInputError
from cltscope_kit.special_fns import std_normal_pdf
from cltscope_kit.binomial_exact import (
    DeMoivreForm,
    CentralProbQuery,
    binomial_cdf,
    binomial_pmf,
    binomial_sf,
    demoivre_table,
    binomial_pmf_all,
    de_moivre_pmf_approx,
    central_binomial_prob,
    stirling_ln_factorial,
    de_moivre_central_approx,
)


def test_pmf_values():
    assert binomial_pmf(1, 0.3, 0) == pytest.approx(0.7, rel=1e-14)
    assert binomial_pmf(100, 0.5, 50) == pytest.approx(0.0796, abs=5e-5)
    assert binomial_pmf(40, 0.2, 9) == pytest.approx(stats.binom.pmf(9, 40, 0.2), rel=1e-12)


def test_pmf_sums_to_one():
    for n, p in ((1, 0.5), (37, 1 / 38), (2000, 1 / 38), (10_000, 18 / 38)):
        assert math.fsum(binomial_pmf_all(n, p)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(("n", "p"), [(2000, 1 / 38), (10_000, 1 / 38), (50_000, 0.001)])
def test_long_skewed_pmf_keeps_its_mass(n, p):
    pmf = binomial_pmf_all(n, p)

    assert abs(math.fsum(pmf) - 1.0) <= 1e-12
    assert pmf[12] == pytest.approx(stats.binom.pmf(12, n, p), rel=1e-9)


def test_cdf_is_monotone_and_complete():
    values = [binomial_cdf(30, 0.4, k) for k in range(31)]

    assert all(b >= a for a, b in zip(values, values[1:]))
    assert values[-1] == 1.0
    assert binomial_sf(30, 0.4, 12) == pytest.approx(1.0 - values[12], abs=1e-14)
    assert binomial_sf(30, 0.4, -1) == 1.0
    assert binomial_sf(30, 0.4, 30) == 0.0


def test_cdf_against_high_precision_sums():
    mpmath.mp.prec = 256
    n, p = 2000, mpmath.mpf(1) / 38
    for k in (0, 10, 25, 40, 52, 53, 60, 80, 120, 400):
        reference = mpmath.fsum(
            mpmath.binomial(n, j) * p**j * (1 - p) ** (n - j) for j in range(k + 1)
        )
        assert binomial_cdf(n, 1 / 38, k) == pytest.approx(float(reference), rel=1e-10)


@pytest.mark.parametrize("k", [-1, 11, 2.0, True])
def test_k_out_of_range(k):
    with pytest.raises(InvalidInputError):
        binomial_pmf(10, 0.5, k)


def test_bad_parameters():
    with pytest.raises(InvalidInputError):
        binomial_cdf(0, 0.5, 0)
    with pytest.raises(InvalidInputError):
        binomial_pmf_all(10, 1.0)


@pytest.mark.parametrize(("d", "expected"), [(0, 0.0796), (5, 0.7287), (9, 0.9431)])
def test_central_probability_published_values(d, expected):
    result = central_binomial_prob(CentralProbQuery(n=100, p=0.5, d=d))

    assert result.probability == pytest.approx(expected, abs=5e-5)
    assert result.center == 50
    assert not result.anchored


def test_central_probability_whole_window():
    result = central_binomial_prob(CentralProbQuery(n=100, p=0.3, d=70))

    assert result.probability == 1.0


def test_central_probability_anchoring():
    query = CentralProbQuery(n=10, p=0.25, d=1)

    with pytest.raises(InvalidInputError):
        central_binomial_prob(query)
    result = central_binomial_prob(query, allow_anchor=True)
    assert result.anchored
    assert result.center == 2
    assert result.probability == pytest.approx(
        sum(stats.binom.pmf(k, 10, 0.25) for k in (1, 2, 3)), rel=1e-12
    )


def test_window_must_fit():
    with pytest.raises(ValidationError):
        CentralProbQuery(n=10, p=0.5, d=6)


def test_de_moivre_central_approx():
    def query(d):
        return CentralProbQuery(n=100, p=0.5, d=d)

    assert de_moivre_central_approx(query(0)) == pytest.approx(0.0, abs=5e-5)
    assert de_moivre_central_approx(query(0), continuity_correction=True) == pytest.approx(
        0.0797, abs=5e-5
    )
    assert de_moivre_central_approx(query(5), continuity_correction=True) == pytest.approx(
        0.7287, abs=5e-5
    )


def test_continuity_correction_dominates():
    rows = demoivre_table(100, 0.5, 50)
    with_cc = max(abs(row.approx_cc - row.exact) for row in rows)
    without_cc = max(abs(row.approx_no_cc - row.exact) for row in rows)

    assert [row.d for row in rows] == list(range(51))
    assert with_cc < without_cc
    assert not any(row.anchored for row in rows)


def test_table_flags_a_fractional_mean():
    rows = demoivre_table(25, 0.3, 3)

    assert all(row.anchored for row in rows)
    # np = 7.5, so the window sits on 7
    assert rows[0].exact == pytest.approx(stats.binom.pmf(7, 25, 0.3), rel=1e-10)
    window = stats.binom.pmf(np.arange(6, 9), 25, 0.3).sum()
    assert rows[1].exact == pytest.approx(window, rel=1e-10)


def test_stirling():
    assert stirling_ln_factorial(10) == pytest.approx(15.0961, abs=1e-4)
    assert math.lgamma(11) - stirling_ln_factorial(10) == pytest.approx(0.0083, abs=1e-4)
    assert stirling_ln_factorial(1) == pytest.approx(-0.0811, abs=1e-4)

    sizes = (1, 10, 100, 1000)
    absolute = [math.lgamma(n + 1) - stirling_ln_factorial(n) for n in sizes]
    relative = [error / math.lgamma(n + 1) for error, n in zip(absolute[1:], sizes[1:])]
    assert absolute == sorted(absolute, reverse=True)
    assert relative == sorted(relative, reverse=True)
    with pytest.raises(InvalidInputError):
        stirling_ln_factorial(0)


def test_symmetric_form():
    value = de_moivre_pmf_approx(100, 0.5, 50, DeMoivreForm.SYMMETRIC)

    assert value == pytest.approx(1 / math.sqrt(50 * math.pi), rel=1e-14)
    assert value == pytest.approx(0.07979, abs=1e-5)
    with pytest.raises(InvalidInputError):
        de_moivre_pmf_approx(100, 0.3, 30, DeMoivreForm.SYMMETRIC)
    with pytest.raises(InvalidInputError):
        de_moivre_pmf_approx(101, 0.5, 50, DeMoivreForm.SYMMETRIC)


def test_general_form():
    general = DeMoivreForm.GENERAL
    exact = binomial_pmf(50, 0.3, 15)
    assert de_moivre_pmf_approx(50, 0.3, 15, general) == pytest.approx(exact, rel=0.02)

    ratios = [
        de_moivre_pmf_approx(20, 0.05, s, general) / binomial_pmf(20, 0.05, s) for s in range(21)
    ]
    worst = max(abs(ratio - 1.0) for ratio in ratios)
    assert worst > 0.10


@pytest.mark.parametrize(("n", "p"), [(100, 0.5), (1000, 0.3)])
def test_standardized_form_near_the_centre(n, p):
    sd = math.sqrt(n * p * (1 - p))
    for s in range(math.ceil(n * p - sd), math.floor(n * p + sd) + 1):
        approx = de_moivre_pmf_approx(n, p, s, DeMoivreForm.STANDARDIZED)
        assert approx == pytest.approx(sd * binomial_pmf(n, p, s), rel=0.02)
        assert approx == std_normal_pdf((s - n * p) / sd)


def test_log_form():
    value = de_moivre_pmf_approx(100, 0.5, 50, DeMoivreForm.LOG)

    assert np.exp(value) == pytest.approx(binomial_pmf(100, 0.5, 50), rel=0.02)
    with pytest.raises(InvalidInputError):
        de_moivre_pmf_approx(100, 0.5, 1, DeMoivreForm.LOG)
