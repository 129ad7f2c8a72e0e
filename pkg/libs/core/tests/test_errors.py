import pytest

from cltscope_core.errors import (
    ParseError,
    CltScopeError,
    NonLatticeError,
    InvalidInputError,
    UnsupportedDegreeError,
)


@pytest.mark.parametrize("error", [InvalidInputError, NonLatticeError, UnsupportedDegreeError])
def test_domain_errors_are_value_errors(error):
    assert issubclass(error, CltScopeError)
    assert issubclass(error, ValueError)


def test_unsupported_degree_is_an_input_error():
    assert issubclass(UnsupportedDegreeError, InvalidInputError)


def test_parse_error_carries_location():
    error = ParseError("data/income.csv", 7, "not a number: 'abc'")

    assert error.path == "data/income.csv"
    assert error.line == 7
    assert str(error) == "data/income.csv:7: not a number: 'abc'"
