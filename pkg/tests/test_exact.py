from fractions import Fraction

import pytest

from joinery.exact import ONE, ZERO, ExactComplex, exact_sum, format_fraction, parse_fraction
from joinery.exceptions import FractionFormatError


@pytest.mark.parametrize(
    ('text', 'expected'),
    [('3/8', Fraction(3, 8)), ('-2', Fraction(-2)), (' 1 / 5 ', Fraction(1, 5)), (7, Fraction(7))],
)
def test_parse_fraction(text: object, expected: Fraction) -> None:
    assert parse_fraction(text) == expected


@pytest.mark.parametrize('text', ['0.5', '1e-3', '1/0', 'abc', True, 0.5, None])
def test_parse_fraction_rejects(text: object) -> None:
    with pytest.raises(FractionFormatError):
        parse_fraction(text)


def test_format_fraction_always_has_denominator() -> None:
    assert format_fraction(Fraction(2)) == '2/1'
    assert format_fraction(Fraction(-3, 6)) == '-1/2'


def test_gaussian_arithmetic() -> None:
    a = ExactComplex(1, 2)
    b = ExactComplex(3, -1)

    assert a * b == ExactComplex(5, 5)
    assert (a * b) / b == a
    assert a - b == ExactComplex(-2, 3)
    assert a + 1 == ExactComplex(2, 2)
    assert 1 - a == ExactComplex(0, -2)
    assert a.conjugate() == ExactComplex(1, -2)
    assert a.abs_sq() == 5  # noqa: PLR2004


def test_truth_and_str() -> None:
    assert not ZERO
    assert ONE
    assert str(ExactComplex(Fraction(1, 2), Fraction(-1, 3))) == '1/2-1/3i'
    assert str(ExactComplex(Fraction(1, 4))) == '1/4'


def test_exact_sum() -> None:
    values = [ExactComplex(Fraction(1, 3), 1), ExactComplex(Fraction(2, 3), -1)]

    assert exact_sum(values) == ONE
    assert exact_sum([]) == ZERO
