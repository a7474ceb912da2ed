"""Exact scalars: rationals written as ``"p/q"`` strings and Gaussian rationals."""

import re
from fractions import Fraction
from typing import Self

from attrs import define, field

from joinery.exceptions import FractionFormatError

type Number = int | Fraction | ExactComplex

_FRACTION_PATTERN = re.compile(r'^\s*[+-]?\d+(\s*/\s*\d+)?\s*$')


def parse_fraction(text: object) -> Fraction:
    """Parse a decimal-free fraction string such as ``"3/8"`` or ``"-2"``."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not _FRACTION_PATTERN.match(text):
        raise FractionFormatError(text=str(text))
    try:
        return Fraction(text.replace(' ', ''))
    except ZeroDivisionError:
        raise FractionFormatError(text=text) from None


def format_fraction(value: Fraction) -> str:
    return f'{value.numerator}/{value.denominator}'


def _as_fraction(value: int | Fraction) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@define(frozen=True)
class ExactComplex:
    re: Fraction = field(default=Fraction(0), converter=_as_fraction)
    im: Fraction = field(default=Fraction(0), converter=_as_fraction)

    @classmethod
    def coerce(cls, value: Number) -> 'ExactComplex':
        if isinstance(value, ExactComplex):
            return value
        return cls(value)

    def conjugate(self) -> Self:
        return type(self)(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __neg__(self) -> Self:
        return type(self)(-self.re, -self.im)

    def __add__(self, other: object) -> 'ExactComplex':
        if isinstance(other, ExactComplex):
            return ExactComplex(self.re + other.re, self.im + other.im)
        if isinstance(other, int | Fraction):
            return ExactComplex(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: object) -> 'ExactComplex':
        if isinstance(other, ExactComplex):
            return ExactComplex(self.re - other.re, self.im - other.im)
        if isinstance(other, int | Fraction):
            return ExactComplex(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other: object) -> 'ExactComplex':
        if isinstance(other, int | Fraction):
            return ExactComplex(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other: object) -> 'ExactComplex':
        if isinstance(other, ExactComplex):
            return ExactComplex(
                self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re
            )
        if isinstance(other, int | Fraction):
            return ExactComplex(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> 'ExactComplex':
        if isinstance(other, ExactComplex):
            norm = other.abs_sq()
            product = self * other.conjugate()
            return ExactComplex(product.re / norm, product.im / norm)
        if isinstance(other, int | Fraction):
            return ExactComplex(self.re / other, self.im / other)
        return NotImplemented

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if not self.im:
            return format_fraction(self.re)
        sign = '+' if self.im >= 0 else '-'
        return f'{format_fraction(self.re)}{sign}{format_fraction(abs(self.im))}i'


ZERO = ExactComplex()
ONE = ExactComplex(1)


def exact_sum(values: 'list[ExactComplex] | tuple[ExactComplex, ...]') -> ExactComplex:
    re_part = sum((value.re for value in values), Fraction(0))
    im_part = sum((value.im for value in values), Fraction(0))
    return ExactComplex(re_part, im_part)
