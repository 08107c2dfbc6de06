"""Exact Gaussian-rational scalars.

A scalar is re + im*i with both parts arbitrary-precision rationals.  This is
the coefficient field for every other module; nothing downstream touches
floating point.  Fractions keep themselves in lowest terms with positive
denominators, so no extra normalization pass is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]

_F0 = Fraction(0)


@dataclass(frozen=True)
class Scalar:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(re: RationalLike = 0, im: RationalLike = 0) -> "Scalar":
        return Scalar(Fraction(re), Fraction(im))

    @staticmethod
    def rational(num: int, den: int = 1) -> "Scalar":
        return Scalar(Fraction(num, den))

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: "Scalar") -> "Scalar":
        # Purely real/imaginary factors dominate in practice; skip the dead
        # Fraction work for them.
        if self.im.numerator == 0:
            if other.im.numerator == 0:
                return Scalar(self.re * other.re, _F0)
            return Scalar(self.re * other.re, self.re * other.im)
        if other.im.numerator == 0:
            return Scalar(self.re * other.re, self.im * other.re)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "Scalar") -> "Scalar":
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return ONE / (self ** (-k))
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def scale_fraction(self, f: Fraction) -> "Scalar":
        return Scalar(self.re * f, self.im * f)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def to_json(self) -> dict:
        return {
            "re": [str(self.re.numerator), str(self.re.denominator)],
            "im": [str(self.im.numerator), str(self.im.denominator)],
        }

    @staticmethod
    def from_json(obj: dict) -> "Scalar":
        re = Fraction(int(obj["re"][0]), int(obj["re"][1]))
        im = Fraction(int(obj["im"][0]), int(obj["im"][1]))
        return Scalar(re, im)


ZERO = Scalar.of(0)
ONE = Scalar.of(1)
I = Scalar.of(0, 1)
