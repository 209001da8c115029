"""Exact Gaussian-rational scalars: a + b*i with arbitrary-precision rational a, b.

All coefficient arithmetic in this package runs over this field so that
equality (and hence zero-testing of residuals) is decidable.
"""

from __future__ import annotations

from fractions import Fraction


class GaussianRational:
    """Immutable exact complex scalar with Fraction real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = as_gaussian(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        other = as_gaussian(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_gaussian(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = as_gaussian(other)
        if other is None:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = as_gaussian(other)
        if other is None:
            return NotImplemented
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_gaussian(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero Gaussian rational")
        if not other.im:
            return GaussianRational(self.re / other.re, self.im / other.re)
        d = other.re * other.re + other.im * other.im
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = as_gaussian(other)
        if other is None:
            return NotImplemented
        return other / self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def as_gaussian(value):
    """Coerce int/Fraction/GaussianRational to GaussianRational, else None."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return None


def gaussian(re, im=0) -> GaussianRational:
    return GaussianRational(re, im)


def format_scalar(c: GaussianRational) -> str:
    """Render without surrounding parentheses: '3', '-1/2', '2i', 'i', '1+2i'."""
    if not c.im:
        return str(c.re)
    if c.im == 1:
        im_part = "i"
    elif c.im == -1:
        im_part = "-i"
    else:
        im_part = f"{c.im}i"
    if not c.re:
        return im_part
    sign = "+" if c.im > 0 else ""
    return f"{c.re}{sign}{im_part}"


def scalar_needs_parens(c: GaussianRational) -> bool:
    """True when the rendered form contains an interior +/- ('1+2i')."""
    return bool(c.re) and bool(c.im)
