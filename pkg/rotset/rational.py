"""
Exact rational points of the plane.

Every coordinate is a fractions.Fraction, which keeps itself in lowest terms
with a positive denominator, so equal points compare and hash equal.
"""

from fractions import Fraction
from typing import NamedTuple

from .errors import ParseError


class Rational2(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y=None):
        """Build a point from two numbers, or from one (x, y) pair."""
        if y is None:
            x, y = x
        return cls(to_fraction(x), to_fraction(y))

    def __add__(self, other):
        return Rational2(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Rational2(self.x - other.x, self.y - other.y)

    def scaled(self, k):
        k = to_fraction(k)
        return Rational2(self.x * k, self.y * k)

    def dot(self, other):
        return self.x * other[0] + self.y * other[1]

    def norm2(self):
        return self.x * self.x + self.y * self.y

    def strings(self):
        return [fmt_fraction(self.x), fmt_fraction(self.y)]

    def __str__(self):
        return "(%s, %s)" % tuple(self.strings())


def to_fraction(value):
    """Convert ints, Fractions, exact floats and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError("expected a number, got a boolean")
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    raise ParseError("expected a number, got %r" % (value,))


def parse_fraction(text):
    text = text.strip()
    try:
        if "/" in text:
            p, q = text.split("/")
            q = int(q)
            if q == 0:
                raise ParseError("zero denominator in %r" % text)
            return Fraction(int(p), q)
        return Fraction(int(text))
    except ValueError:
        raise ParseError("not a rational number: %r" % text)


def fmt_fraction(q):
    """Always "p/q", including integers ("1/1") and zero ("0/1")."""
    q = Fraction(q)
    return "%d/%d" % (q.numerator, q.denominator)


def cross(o, a, b):
    """Twice the signed area of (o, a, b); positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def apply_matrix(L, p):
    (a, b), (c, d) = L
    return Rational2(a * p[0] + b * p[1], c * p[0] + d * p[1])
