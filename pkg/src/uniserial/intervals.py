"""Certified rational interval arithmetic.

All bounds are exact Fractions, so strict inequalities certified against an
interval hold mathematically, not merely in floating point.  Rational powers
are bracketed through integer nth roots at a fixed denominator scale.
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_SCALE = 10**12


def integer_nth_root(x: int, n: int) -> int:
    """Largest r with r**n <= x, for x >= 0, n >= 1."""
    if x < 0:
        raise ValueError("negative radicand")
    if x in (0, 1) or n == 1:
        return x
    r = 1 << (-(-x.bit_length() // n))  # initial overestimate
    while True:
        nxt = ((n - 1) * r + x // r ** (n - 1)) // n
        if nxt >= r:
            break
        r = nxt
    while r**n > x:
        r -= 1
    return r


def nth_root_bounds(x: Fraction, n: int, scale: int = DEFAULT_SCALE):
    """(lo, hi) Fractions with lo <= x**(1/n) < hi and hi - lo = 1/scale."""
    if x < 0:
        raise ValueError("negative radicand")
    t = (x.numerator * scale**n) // x.denominator
    r = integer_nth_root(t, n)
    return Fraction(r, scale), Fraction(r + 1, scale)


class RatInterval:
    """A closed interval with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if hi < lo:
            raise ValueError("empty interval")
        self.lo = lo
        self.hi = hi

    @classmethod
    def exact(cls, value):
        return cls(Fraction(value))

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other):
        other = _coerce(other)
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __mul__(self, other):
        other = _coerce(other)
        prods = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return RatInterval(min(prods), max(prods))

    __rmul__ = __mul__

    def reciprocal(self):
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval straddles zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return _coerce(other) * self.reciprocal()

    def pow_rational(self, exponent: Fraction, scale: int = DEFAULT_SCALE) -> "RatInterval":
        """Interval for x**exponent over the interval; requires x > 0."""
        exponent = Fraction(exponent)
        if self.lo <= 0:
            raise ValueError("base interval must be positive")
        if exponent < 0:
            # reciprocate first: it is exact on rational endpoints, while
            # reciprocating after the root would amplify the root's width
            return self.reciprocal().pow_rational(-exponent, scale)
        if exponent == 0:
            return RatInterval(1)
        p, q = exponent.numerator, exponent.denominator
        lo_p = self.lo**p
        hi_p = self.hi**p
        if q == 1:
            return RatInterval(lo_p, hi_p)
        lo_lo, _ = nth_root_bounds(lo_p, q, scale)
        _, hi_hi = nth_root_bounds(hi_p, q, scale)
        return RatInterval(lo_lo, hi_hi)

    def strictly_less_than(self, other) -> bool:
        """Certified: every value here is below every value there."""
        other = _coerce(other)
        return self.hi < other.lo

    def strictly_greater_than(self, other) -> bool:
        other = _coerce(other)
        return self.lo > other.hi

    def at_least(self, bound) -> bool:
        return self.lo >= Fraction(bound)

    def __contains__(self, value):
        value = Fraction(value)
        return self.lo <= value <= self.hi

    def __float__(self):
        return float(self.midpoint())

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _coerce(value) -> RatInterval:
    if isinstance(value, RatInterval):
        return value
    return RatInterval(Fraction(value))
