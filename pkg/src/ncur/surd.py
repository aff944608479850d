"""Exact numbers of the form a + b*sqrt(k) with rational a, b and square-free k."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering

from .convex.linsys import as_fraction, fmt


def _square_free_split(n: int) -> tuple[int, int]:
    """n = s^2 * k with k square-free; returns (s, k)."""
    if n <= 0:
        raise ValueError("need a positive integer")
    s, k = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            k *= d
        d += 1
    return s, k * n


@total_ordering
class Surd:
    __slots__ = ("a", "b", "k")

    def __init__(self, a=0, b=0, k: int = 1):
        a = as_fraction(a)
        b = as_fraction(b)
        if k < 1:
            raise ValueError("radicand must be positive")
        s, kk = _square_free_split(k)
        b = b * s
        if kk == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            kk = 1
        self.a, self.b, self.k = a, b, kk

    @classmethod
    def sqrt(cls, q) -> "Surd":
        """Exact square root of a nonnegative rational."""
        q = as_fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls(0)
        num = q.numerator * q.denominator
        s, k = _square_free_split(num)
        return cls(0, Fraction(s, q.denominator), k)

    @staticmethod
    def lift(x) -> "Surd":
        return x if isinstance(x, Surd) else Surd(as_fraction(x))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def _common(self, other) -> int:
        if self.k == 1:
            return other.k
        if other.k == 1 or other.k == self.k:
            return self.k
        raise ValueError(f"mixed radicals sqrt({self.k}) and sqrt({other.k}) are not supported")

    def __add__(self, other):
        try:
            o = Surd.lift(other)
        except TypeError:
            return NotImplemented
        return Surd(self.a + o.a, self.b + o.b, self._common(o))

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.k)

    def __sub__(self, other):
        try:
            return self + (-Surd.lift(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = Surd.lift(other)
        except TypeError:
            return NotImplemented
        k = self._common(o)
        return Surd(self.a * o.a + self.b * o.b * k, self.a * o.b + self.b * o.a, k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Surd.lift(other)
        if o.b == 0:
            return Surd(self.a / o.a, self.b / o.a, self.k)
        # Multiply by the conjugate.
        k = self._common(o)
        den = o.a * o.a - o.b * o.b * k
        num = self * Surd(o.a, -o.b, k)
        return Surd(num.a / den, num.b / den, k)

    def __rtruediv__(self, other):
        return Surd.lift(other) / self

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # Opposite signs: compare a^2 with b^2 k.
        lhs, rhs = self.a * self.a, self.b * self.b * self.k
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        try:
            o = Surd.lift(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.k == o.k)

    def __lt__(self, other):
        try:
            return (self - other).sign() < 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.k))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.k)

    def __repr__(self):
        return f"Surd({fmt(self.a)!r}, {fmt(self.b)!r}, {self.k})"

    def __str__(self):
        if self.b == 0:
            return fmt(self.a)
        rad = f"sqrt({self.k})" if self.b == 1 else f"{fmt(self.b)}*sqrt({self.k})"
        if self.b == -1:
            rad = f"-sqrt({self.k})"
        if self.a == 0:
            return rad
        op = "-" if self.b < 0 and not rad.startswith("-") else "+"
        return f"{fmt(self.a)}{'' if rad.startswith('-') else op}{rad}"

    def to_dict(self) -> dict:
        return {"a": fmt(self.a), "b": fmt(self.b), "k": self.k, "float": float(self)}


def exact_json(x) -> dict | str:
    """JSON rendering for a Fraction or Surd value."""
    if isinstance(x, Surd):
        return x.to_dict()
    return fmt(as_fraction(x))


def to_surd_or_fraction(x):
    """Collapse rational Surds to Fraction so equality with plain numbers is natural."""
    if isinstance(x, Surd) and x.is_rational:
        return x.a
    return x
