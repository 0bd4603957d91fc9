# cython: language_level=3
"""Compiled arithmetic kernel.

Mirrors `_kernel_py`: an exact rational type plus tuple-monomial helpers.
Numerator and denominator are Python ints, so magnitude is unbounded; the
win over `fractions.Fraction` is lean dispatch and gcd-reduced products.
"""

import math
import sys

BACKEND = "compiled"

_gcd = math.gcd
_HASH_MODULUS = sys.hash_info.modulus
_HASH_INF = sys.hash_info.inf


cdef inline Rational _new(object num, object den):
    cdef Rational r = Rational.__new__(Rational)
    r.num = num
    r.den = den
    return r


cdef inline object _coerce(object x):
    # returns a Rational, or None when x is not rational-like
    if isinstance(x, Rational):
        return x
    if isinstance(x, int):
        return _new(x, 1)
    return None


cdef class Rational:
    """num/den in lowest terms, den > 0."""

    cdef readonly object num
    cdef readonly object den

    def __init__(self, num=0, den=1):
        if isinstance(num, Rational):
            if den != 1:
                raise TypeError("denominator given with a rational numerator")
            self.num = (<Rational>num).num
            self.den = (<Rational>num).den
            return
        if not isinstance(num, int):
            numerator = getattr(num, "numerator", None)
            if numerator is None:
                raise TypeError(f"cannot build a rational from {num!r}")
            den = den * num.denominator
            num = numerator
        if not isinstance(den, int):
            num = num * den.denominator
            den = den.numerator
        if den == 0:
            raise ZeroDivisionError("rational with zero denominator")
        if den < 0:
            num, den = -num, -den
        g = _gcd(num, den)
        if g > 1:
            num //= g
            den //= g
        self.num = num
        self.den = den

    @property
    def numerator(self):
        return self.num

    @property
    def denominator(self):
        return self.den

    def __bool__(self):
        return self.num != 0

    def __neg__(self):
        return _new(-self.num, self.den)

    def __pos__(self):
        return self

    def __abs__(self):
        return _new(-self.num, self.den) if self.num < 0 else self

    def __add__(self, other):
        cdef Rational a = _coerce(self), b = _coerce(other)
        if a is None or b is None:
            return NotImplemented
        g = _gcd(a.den, b.den)
        if g == 1:
            return _new(a.num * b.den + b.num * a.den, a.den * b.den)
        s = a.den // g
        t = a.num * (b.den // g) + b.num * s
        g2 = _gcd(t, g)
        if g2 == 1:
            return _new(t, s * b.den)
        return _new(t // g2, s * (b.den // g2))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        cdef Rational b = _coerce(other)
        if b is None:
            return NotImplemented
        return self.__add__(_new(-b.num, b.den))

    def __rsub__(self, other):
        cdef Rational b = _coerce(other)
        if b is None:
            return NotImplemented
        return b.__add__(_new(-self.num, self.den))

    def __mul__(self, other):
        cdef Rational a = _coerce(self), b = _coerce(other)
        if a is None or b is None:
            return NotImplemented
        na, da = a.num, a.den
        nb, db = b.num, b.den
        g1 = _gcd(na, db)
        if g1 > 1:
            na //= g1
            db //= g1
        g2 = _gcd(nb, da)
        if g2 > 1:
            nb //= g2
            da //= g2
        return _new(na * nb, da * db)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        cdef Rational b = _coerce(other)
        if b is None:
            return NotImplemented
        if b.num == 0:
            raise ZeroDivisionError("division by zero rational")
        if b.num < 0:
            return self.__mul__(_new(-b.den, -b.num))
        return self.__mul__(_new(b.den, b.num))

    def __rtruediv__(self, other):
        cdef Rational b = _coerce(other)
        if b is None:
            return NotImplemented
        if self.num == 0:
            raise ZeroDivisionError("division by zero rational")
        if self.num < 0:
            return b.__mul__(_new(-self.den, -self.num))
        return b.__mul__(_new(self.den, self.num))

    def __pow__(self, n, mod):
        if mod is not None or not isinstance(n, int):
            return NotImplemented
        if n >= 0:
            return _new(self.num ** n, self.den ** n)
        if self.num == 0:
            raise ZeroDivisionError("zero rational to a negative power")
        if self.num < 0:
            return _new((-self.den) ** (-n), (-self.num) ** (-n))
        return _new(self.den ** (-n), self.num ** (-n))

    def __eq__(self, other):
        cdef Rational b = _coerce(other)
        if b is None:
            return NotImplemented
        return self.num == b.num and self.den == b.den

    def __lt__(self, other):
        cdef Rational b = _coerce(other)
        if b is None:
            return NotImplemented
        return self.num * b.den < b.num * self.den

    def __le__(self, other):
        cdef Rational b = _coerce(other)
        if b is None:
            return NotImplemented
        return self.num * b.den <= b.num * self.den

    def __gt__(self, other):
        cdef Rational b = _coerce(other)
        if b is None:
            return NotImplemented
        return self.num * b.den > b.num * self.den

    def __ge__(self, other):
        cdef Rational b = _coerce(other)
        if b is None:
            return NotImplemented
        return self.num * b.den >= b.num * self.den

    def __hash__(self):
        # same value as fractions.Fraction / int for equal numbers
        if self.den == 1:
            return hash(self.num)
        try:
            dinv = pow(self.den, -1, _HASH_MODULUS)
        except ValueError:
            h = _HASH_INF
        else:
            h = hash(hash(abs(self.num)) * dinv)
        result = h if self.num >= 0 else -h
        return -2 if result == -1 else result

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"Rational({self.num}, {self.den})"

    def __reduce__(self):
        return (Rational, (self.num, self.den))


def mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = a[i] + b[i]
    return tuple(out)


def mono_divides(tuple a, tuple b):
    """True when monomial a divides monomial b."""
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if a[i] > b[i]:
            return False
    return True


def mono_div(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = a[i] - b[i]
    return tuple(out)


def mono_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = a[i] if a[i] >= b[i] else b[i]
    return tuple(out)


def mono_deg(tuple a):
    cdef Py_ssize_t i, n = len(a)
    total = 0
    for i in range(n):
        total += a[i]
    return total
