"""Pure-Python arithmetic kernel.

Provides the same names as the compiled kernel so either can back the
package: an exact rational type plus tuple-monomial helpers used by the
polynomial layer.
"""

from fractions import Fraction as Rational

BACKEND = "pure"


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)
