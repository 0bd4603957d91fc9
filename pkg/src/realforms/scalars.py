"""Exact scalars over real multi-quadratic towers.

`FieldScalar` represents an element of Q(sqrt(d_1), ..., sqrt(d_k)) as a
finite sum  sum_r c_r * sqrt(r)  with squarefree integer radicands r >= 1
and nonzero rational coefficients c_r.  That map {r: c_r} is a canonical
form: square roots of distinct squarefree integers are linearly
independent over Q, so equality is dict equality and zero is the empty
map.  No global registry of adjoined roots is needed; products renormalise
radicands on the fly via sqrt(r)*sqrt(s) = g*sqrt((r/g)*(s/g)) with
g = gcd(r, s).

`ComplexScalar` is a pair of `FieldScalar`s (re, im).

All arithmetic is exact.  Sign queries on `FieldScalar` are decided by
adaptive rational interval refinement around integer square roots, which
terminates because a nonzero element has nonzero canonical form.
"""

from __future__ import annotations

import math

from ._backend import Rational
from .errors import FieldExtensionUnsupported

# ---------------------------------------------------------------------------
# integer factoring helpers (radicands only, so inputs stay modest)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic witness set for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 32):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"failed to factor {n}")


def _factorize(n: int) -> dict[int, int]:
    """Prime factorisation of n >= 1 as {prime: exponent}."""
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 41
    while d * d <= n and d < 100000:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        f = _pollard_rho(m)
        stack.extend((f, m // f))
    return out


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n >= 1 as s*s*f with f squarefree; returns (s, f)."""
    if n < 1:
        raise ValueError("expected a positive integer")
    s = f = 1
    for p, e in _factorize(n).items():
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    return s, f


def _least_prime_factor(n: int) -> int:
    return min(_factorize(n))


# ---------------------------------------------------------------------------


def _as_rational(x) -> Rational | None:
    if isinstance(x, Rational):
        return x
    if isinstance(x, int):
        return Rational(x)
    return None


class FieldScalar:
    """An element of a real multi-quadratic tower, in canonical form."""

    __slots__ = ("_terms",)

    def __init__(self, value=0):
        if isinstance(value, FieldScalar):
            self._terms = value._terms
            return
        r = _as_rational(value)
        if r is None:
            if isinstance(value, str):
                self._terms = parse_real(value)._terms
                return
            raise TypeError(f"cannot build a field scalar from {value!r}")
        self._terms = {1: r} if r else {}

    @classmethod
    def _make(cls, terms: dict) -> "FieldScalar":
        out = object.__new__(cls)
        out._terms = terms
        return out

    @classmethod
    def parse(cls, text: str) -> "FieldScalar":
        return parse_real(text)

    @classmethod
    def root_term(cls, radicand: int, coeff=1) -> "FieldScalar":
        """coeff * sqrt(radicand) for a positive integer radicand."""
        c = _as_rational(coeff)
        if c is None or radicand < 1:
            raise ValueError("root_term wants a positive radicand and rational coeff")
        if not c:
            return _F_ZERO
        s, f = squarefree_decompose(radicand)
        return cls._make({f: c * s})

    # -- structure queries ------------------------------------------------

    def terms(self):
        """Canonical (radicand, coefficient) pairs, radicands ascending."""
        return sorted(self._terms.items())

    def is_rational(self) -> bool:
        return all(r == 1 for r in self._terms)

    def rational_value(self) -> Rational:
        if not self._terms:
            return Rational(0)
        if self.is_rational():
            return self._terms[1]
        raise ValueError(f"{self} is not rational")

    def is_integer(self) -> bool:
        return self.is_rational() and (
            not self._terms or self._terms[1].denominator == 1
        )

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldScalar):
            return self._terms == other._terms
        r = _as_rational(other)
        if r is None:
            return NotImplemented
        if not r:
            return not self._terms
        return self._terms == {1: r}

    def __hash__(self):
        if self.is_rational():
            return hash(self._terms.get(1, 0))
        return hash(tuple(sorted(self._terms.items())))

    # -- ring operations --------------------------------------------------

    def _coerced(self, other) -> "FieldScalar | None":
        if isinstance(other, FieldScalar):
            return other
        r = _as_rational(other)
        if r is None:
            return None
        return FieldScalar._make({1: r} if r else {})

    def __add__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        big, small = (self._terms, o._terms)
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        for r, c in small.items():
            s = out.get(r)
            if s is None:
                out[r] = c
            else:
                s = s + c
                if s:
                    out[r] = s
                else:
                    del out[r]
        return FieldScalar._make(out)

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar._make({r: -c for r, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        a, b = self._terms, o._terms
        if not a or not b:
            return _F_ZERO
        out: dict = {}
        for r1, c1 in a.items():
            for r2, c2 in b.items():
                if r1 == 1:
                    t, c = r2, c1 * c2
                elif r2 == 1:
                    t, c = r1, c1 * c2
                else:
                    g = math.gcd(r1, r2)
                    t = (r1 // g) * (r2 // g)
                    c = c1 * c2 * g
                s = out.get(t)
                if s is None:
                    out[t] = c
                else:
                    out[t] = s + c
        return FieldScalar._make({r: c for r, c in out.items() if c})

    __rmul__ = __mul__

    def inverse(self) -> "FieldScalar":
        if not self._terms:
            raise ZeroDivisionError("field scalar is zero")
        if self.is_rational():
            return FieldScalar._make({1: 1 / self._terms[1]})
        # peel one prime at a time: with x = u + sqrt(p)*v, the product
        # x * conj_p(x) = u^2 - p*v^2 mentions one prime fewer, so recurse.
        p = min(_least_prime_factor(r) for r in self._terms if r > 1)
        conj = FieldScalar._make(
            {r: (-c if r % p == 0 else c) for r, c in self._terms.items()}
        )
        reduced = self * conj
        return conj * reduced.inverse()

    def __truediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            q = o.rational_value()
            if not q:
                raise ZeroDivisionError("field scalar is zero")
            return self * FieldScalar._make({1: 1 / q})
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = _F_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order ------------------------------------------------------------

    def _bounds(self, prec: int) -> tuple[Rational, Rational]:
        """Exact rational lo <= self <= hi with width <= sum|c_r| / 2**prec."""
        lo = hi = Rational(0)
        scale = 1 << prec
        sq = scale * scale
        for r, c in self._terms.items():
            if r == 1:
                lo += c
                hi += c
                continue
            m = math.isqrt(r * sq)
            rlo = Rational(m, scale)
            rhi = Rational(m + 1, scale)
            if c >= 0:
                lo += c * rlo
                hi += c * rhi
            else:
                lo += c * rhi
                hi += c * rlo
        return lo, hi

    def sign(self) -> int:
        if not self._terms:
            return 0
        if len(self._terms) == 1:
            ((_, c),) = self._terms.items()
            return 1 if c > 0 else -1
        prec = 16
        while True:
            lo, hi = self._bounds(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def __lt__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def abs_upper_int(self) -> int:
        """A cheap integer upper bound on |self|."""
        lo, hi = self._bounds(8)
        b = max(abs(lo), abs(hi))
        return -((-b.numerator) // b.denominator)

    # -- square roots -----------------------------------------------------

    def sqrt(self) -> "FieldScalar":
        """Exact square root of a positive rational element.

        Anything non-rational is rejected: its square root generally lives
        outside every multi-quadratic tower, and deciding the exceptions is
        out of scope.
        """
        if not self.is_rational():
            raise FieldExtensionUnsupported(
                f"cannot adjoin sqrt of non-rational {self}"
            )
        v = self.rational_value()
        if v <= 0:
            raise ValueError(f"sqrt argument must be positive, got {self}")
        p, q = v.numerator, v.denominator
        s, f = squarefree_decompose(p * q)
        return FieldScalar._make({f: Rational(s, q)})

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for r, c in sorted(self._terms.items()):
            num, den = c.numerator, c.denominator
            mag = abs(num)
            if r == 1:
                body = str(mag) if den == 1 else f"{mag}/{den}"
            elif mag == 1 and den == 1:
                body = f"sqrt({r})"
            elif den == 1:
                body = f"{mag}*sqrt({r})"
            else:
                body = f"{mag}/{den}*sqrt({r})"
            pieces.append(("-" if num < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"FieldScalar({str(self)!r})"


_F_ZERO = FieldScalar._make({})
_F_ONE = FieldScalar._make({1: Rational(1)})


def field_zero() -> FieldScalar:
    return _F_ZERO


def field_one() -> FieldScalar:
    return _F_ONE


class ComplexScalar:
    """re + im*i with both parts in the real tower."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, FieldScalar) else FieldScalar(re)
        self.im = im if isinstance(im, FieldScalar) else FieldScalar(im)

    @classmethod
    def parse(cls, text: str) -> "ComplexScalar":
        return parse_complex(text)

    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def real_value(self) -> FieldScalar:
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    @staticmethod
    def _coerced(other) -> "ComplexScalar | None":
        if isinstance(other, ComplexScalar):
            return other
        if isinstance(other, (FieldScalar, int, Rational)):
            return ComplexScalar(other)
        return None

    def __add__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return ComplexScalar(self.re * o.re)
        return ComplexScalar(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ComplexScalar":
        if not self:
            raise ZeroDivisionError("complex scalar is zero")
        if not self.im:
            return ComplexScalar(self.re.inverse())
        n = (self.re * self.re + self.im * self.im).inverse()
        return ComplexScalar(self.re * n, -(self.im * n))

    def __truediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = ComplexScalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def abs_upper_int(self) -> int:
        return self.re.abs_upper_int() + self.im.abs_upper_int()

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if self.im == 1:
            factor = "i"
        elif self.im == -1:
            factor = "-i"
        else:
            factor = f"({self.im})*i"
        if not self.re:
            return factor
        if factor == "-i":
            return f"{self.re} - i"
        return f"{self.re} + {factor}"

    def __repr__(self) -> str:
        return f"ComplexScalar({str(self)!r})"


C_ZERO = ComplexScalar(0)
C_ONE = ComplexScalar(1)
C_I = ComplexScalar(0, 1)


# ---------------------------------------------------------------------------
# parsing


class _Tokens:
    def __init__(self, text: str):
        self.toks: list[tuple[str, str]] = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.toks.append(("int", text[i:j]))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j]))
                i = j
            elif ch in "+-*/()^,":
                self.toks.append((ch, ch))
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r} in scalar")
        self.pos = 0

    def peek(self) -> str:
        return self.toks[self.pos][0] if self.pos < len(self.toks) else ""

    def next(self) -> tuple[str, str]:
        if self.pos >= len(self.toks):
            raise ValueError("unexpected end of scalar expression")
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str):
        k, v = self.next()
        if k != kind:
            raise ValueError(f"expected {kind!r}, got {v!r}")


def _parse_expr(tk: _Tokens) -> ComplexScalar:
    val = _parse_term(tk)
    while tk.peek() in ("+", "-"):
        op, _ = tk.next()
        rhs = _parse_term(tk)
        val = val + rhs if op == "+" else val - rhs
    return val


def _parse_term(tk: _Tokens) -> ComplexScalar:
    val = _parse_unary(tk)
    while tk.peek() in ("*", "/"):
        op, _ = tk.next()
        rhs = _parse_unary(tk)
        val = val * rhs if op == "*" else val / rhs
    return val


def _parse_unary(tk: _Tokens) -> ComplexScalar:
    if tk.peek() == "-":
        tk.next()
        return -_parse_unary(tk)
    if tk.peek() == "+":
        tk.next()
        return _parse_unary(tk)
    return _parse_postfix(tk)


def _parse_postfix(tk: _Tokens) -> ComplexScalar:
    val = _parse_atom(tk)
    if tk.peek() == "^":
        tk.next()
        kind, tok = tk.next()
        if kind != "int":
            raise ValueError("exponent must be a literal integer")
        val = val ** int(tok)
    return val


def _parse_atom(tk: _Tokens) -> ComplexScalar:
    kind, tok = tk.next()
    if kind == "int":
        return ComplexScalar(int(tok))
    if kind == "(":
        val = _parse_expr(tk)
        tk.expect(")")
        return val
    if kind == "name":
        if tok == "i":
            return C_I
        if tok == "sqrt":
            tk.expect("(")
            arg = _parse_expr(tk)
            tk.expect(")")
            if arg.im:
                raise ValueError("sqrt argument must be real")
            return ComplexScalar(arg.re.sqrt())
        raise ValueError(f"unknown name {tok!r} in scalar")
    raise ValueError(f"unexpected token {tok!r} in scalar")


def parse_complex(text: str) -> ComplexScalar:
    tk = _Tokens(text)
    val = _parse_expr(tk)
    if tk.pos != len(tk.toks):
        raise ValueError(f"trailing input in scalar: {text!r}")
    return val


def parse_real(text: str) -> FieldScalar:
    val = parse_complex(text)
    if val.im:
        raise ValueError(f"expected a real scalar, got {text!r}")
    return val.re
