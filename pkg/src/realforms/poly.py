"""Multivariate polynomials over the real tower, with lex term order.

A `Poly` fixes a variable tuple (most significant first) and stores
{exponent tuple: coefficient}.  Exponent tuples compare lexicographically
exactly like Python tuples, so the leading term is `max(terms)`.

`CPoly` is a complex polynomial as a (re, im) pair of `Poly`s; it exists
so involution conditions can be expanded symbolically before splitting
into real equations.
"""

from __future__ import annotations

from ._backend import Rational, mono_mul
from .scalars import ComplexScalar, FieldScalar, _Tokens


def _as_field(c) -> FieldScalar | None:
    if isinstance(c, FieldScalar):
        return c
    if isinstance(c, (int, Rational)):
        return FieldScalar(c)
    if isinstance(c, ComplexScalar):
        return c.real_value()
    return None


class Poly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict | None = None):
        self.vars = vars
        self.terms = terms if terms is not None else {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars) -> "Poly":
        return cls(tuple(vars))

    @classmethod
    def const(cls, vars, c) -> "Poly":
        vars = tuple(vars)
        f = _as_field(c)
        if f is None:
            raise TypeError(f"bad constant {c!r}")
        if not f:
            return cls(vars)
        return cls(vars, {(0,) * len(vars): f})

    @classmethod
    def variable(cls, vars, name: str) -> "Poly":
        vars = tuple(vars)
        i = vars.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls(vars, {e: FieldScalar(1)})

    @classmethod
    def parse(cls, vars, text: str) -> "Poly":
        return _parse_poly(tuple(vars), text)

    # -- queries -------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> FieldScalar:
        if not self.terms:
            return FieldScalar(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def lead(self):
        """(exponent tuple, coefficient) of the lex-leading term."""
        e = max(self.terms)
        return e, self.terms[e]

    def variables_present(self) -> set[str]:
        out = set()
        for e in self.terms:
            for i, p in enumerate(e):
                if p:
                    out.add(self.vars[i])
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            if isinstance(other, (int, Rational, FieldScalar)):
                return self == Poly.const(self.vars, other)
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    # -- arithmetic ------------------------------------------------------------

    def _coerced(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ValueError("polynomials over different variable tuples")
            return other
        f = _as_field(other)
        if f is None:
            return None
        return Poly.const(self.vars, f)

    def __add__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        big, small = self.terms, o.terms
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        for e, c in small.items():
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                cur = cur + c
                if cur:
                    out[e] = cur
                else:
                    del out[e]
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

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
        if not self.terms or not o.terms:
            return Poly(self.vars)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = mono_mul(e1, e2)
                c = c1 * c2
                cur = out.get(e)
                if cur is None:
                    out[e] = c
                else:
                    out[e] = cur + c
        return Poly(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        f = _as_field(c)
        if not f:
            return Poly(self.vars)
        return Poly(self.vars, {e: f * v for e, v in self.terms.items()})

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        _, lc = self.lead()
        if lc == 1:
            return self
        return self.scale(lc.inverse())

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Poly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def term_mul(self, exps, coeff) -> "Poly":
        """Multiply by coeff * monomial(exps)."""
        return Poly(
            self.vars,
            {mono_mul(e, exps): c * coeff for e, c in self.terms.items()},
        )

    # -- substitution ------------------------------------------------------------

    def subs(self, mapping: dict) -> "Poly":
        """Substitute scalars or polynomials for variables by name."""
        idx = {self.vars.index(k): v for k, v in mapping.items()}
        out = Poly(self.vars)
        pow_cache: dict[tuple[int, int], Poly] = {}
        for e, c in self.terms.items():
            piece = Poly.const(self.vars, c)
            rest = list(e)
            for i, p in idx.items():
                k = e[i]
                if not k:
                    continue
                rest[i] = 0
                key = (i, k)
                f = pow_cache.get(key)
                if f is None:
                    base = p if isinstance(p, Poly) else Poly.const(self.vars, p)
                    f = base ** k
                    pow_cache[key] = f
                piece = piece * f
            piece = piece.term_mul(tuple(rest), FieldScalar(1))
            out = out + piece
        return out

    def evaluate(self, point: dict) -> FieldScalar:
        """Full evaluation; every present variable must be assigned."""
        acc = FieldScalar(0)
        for e, c in self.terms.items():
            v = c
            for i, p in enumerate(e):
                if p:
                    x = point[self.vars[i]]
                    for _ in range(p):
                        v = v * x
            acc = acc + v
        return acc

    def reorder(self, new_vars) -> "Poly":
        new_vars = tuple(new_vars)
        if sorted(new_vars) != sorted(self.vars):
            raise ValueError("reorder must permute the variable tuple")
        pos = [self.vars.index(v) for v in new_vars]
        return Poly(
            new_vars,
            {tuple(e[p] for p in pos): c for e, c in self.terms.items()},
        )

    # -- display --------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (f"{self.vars[i]}^{p}" if p > 1 else self.vars[i])
                for i, p in enumerate(e)
                if p
            )
            cs = str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                if " " in cs:
                    cs = f"({cs})"
                body = f"{cs}*{mono}"
            pieces.append(("-" if neg else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


# ---------------------------------------------------------------------------


class CPoly:
    """Complex polynomial split as re + i*im over a shared variable tuple."""

    __slots__ = ("re", "im")

    def __init__(self, re: Poly, im: Poly | None = None):
        self.re = re
        self.im = im if im is not None else Poly(re.vars)

    @classmethod
    def const(cls, vars, c: ComplexScalar) -> "CPoly":
        if not isinstance(c, ComplexScalar):
            c = ComplexScalar(c)
        return cls(Poly.const(vars, c.re), Poly.const(vars, c.im))

    @classmethod
    def variable(cls, vars, name: str) -> "CPoly":
        return cls(Poly.variable(vars, name))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def _coerced(self, other) -> "CPoly | None":
        if isinstance(other, CPoly):
            return other
        if isinstance(other, Poly):
            return CPoly(other)
        if isinstance(other, (int, Rational, FieldScalar, ComplexScalar)):
            return CPoly.const(self.re.vars, other)
        return None

    def __add__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return CPoly(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return CPoly(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return CPoly(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return CPoly(self.re * o.re)
        return CPoly(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "CPoly":
        return CPoly(self.re, -self.im)

    def __eq__(self, other) -> bool:
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        return f"({self.re}) + ({self.im})*i"

    def __repr__(self) -> str:
        return f"CPoly({str(self)!r})"


# ---------------------------------------------------------------------------
# parsing


def _parse_poly(vars: tuple[str, ...], text: str) -> Poly:
    tk = _Tokens(text)
    p = _p_expr(tk, vars)
    if tk.pos != len(tk.toks):
        raise ValueError(f"trailing input in polynomial: {text!r}")
    return p


def _p_expr(tk, vars) -> Poly:
    val = _p_term(tk, vars)
    while tk.peek() in ("+", "-"):
        op, _ = tk.next()
        rhs = _p_term(tk, vars)
        val = val + rhs if op == "+" else val - rhs
    return val


def _p_term(tk, vars) -> Poly:
    val = _p_unary(tk, vars)
    while tk.peek() in ("*", "/"):
        op, _ = tk.next()
        rhs = _p_unary(tk, vars)
        if op == "*":
            val = val * rhs
        else:
            if not rhs.is_constant():
                raise ValueError("polynomial division only by constants")
            val = val.scale(rhs.constant_value().inverse())
    return val


def _p_unary(tk, vars) -> Poly:
    if tk.peek() == "-":
        tk.next()
        return -_p_unary(tk, vars)
    if tk.peek() == "+":
        tk.next()
        return _p_unary(tk, vars)
    return _p_postfix(tk, vars)


def _p_postfix(tk, vars) -> Poly:
    val = _p_atom(tk, vars)
    while tk.peek() == "^":
        tk.next()
        kind, tok = tk.next()
        if kind != "int":
            raise ValueError("exponent must be a literal integer")
        val = val ** int(tok)
    return val


def _p_atom(tk, vars) -> Poly:
    kind, tok = tk.next()
    if kind == "int":
        return Poly.const(vars, int(tok))
    if kind == "(":
        val = _p_expr(tk, vars)
        tk.expect(")")
        return val
    if kind == "name":
        if tok in vars:
            return Poly.variable(vars, tok)
        if tok == "sqrt":
            tk.expect("(")
            arg = _p_expr(tk, vars)
            tk.expect(")")
            if not arg.is_constant():
                raise ValueError("sqrt of a non-constant polynomial")
            return Poly.const(vars, arg.constant_value().sqrt())
        raise ValueError(f"unknown variable {tok!r}")
    raise ValueError(f"unexpected token {tok!r} in polynomial")
