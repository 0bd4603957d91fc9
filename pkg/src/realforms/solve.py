"""Exact solution of the polynomial systems behind involution transport.

`solve_system` handles the zero-dimensional case by back substitution
through the lex basis, adjoining square roots of positive rationals as
needed.  Systems with free parameters are reported as parametric rather
than enumerated; `split_cases` specialises a parametric basis by
adjoining extra equations (the usual move is pinning one coordinate to
a sample value and re-solving).

`charpoly_mod_ideal` computes the characteristic polynomial of a
symbolic matrix with entries reduced modulo an ideal, which is how a
candidate automorphism family is tested for a uniform eigenvalue
structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContractViolation, FieldExtensionUnsupported
from .groebner import groebner, normal_form
from .poly import CPoly, Poly
from .scalars import FieldScalar


# ---------------------------------------------------------------------------
# univariate helpers (coefficient lists, ascending degree)


def _uni_from_poly(p: Poly, idx: int) -> list[FieldScalar]:
    coeffs: list[FieldScalar] = []
    for e, c in p.terms.items():
        d = e[idx]
        while len(coeffs) <= d:
            coeffs.append(FieldScalar(0))
        coeffs[d] = coeffs[d] + c
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _uni_monic(u: list[FieldScalar]) -> list[FieldScalar]:
    if not u:
        return u
    inv = u[-1].inverse()
    return [c * inv for c in u]


def _uni_rem(a: list[FieldScalar], b: list[FieldScalar]) -> list[FieldScalar]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv = lb.inverse()
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        f = a[-1] * inv
        for i in range(db + 1):
            a[da - db + i] = a[da - db + i] - f * b[i]
        while a and not a[-1]:
            a.pop()
    return a


def _uni_gcd(a: list[FieldScalar], b: list[FieldScalar]) -> list[FieldScalar]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _uni_rem(a, b)
    return _uni_monic(a)


def _uni_derivative(u: list[FieldScalar]) -> list[FieldScalar]:
    return [c * k for k, c in enumerate(u) if k]


def _uni_div_linear(u: list[FieldScalar], r: FieldScalar) -> list[FieldScalar]:
    """Divide u by (t - r); remainder must vanish."""
    out = [FieldScalar(0)] * (len(u) - 1)
    carry = FieldScalar(0)
    for k in range(len(u) - 1, 0, -1):
        carry = u[k] + carry
        out[k - 1] = carry
        carry = carry * r
    if u[0] + carry:
        raise ContractViolation("inexact deflation in univariate solve")
    return out


def _uni_eval(u: list[FieldScalar], x: FieldScalar) -> FieldScalar:
    acc = FieldScalar(0)
    for c in reversed(u):
        acc = acc * x + c
    return acc


def univariate_roots(u: list[FieldScalar]) -> list[FieldScalar]:
    """All real roots of u in the scalar tower (multiplicity dropped).

    Raises FieldExtensionUnsupported when a root would need an
    extension the tower cannot express.
    """
    u = _uni_monic(list(u))
    if len(u) <= 1:
        raise ValueError("constant polynomial has no root set")
    g = _uni_gcd(u, _uni_derivative(u))
    if len(g) > 1:
        u = _uni_monic(_uni_quot(u, g))  # square-free part
    return _roots_squarefree(u)


def _uni_quot(a: list[FieldScalar], b: list[FieldScalar]) -> list[FieldScalar]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv = lb.inverse()
    out = [FieldScalar(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        f = a[-1] * inv
        out[da - db] = f
        for i in range(db + 1):
            a[da - db + i] = a[da - db + i] - f * b[i]
        while a and not a[-1]:
            a.pop()
    return out


def _roots_squarefree(u: list[FieldScalar]) -> list[FieldScalar]:
    deg = len(u) - 1
    if deg == 0:
        return []
    if u[0] == 0:
        rest = u[1:]
        roots = [FieldScalar(0)]
        if len(rest) > 1:
            roots += _roots_squarefree(_uni_monic(rest))
        return sorted(set(roots), key=str)
    if deg == 1:
        return [-u[0]]
    if deg == 2:
        from ._backend import Rational

        b, c = u[1], u[0]
        disc = b * b - FieldScalar(4) * c
        s = disc.sign()
        half = FieldScalar(Rational(1, 2))
        if s < 0:
            return []
        if s == 0:
            return [-b * half]
        root = disc.sqrt()
        return sorted({(-b + root) * half, (-b - root) * half}, key=str)
    # rational candidate roots for towers that stay rational
    if all(c.is_rational() for c in u):
        found = _rational_root(u)
        if found is not None:
            rest = _uni_div_linear(u, found)
            out = [found]
            if len(rest) > 1:
                out += _roots_squarefree(_uni_monic(rest))
            return sorted(set(out), key=str)
    # even polynomial: substitute t = v^2
    if all(not c or k % 2 == 0 for k, c in enumerate(u)):
        sub = [c for k, c in enumerate(u) if k % 2 == 0]
        out: list[FieldScalar] = []
        for t0 in _roots_squarefree(_uni_monic(sub)):
            s = t0.sign()
            if s < 0:
                continue
            if s == 0:
                out.append(FieldScalar(0))
            else:
                r = t0.sqrt()
                out += [r, -r]
        return sorted(set(out), key=str)
    raise FieldExtensionUnsupported(
        "no expressible root for univariate factor of degree "
        f"{deg}: {[str(c) for c in u]}"
    )


def _rational_root(u: list[FieldScalar]) -> FieldScalar | None:
    from math import lcm

    from ._backend import Rational

    # clear denominators so the integer rational-root bound applies
    scale = 1
    for c in u:
        scale = lcm(scale, c.rational_value().denominator)
    ints = []
    for c in u:
        r = c.rational_value()
        ints.append(r.numerator * (scale // r.denominator))
    p0, q0 = ints[0], ints[-1]

    def divisors(n: int):
        n = abs(n)
        out = set()
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.add(i)
                out.add(n // i)
            i += 1
        return out

    for p in sorted(divisors(p0)):
        for q in sorted(divisors(q0)):
            for s in (1, -1):
                cand = FieldScalar(Rational(s * p, q))
                if not _uni_eval(u, cand):
                    return cand
    return None


# ---------------------------------------------------------------------------
# system solving


@dataclass
class SolutionSet:
    """Outcome of solving a polynomial system over the tower."""

    kind: str  # "finite" | "parametric" | "inconsistent"
    basis: list = field(default_factory=list)
    points: list = field(default_factory=list)  # list of {var: FieldScalar}
    free_vars: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "basis": [str(g) for g in self.basis],
            "points": [
                {v: str(c) for v, c in sorted(p.items())} for p in self.points
            ],
            "free_vars": list(self.free_vars),
        }


def is_zero_dimensional(basis: list[Poly]) -> bool:
    """Lex criterion: every variable carries a pure-power leading term."""
    if not basis:
        return False
    nv = len(basis[0].vars)
    covered = [False] * nv
    for g in basis:
        e = g.lead()[0]
        nz = [i for i, p in enumerate(e) if p]
        if len(nz) == 1:
            covered[nz[0]] = True
    return all(covered)


def free_variables(basis: list[Poly]) -> list[str]:
    if not basis:
        return []
    nv = len(basis[0].vars)
    covered = [False] * nv
    for g in basis:
        e = g.lead()[0]
        nz = [i for i, p in enumerate(e) if p]
        if len(nz) == 1:
            covered[nz[0]] = True
    return [basis[0].vars[i] for i in range(nv) if not covered[i]]


def solve_system(gens: list[Poly]) -> SolutionSet:
    """Reduced basis plus full enumeration when zero dimensional."""
    basis = groebner(gens)
    if basis and basis[0].is_constant():
        return SolutionSet("inconsistent", basis=basis)
    if not basis:
        vars = gens[0].vars if gens else ()
        return SolutionSet("parametric", basis=[], free_vars=list(vars))
    if not is_zero_dimensional(basis):
        return SolutionSet(
            "parametric", basis=basis, free_vars=free_variables(basis)
        )
    vars = basis[0].vars
    points: list[dict] = []
    _back_substitute(basis, vars, len(vars) - 1, {}, points)
    for pt in points:
        for g in basis:
            if g.evaluate(pt):
                raise ContractViolation(
                    f"candidate point fails generator {g}"
                )
    points.sort(key=lambda p: tuple(str(p[v]) for v in vars))
    return SolutionSet("finite", basis=basis, points=points)


def _back_substitute(basis, vars, vidx, assign, out):
    if vidx < 0:
        out.append(dict(assign))
        return
    v = vars[vidx]
    allowed = set(vars[vidx:])
    cands: list[list[FieldScalar]] = []
    for g in basis:
        present = g.variables_present()
        if v not in present or not present <= allowed:
            continue
        spec = g.subs({w: assign[w] for w in present if w in assign})
        if not spec:
            continue
        coeffs = _uni_from_poly(spec, vidx)
        if len(coeffs) > 1:
            cands.append(coeffs)
        else:
            return  # contradictory constant on this branch
    if not cands:
        raise ContractViolation(
            f"no univariate constraint for {v} in a zero-dimensional basis"
        )
    merged = cands[0]
    for other in cands[1:]:
        merged = _uni_gcd(merged, other)
        if len(merged) <= 1:
            return
    for root in univariate_roots(merged):
        assign[v] = root
        _back_substitute(basis, vars, vidx - 1, assign, out)
        del assign[v]


def split_cases(basis: list[Poly], extra: list[Poly]) -> list[Poly]:
    """Reduced basis of the ideal refined by extra equations."""
    return groebner(list(basis) + list(extra))


# ---------------------------------------------------------------------------
# characteristic polynomial modulo an ideal


@dataclass
class CharpolyResult:
    """det(T*I - A) with entries of A reduced modulo a basis."""

    parameter_free: bool
    coeffs: list  # FieldScalar list, descending powers, when parameter free
    raw: list  # string forms of the reduced coefficients, always

    def eigenvalue_multiplicities(self):
        """(a, b) with charpoly = (T-1)^a (T+1)^b, or None otherwise."""
        if not self.parameter_free:
            return None
        u = list(reversed(self.coeffs))  # ascending
        one = FieldScalar(1)
        a = b = 0
        while len(u) > 1 and not _uni_eval(u, one):
            u = _uni_div_linear(u, one)
            a += 1
        m_one = -one
        while len(u) > 1 and not _uni_eval(u, m_one):
            u = _uni_div_linear(u, m_one)
            b += 1
        if len(u) == 1 and u[0] == 1:
            return a, b
        return None


def charpoly_mod_ideal(entries: list[list[CPoly]], basis: list[Poly]) -> CharpolyResult:
    from .linalg import berkowitz_charpoly

    def reduce_c(p):
        if not isinstance(p, CPoly):
            return p  # int constants from empty sums are already reduced
        return CPoly(normal_form(p.re, basis), normal_form(p.im, basis))

    vars = entries[0][0].re.vars
    coeffs = [
        c if isinstance(c, CPoly) else CPoly.const(vars, c)
        for c in berkowitz_charpoly(entries, reduce=reduce_c)
    ]
    raw = [str(c) for c in coeffs]
    vals: list[FieldScalar] = []
    for c in coeffs:
        if not c.re.is_constant() or not c.im.is_constant():
            return CharpolyResult(False, [], raw)
        if c.im:
            return CharpolyResult(False, [], raw)
        vals.append(c.re.constant_value())
    return CharpolyResult(True, vals, raw)
