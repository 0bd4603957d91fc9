"""Groebner bases over the real scalar tower, lex order.

The systems produced by the involution pipeline are mostly linear, so
`groebner` first eliminates linear equations by exact row reduction and
only runs Buchberger's algorithm on the residue.  The eliminated
variables are re-attached afterwards, keeping the result the unique
reduced basis of the original ideal.

Buchberger's loop prunes S-pairs with the product criterion (coprime
leading monomials) and the chain criterion.
"""

from __future__ import annotations

import heapq

from ._backend import mono_deg, mono_divides, mono_div, mono_lcm, mono_mul
from .poly import Poly
from .scalars import FieldScalar


def normal_form(p: Poly, basis: list[Poly]) -> Poly:
    """Fully reduce p modulo basis (every term, not just the lead)."""
    if not basis:
        return p
    leads = [(g.lead(), g) for g in basis if g]
    out: dict = {}
    work = dict(p.terms)
    while work:
        t = max(work)
        c = work.pop(t)
        for (le, lc), g in leads:
            if mono_divides(le, t):
                # work -= (c/lc) * mono(t-le) * g; the lead cancels exactly
                f = c * lc.inverse()
                m = mono_div(t, le)
                for e2, c2 in g.terms.items():
                    e = mono_mul(m, e2)
                    if e == t:
                        continue
                    cur = work.get(e)
                    v = (cur - f * c2) if cur is not None else -(f * c2)
                    if v:
                        work[e] = v
                    elif cur is not None:
                        del work[e]
                break
        else:
            out[t] = c
    return Poly(p.vars, out)


def s_polynomial(f: Poly, g: Poly) -> Poly:
    ef, cf = f.lead()
    eg, cg = g.lead()
    l = mono_lcm(ef, eg)
    return f.term_mul(mono_div(l, ef), cf.inverse()) - g.term_mul(
        mono_div(l, eg), cg.inverse()
    )


def interreduce(basis: list[Poly]) -> list[Poly]:
    """Reduce each element by the others until stable; sort canonically.

    Applied to any Groebner basis this yields the unique reduced basis.
    """
    work = [g.monic() for g in basis if g]
    changed = True
    while changed:
        changed = False
        nxt: list[Poly] = []
        for i, g in enumerate(work):
            others = nxt + work[i + 1 :]
            r = normal_form(g, others)
            if r != g:
                changed = True
            if r:
                nxt.append(r.monic())
        work = nxt
    work.sort(key=lambda g: g.lead()[0], reverse=True)
    return work


def _buchberger(gens: list[Poly]) -> list[Poly]:
    basis = [g.monic() for g in gens if g]
    if not basis:
        return []
    pending: set[tuple[int, int]] = set()
    heap: list[tuple[int, tuple, int, int]] = []

    def push_pairs(j: int):
        ej = basis[j].lead()[0]
        for i in range(j):
            l = mono_lcm(basis[i].lead()[0], ej)
            heapq.heappush(heap, (mono_deg(l), l, i, j))
            pending.add((i, j))

    for j in range(1, len(basis)):
        push_pairs(j)

    while heap:
        _, l, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        ei = basis[i].lead()[0]
        ej = basis[j].lead()[0]
        if mono_mul(ei, ej) == l:
            continue  # coprime leads: S-poly reduces to zero
        chained = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if not mono_divides(basis[k].lead()[0], l):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                chained = True
                break
        if chained:
            continue
        r = normal_form(s_polynomial(basis[i], basis[j]), basis)
        if r:
            basis.append(r.monic())
            push_pairs(len(basis) - 1)
    return basis


def _linear_row(p: Poly, width: int):
    """Coefficient vector (vars then constant) for a degree <= 1 poly."""
    row = [FieldScalar(0)] * (width + 1)
    for e, c in p.terms.items():
        d = mono_deg(e)
        if d == 0:
            row[width] = c
        else:
            row[e.index(1)] = c
    return row


def eliminate_linear(gens: list[Poly]):
    """Solve off the linear part of the system.

    Returns (subst, rest, inconsistent) where subst maps eliminated
    variable names to polynomials in the surviving variables, rest is
    the substituted nonlinear residue, and inconsistent flags a
    contradictory constant.  Substitution can linearise higher-degree
    generators, so the pass loops to a fixed point.
    """
    if not gens:
        return {}, [], False
    vars = gens[0].vars
    width = len(vars)
    subst: dict[str, Poly] = {}
    work = [g for g in gens if g]
    while True:
        linear = []
        rest = []
        for g in work:
            if g.degree() <= 1:
                linear.append(g)
            else:
                rest.append(g)
        if not linear:
            return subst, rest, False
        rows = [_linear_row(g, width) for g in linear]
        pivots: dict[int, list] = {}
        for row in rows:
            for col in sorted(pivots):
                if row[col]:
                    f = row[col]
                    prow = pivots[col]
                    for t in range(col, width + 1):
                        if prow[t]:
                            row[t] = row[t] - f * prow[t]
            lead = next((t for t in range(width) if row[t]), None)
            if lead is None:
                if row[width]:
                    return subst, [Poly.const(vars, 1)], True
                continue
            inv = row[lead].inverse()
            prow = [v * inv for v in row]
            for col, other in pivots.items():
                if other[lead]:
                    f = other[lead]
                    for t in range(lead, width + 1):
                        if prow[t]:
                            other[t] = other[t] - f * prow[t]
            pivots[lead] = prow
        if not pivots:
            return subst, rest, False
        step: dict[str, Poly] = {}
        for col, prow in pivots.items():
            terms: dict = {}
            for t in range(col + 1, width):
                if prow[t]:
                    e = tuple(1 if u == t else 0 for u in range(width))
                    terms[e] = -prow[t]
            if prow[width]:
                terms[(0,) * width] = -prow[width]
            step[vars[col]] = Poly(vars, terms)
        for v in subst:
            subst[v] = subst[v].subs(step)
        subst.update(step)
        work = []
        for g in rest:
            r = g.subs(step)
            if r:
                work.append(r)
        if not work:
            return subst, [], False


def groebner(gens: list[Poly]) -> list[Poly]:
    """Unique reduced Groebner basis of the ideal generated by gens."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    vars = gens[0].vars
    for g in gens:
        if g.is_constant():
            return [Poly.const(vars, 1)]
    subst, rest, bad = eliminate_linear(gens)
    if bad:
        return [Poly.const(vars, 1)]
    core = interreduce(_buchberger(interreduce(rest)))
    if core and core[0].is_constant():
        return [Poly.const(vars, 1)]
    combined = list(core)
    for name, value in subst.items():
        tail = normal_form(value, core)
        combined.append(Poly.variable(vars, name) - tail)
    return interreduce(combined)


def ideal_equal(gens_a: list[Poly], gens_b: list[Poly]) -> bool:
    """Whether two generating sets span the same ideal (same reduced basis)."""
    return groebner(gens_a) == groebner(gens_b)


def is_groebner_basis(basis: list[Poly]) -> bool:
    """Check Buchberger's criterion directly; used by tests."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if normal_form(s_polynomial(basis[i], basis[j]), basis):
                return False
    return True
