"""Embedding pipeline: balance, involution equations, real-form reports.

Input: an embedding of a semisimple algebra into a larger one, given by
the images of a canonical generating set (Cartan images inside the
target Cartan), plus an involution theta on the source picking out the
real form of interest.  Output: the involutions of the target that
extend theta through the embedding, and the real forms they cut out.

Stages:

 1. extend the generator images to the full source basis and verify the
    result is an injective homomorphism;
 2. make the embedding balanced (compact form into compact form), by a
    diagonal rescaling when that suffices, else by re-solving for the
    root-vector images;
 3. compute the space of maps intertwining ad(eps theta) with ad(eps)
    and write the unknown involution as a combination of its basis with
    complex coefficients split into real unknowns;
 4. impose square = identity, the automorphism condition, and
    commutation with the compact conjugation, as real polynomials;
 5. solve; each point yields a verified involution and a real form.
    An infinite family is classified through the characteristic
    polynomial of the combination reduced modulo the ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._backend import Rational
from .algebra import LieAlgebra, scalar_vector, vector_strings
from .errors import ContractViolation
from .forms import (
    CompactCoordinates,
    Involution,
    RealFormReport,
    classify_real_form,
    real_form_from_involution,
    tau_apply,
    verify_automorphism,
)
from .groebner import groebner
from .linalg import SpanTracker, SpMat
from .modules import ModuleRep, end_rho_phi_basis
from .poly import CPoly, Poly
from .scalars import C_ONE, ComplexScalar, FieldScalar
from .solve import CharpolyResult, SolutionSet, charpoly_mod_ideal, solve_system, split_cases


def _cvec(v) -> list:
    return [c if isinstance(c, ComplexScalar) else ComplexScalar(c) for c in v]


class Embedding:
    """Images of a canonical generating set of the source in the target."""

    def __init__(self, source: LieAlgebra, target: LieAlgebra, g_images, x_images, y_images):
        self.source = source
        self.target = target
        self.g_images = [_cvec(v) for v in g_images]
        self.x_images = [_cvec(v) for v in x_images]
        self.y_images = [_cvec(v) for v in y_images]
        self._matrix: SpMat | None = None

    @property
    def matrix(self) -> SpMat:
        """The embedding on the full source basis, extended by brackets."""
        if self._matrix is None:
            self._matrix = extend_embedding(self)
        return self._matrix

    def apply(self, v) -> list:
        return self.matrix.matvec(v)

    def verify(self) -> None:
        """Canonical relations, Cartan containment, injective homomorphism."""
        src, tgt = self.source, self.target
        if not (len(self.g_images) == len(self.x_images) == len(self.y_images) == src.rank):
            raise ContractViolation("image lists do not match the source rank")
        for v in self.g_images + self.x_images + self.y_images:
            if len(v) != tgt.dim:
                raise ContractViolation("image vector length does not match the target")
        tgt.verify_canonical(self.g_images, self.x_images, self.y_images, src.rs.cartan)
        for i, v in enumerate(self.g_images):
            for k in range(tgt.rank, tgt.dim):
                if v[k]:
                    raise ContractViolation(
                        f"image of source coroot {i + 1} leaves the target Cartan"
                    )
        m = self.matrix  # extension verifies bracket preservation
        tracker = SpanTracker(tgt.dim)
        for j in range(src.dim):
            if tracker.add(m.matvec(src.basis_vector(j))) is None:
                raise ContractViolation("embedding is not injective")

    def to_json_dict(self) -> dict:
        return {
            "source": self.source.type_name,
            "target": self.target.type_name,
            "images": {
                "g": [vector_strings(v) for v in self.g_images],
                "x": [vector_strings(v) for v in self.x_images],
                "y": [vector_strings(v) for v in self.y_images],
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict, verify: str = "auto") -> "Embedding":
        def build(spec):
            return LieAlgebra.build(spec, verify=verify)

        src = build(data["source"])
        tgt = build(data["target"])
        images = data["images"]
        g = [scalar_vector(tgt, v) for v in images["g"]]
        x = [scalar_vector(tgt, v) for v in images["x"]]
        y = [scalar_vector(tgt, v) for v in images["y"]]
        return cls(src, tgt, g, x, y)


def extend_embedding(eps: Embedding) -> SpMat:
    """Matrix of the embedding on the whole source basis.

    Non-simple root vector images are forced: if gamma = alpha_i + delta
    then the image of x_gamma is [img x_i, img x_delta] / N, with N the
    source structure constant.  The result is checked to preserve every
    bracket of source basis pairs.
    """
    src, tgt = eps.source, eps.target
    rs = src.rs
    rank, npos = rs.rank, rs.npos
    simple_slot = {
        tuple(1 if j == i else 0 for j in range(rank)): i for i in range(rank)
    }
    pos_img: list = [None] * npos
    neg_img: list = [None] * npos
    for idx, gamma in enumerate(rs.positive):
        if sum(gamma) == 1:
            i = simple_slot[gamma]
            pos_img[idx] = eps.x_images[i]
            neg_img[idx] = eps.y_images[i]
            continue
        for i in range(rank):
            alpha = tuple(1 if j == i else 0 for j in range(rank))
            delta = rs.sub(gamma, alpha)
            if delta in rs.root_index:
                break
        else:
            raise ContractViolation(f"no simple lowering for positive root {gamma}")
        d_idx = rs.root_index[delta]
        xi = rank + rs.root_index[alpha]
        xd = rank + d_idx
        n = src.bracket(src.basis_vector(xi), src.basis_vector(xd))[rank + idx]
        if not n:
            raise ContractViolation(f"vanishing structure constant along {gamma}")
        cinv = ComplexScalar(FieldScalar(Rational(1, n)))
        pos_img[idx] = [c * cinv for c in tgt.bracket(pos_img[rs.root_index[alpha]], pos_img[d_idx])]
        yi = rank + npos + rs.root_index[alpha]
        yd = rank + npos + d_idx
        n2 = src.bracket(src.basis_vector(yi), src.basis_vector(yd))[rank + npos + idx]
        cinv2 = ComplexScalar(FieldScalar(Rational(1, n2)))
        neg_img[idx] = [c * cinv2 for c in tgt.bracket(neg_img[rs.root_index[alpha]], neg_img[d_idx])]
    m = SpMat(tgt.dim, src.dim)
    cols = list(eps.g_images) + pos_img + neg_img
    for j, col in enumerate(cols):
        for p, c in enumerate(col):
            if c:
                m.rows[p][j] = c
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            lhs = m.matvec(src.bracket(src.basis_vector(i), src.basis_vector(j)))
            rhs = tgt.bracket(cols[i], cols[j])
            if any((a - b) for a, b in zip(lhs, rhs)):
                raise ContractViolation(
                    "embedding does not preserve the bracket on source pair "
                    f"({src.labels[i]}, {src.labels[j]})"
                )
    return m


# ---------------------------------------------------------------------------
# branching data and the balanced condition


@dataclass
class BranchingData:
    """Root-vector image coefficients per source simple root.

    support[i] lists the target positive roots (by index) carrying the
    images of x_i and y_i; a and b hold the coefficients on the positive
    and negative side, mu = b / conj(a) where a is nonzero.
    """

    support: dict
    a: dict
    b: dict
    mu: dict


def branching(eps: Embedding) -> BranchingData:
    tgt = eps.target
    rank_t, npos = tgt.rank, tgt.rs.npos
    support: dict = {}
    a: dict = {}
    b: dict = {}
    mu: dict = {}
    for i in range(eps.source.rank):
        xv, yv = eps.x_images[i], eps.y_images[i]
        for p, c in enumerate(xv):
            if c and not (rank_t <= p < rank_t + npos):
                raise ContractViolation(
                    f"x-image {i + 1} is supported outside the positive root vectors"
                )
        for p, c in enumerate(yv):
            if c and p < rank_t + npos:
                raise ContractViolation(
                    f"y-image {i + 1} is supported outside the negative root vectors"
                )
        betas = []
        for bi in range(npos):
            ca = xv[rank_t + bi]
            cb = yv[rank_t + npos + bi]
            if not ca and not cb:
                continue
            betas.append(bi)
            a[(i, bi)] = ca
            b[(i, bi)] = cb
            if ca:
                mu[(i, bi)] = cb * ca.conjugate().inverse()
        support[i] = tuple(betas)
    return BranchingData(support, a, b, mu)


def is_balanced(eps: Embedding) -> tuple[bool, list]:
    """Whether all coefficient pairs satisfy b = conj(a), with witnesses."""
    bd = branching(eps)
    witnesses = []
    for i in sorted(bd.support):
        for bi in bd.support[i]:
            ca, cb = bd.a[(i, bi)], bd.b[(i, bi)]
            if cb != ca.conjugate():
                witnesses.append(
                    {
                        "alpha": i + 1,
                        "beta": list(eps.target.rs.positive[bi]),
                        "a": str(ca),
                        "b": str(cb),
                        "mu": str(bd.mu[(i, bi)]) if (i, bi) in bd.mu else None,
                    }
                )
    return not witnesses, witnesses


def weight_support(eps: Embedding, i: int) -> list[int]:
    """Positive target roots whose vectors share the weight of x_i.

    The weight is taken under ad of the Cartan images; this can be
    larger than the observed support when a coefficient vanishes.
    """
    src, tgt = eps.source, eps.target
    out = []
    for bi, beta in enumerate(tgt.rs.positive):
        ok = True
        for ip in range(src.rank):
            g = eps.g_images[ip]
            w = sum(
                (g[t] * tgt.rs.pairing(beta, t) for t in range(tgt.rank)), start=0
            )
            if w - src.rs.cartan[ip][i]:
                ok = False
                break
        if ok:
            out.append(bi)
    return out


# ---------------------------------------------------------------------------
# balancing: diagonal rescaling shortcut, then the full system


@dataclass
class RescaleResult:
    ok: bool
    embedding: "Embedding | None"
    phi: "SpMat | None"
    deltas: list
    basis_strings: list
    reason: str


def rescaling_trick(eps: Embedding) -> RescaleResult:
    """Repair balance by scaling target simple-root vectors.

    Each coefficient pair demands delta_beta^2 = conj(a)/b, a monomial
    condition in the simple scalings.  Succeeds when the reduced basis
    of those conditions pins every constrained scaling to a positive
    rational square; unconstrained scalings stay 1.
    """
    bd = branching(eps)
    tgt = eps.target
    rank_t = tgt.rank
    vars = tuple(f"d{j + 1}" for j in range(rank_t))
    gens = []
    for key in sorted(bd.a):
        ca, cb = bd.a[key], bd.b[key]
        if (not ca) != (not cb):
            return RescaleResult(
                False, None, None, [], [],
                "a coefficient pair with exactly one zero cannot be rescaled",
            )
        ratio = ca.conjugate() * cb.inverse()
        if ratio.im:
            i, bi = key
            return RescaleResult(
                False, None, None, [], [],
                f"conj(a)/b is not real on pair ({i + 1}, {list(tgt.rs.positive[bi])})",
            )
        beta = tgt.rs.positive[key[1]]
        exps = tuple(2 * e for e in beta)
        gens.append(Poly(vars, {exps: FieldScalar(1)}) - ratio.re)
    basis = groebner(gens)
    strings = [str(g) for g in basis]
    if basis and basis[0].is_constant():
        return RescaleResult(False, None, None, [], strings, "scaling conditions are inconsistent")
    squares: list = [None] * rank_t
    for g in basis:
        e, _ = g.lead()
        nz = [(j, p) for j, p in enumerate(e) if p]
        tail = g - Poly(vars, {e: g.lead()[1]})
        if len(nz) != 1 or nz[0][1] != 2 or not tail.is_constant():
            return RescaleResult(
                False, None, None, [], strings,
                "scaling conditions do not reduce to pure squares",
            )
        j = nz[0][0]
        r = -tail.constant_value()
        if not r.is_rational() or r.sign() <= 0:
            return RescaleResult(
                False, None, None, [], strings,
                f"square of scaling {j + 1} is {r}, not a positive rational",
            )
        squares[j] = r
    deltas = [FieldScalar(1) if r is None else r.sqrt() for r in squares]
    npos = tgt.rs.npos
    scale = []
    for beta in tgt.rs.positive:
        d = FieldScalar(1)
        for j, e in enumerate(beta):
            for _ in range(e):
                d = d * deltas[j]
        scale.append(d)
    phi = SpMat(tgt.dim, tgt.dim)
    for t in range(rank_t):
        phi.rows[t][t] = C_ONE
    for bi in range(npos):
        phi.rows[rank_t + bi][rank_t + bi] = ComplexScalar(scale[bi])
        phi.rows[rank_t + npos + bi][rank_t + npos + bi] = ComplexScalar(scale[bi].inverse())
    verify_automorphism(tgt, phi, "rescaling")

    def unscale(v):
        out = list(v)
        for bi in range(npos):
            out[rank_t + bi] = v[rank_t + bi] * scale[bi].inverse()
            out[rank_t + npos + bi] = v[rank_t + npos + bi] * scale[bi]
        return out

    eps2 = Embedding(
        eps.source,
        eps.target,
        eps.g_images,
        [unscale(v) for v in eps.x_images],
        [unscale(v) for v in eps.y_images],
    )
    eps2.verify()
    ok, wit = is_balanced(eps2)
    if not ok:
        raise ContractViolation(f"rescaled embedding is still unbalanced: {wit[0]}")
    return RescaleResult(True, eps2, phi, deltas, strings, "rescaled")


def balancing_system(eps: Embedding):
    """Real system whose solutions rebuild balanced root-vector images.

    Ansatz per source simple root i and supporting target root beta:
    coefficient s + i t on the positive side, s - i t on the negative.
    Returns (vars, polys, pairs) with pairs the (i, beta index) order.
    """
    src, tgt = eps.source, eps.target
    rank_t, npos = tgt.rank, tgt.rs.npos
    pairs = []
    for i in range(src.rank):
        for bi in weight_support(eps, i):
            pairs.append((i, bi))
    m = len(pairs)
    vars = tuple([f"s{k + 1}" for k in range(m)] + [f"t{k + 1}" for k in range(m)])
    xs = [[CPoly.const(vars, ComplexScalar(0)) for _ in range(tgt.dim)] for _ in range(src.rank)]
    ys = [[CPoly.const(vars, ComplexScalar(0)) for _ in range(tgt.dim)] for _ in range(src.rank)]
    for k, (i, bi) in enumerate(pairs):
        s = Poly.variable(vars, f"s{k + 1}")
        t = Poly.variable(vars, f"t{k + 1}")
        xs[i][rank_t + bi] = CPoly(s, t)
        ys[i][rank_t + npos + bi] = CPoly(s, -t)
    gs = [[CPoly.const(vars, c) for c in v] for v in eps.g_images]
    polys: list[CPoly] = []

    def collect(vec):
        polys.extend(c for c in vec if c)

    for i in range(src.rank):
        for j in range(src.rank):
            c = src.rs.cartan[i][j]
            gx = tgt.bracket(gs[i], xs[j])
            collect([gx[p] - c * xs[j][p] for p in range(tgt.dim)])
            gy = tgt.bracket(gs[i], ys[j])
            collect([gy[p] + c * ys[j][p] for p in range(tgt.dim)])
            xy = tgt.bracket(xs[i], ys[j])
            if i == j:
                collect([xy[p] - gs[i][p] for p in range(tgt.dim)])
            else:
                collect(xy)
    out: list[Poly] = []
    seen = set()
    for f in polys:
        for g in (f.re, f.im):
            if not g:
                continue
            gm = g.monic()
            if gm not in seen:
                seen.add(gm)
                out.append(gm)
    return vars, out, pairs


def rebuild_balanced(eps: Embedding, pairs, point, vars) -> Embedding:
    """Embedding with root-vector images read off a balancing solution."""
    src, tgt = eps.source, eps.target
    rank_t, npos = tgt.rank, tgt.rs.npos
    xs = [[ComplexScalar(0)] * tgt.dim for _ in range(src.rank)]
    ys = [[ComplexScalar(0)] * tgt.dim for _ in range(src.rank)]
    for k, (i, bi) in enumerate(pairs):
        s = point[f"s{k + 1}"]
        t = point[f"t{k + 1}"]
        xs[i][rank_t + bi] = ComplexScalar(s, t)
        ys[i][rank_t + npos + bi] = ComplexScalar(s, -t)
    eps2 = Embedding(src, tgt, eps.g_images, xs, ys)
    eps2.verify()
    ok, wit = is_balanced(eps2)
    if not ok:
        raise ContractViolation(f"rebuilt embedding is not balanced: {wit[0]}")
    return eps2


def _pin_free_variables(sol, vars):
    """Cut a parametric solution set down to points.

    Greedily adjoins equations fixing one free variable at a time to a
    small rational; any point of the variety serves equally well here,
    so the first consistent pin wins.  Returns (solution, pin notes).
    """
    basis = sol.basis
    pins: list[str] = []
    while sol.kind == "parametric":
        for v in sol.free_vars:
            for text in (v, f"{v} - 1", f"{v} + 1", f"{v} - 1/2", f"{v} - 2"):
                trial = split_cases(basis, [Poly.parse(vars, text)])
                cand = solve_system(trial)
                if cand.kind != "inconsistent":
                    basis = cand.basis
                    pins.append(text)
                    sol = cand
                    break
            else:
                continue
            break
        else:
            return sol, pins
    return sol, pins


def make_balanced(eps: Embedding):
    """(balanced embedding, action tag, notes).

    Tries the rescaling shortcut first, then the full system; raises
    with the reduced basis attached when neither produces a balanced
    equivalent.
    """
    ok, _ = is_balanced(eps)
    if ok:
        return eps, "already-balanced", []
    res = rescaling_trick(eps)
    if res.ok:
        return res.embedding, "rescaled", [f"scalings: {[str(d) for d in res.deltas]}"]
    notes = [f"rescaling failed: {res.reason}"]
    vars, polys, pairs = balancing_system(eps)
    sol = solve_system(polys)
    if sol.kind == "parametric":
        # any point of the balanced family will do
        sol, pins = _pin_free_variables(sol, vars)
        if pins:
            notes.append("free balancing parameters pinned: " + ", ".join(pins))
    if sol.kind == "finite" and sol.points:
        eps2 = rebuild_balanced(eps, pairs, sol.points[0], vars)
        eps2.verify()
        notes.append(f"balancing system solved; {len(sol.points)} solutions, first taken")
        return eps2, "rebalanced", notes
    raise ContractViolation(
        "balancing failed: " + "; ".join(
            notes + [f"system is {sol.kind}", f"basis {[str(g) for g in sol.basis]}"]
        )
    )


# ---------------------------------------------------------------------------
# the involution system


@dataclass
class InvolutionSystem:
    """Real polynomial system cutting out the extending involutions."""

    intertwiner_basis: list
    variables: tuple
    q1: list = field(default_factory=list)  # square = identity + automorphism
    q2: list = field(default_factory=list)  # compact-conjugation commutation
    a_rows: list = field(default_factory=list)  # symbolic combination, sparse rows

    @property
    def dimension(self) -> int:
        return len(self.intertwiner_basis)

    def all_polys(self) -> list:
        return list(self.q1) + list(self.q2)

    def a_entries(self) -> list:
        """Dense matrix of the symbolic combination."""
        n = len(self.a_rows)
        zero = CPoly.const(self.variables, ComplexScalar(0))
        return [
            [self.a_rows[p].get(q, zero) for q in range(n)] for p in range(n)
        ]

    def to_json_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "variables": list(self.variables),
            "q1": [str(g) for g in self.q1],
            "q2": [str(g) for g in self.q2],
        }


def _sparse_to_rows(mat: SpMat) -> list:
    return [dict(row) for row in mat.rows]


def _mul_rows_sparse(lrows: list, mat: SpMat) -> list:
    """(L * M) rows with M a sparse scalar matrix."""
    out: list = [dict() for _ in range(len(lrows))]
    for p, row in enumerate(lrows):
        acc = out[p]
        for m, c in row.items():
            for q, v in mat.rows[m].items():
                t = c * v
                cur = acc.get(q)
                acc[q] = t if cur is None else cur + t
    return out


def _mul_rows(lrows: list, rrows: list) -> list:
    out: list = [dict() for _ in range(len(lrows))]
    for p, row in enumerate(lrows):
        acc = out[p]
        for m, c in row.items():
            rrow = rrows[m]
            for q, v in rrow.items():
                t = c * v
                cur = acc.get(q)
                acc[q] = t if cur is None else cur + t
    return out


def involution_system(
    eps: Embedding,
    theta: Involution,
    p2_mode: str = "basis",
    var_order: str = "blocks",
) -> InvolutionSystem:
    """The real system for involutions extending theta through eps.

    p2_mode selects how the automorphism condition is imposed: "basis"
    takes A ad(a) A = ad(A a) over every target basis element; the
    cheaper "generators" takes the one-sided A ad(a) = ad(A a) A over
    the canonical generators only, which spans the same ideal once the
    square-identity polynomials are present.

    var_order fixes the lex elimination order: "blocks" is x1..xs then
    y1..ys, "interleaved" is x1, y1, x2, y2, ...
    """
    if p2_mode not in ("basis", "generators"):
        raise ContractViolation(f"unknown p2_mode {p2_mode!r}")
    if var_order not in ("blocks", "interleaved"):
        raise ContractViolation(f"unknown var_order {var_order!r}")
    src, tgt = eps.source, eps.target
    theta.verify(src)
    theta.commutes_with_tau(src)
    ok, wit = is_balanced(eps)
    if not ok:
        raise ContractViolation(f"embedding is not balanced: witness {wit[0]}")
    n = tgt.dim
    gv, xv, yv = src.canonical_generators()
    rho = ModuleRep.from_action(
        tgt,
        [eps.apply(theta.apply(v)) for v in gv],
        [eps.apply(theta.apply(v)) for v in xv],
        [eps.apply(theta.apply(v)) for v in yv],
    )
    phi = ModuleRep.from_action(tgt, eps.g_images, eps.x_images, eps.y_images)
    basis = end_rho_phi_basis(rho, phi, verify=True)
    basis = _normalize_on_image(eps, theta, basis)
    s = len(basis)
    if var_order == "blocks":
        vars = tuple([f"x{i + 1}" for i in range(s)] + [f"y{i + 1}" for i in range(s)])
    else:
        vars = tuple(v for i in range(s) for v in (f"x{i + 1}", f"y{i + 1}"))
    xpos = [vars.index(f"x{i + 1}") for i in range(s)]
    ypos = [vars.index(f"y{i + 1}") for i in range(s)]
    a_rows: list = [dict() for _ in range(n)]
    for i, ai in enumerate(basis):
        z = CPoly(Poly.variable(vars, f"x{i + 1}"), Poly.variable(vars, f"y{i + 1}"))
        for p, row in enumerate(ai.rows):
            for q, c in row.items():
                t = z * c
                cur = a_rows[p].get(q)
                a_rows[p][q] = t if cur is None else cur + t
    a_cols: list = [dict() for _ in range(n)]
    for p, row in enumerate(a_rows):
        for q, c in row.items():
            a_cols[q][p] = c

    cpolys: list[CPoly] = []
    sq = _mul_rows(a_rows, a_rows)
    for p in range(n):
        acc = sq[p]
        cur = acc.get(p)
        acc[p] = (cur - 1) if cur is not None else CPoly.const(vars, ComplexScalar(-1))
        for q in sorted(acc):
            if acc[q]:
                cpolys.append(acc[q])

    def ad_of_column(col: dict) -> list:
        out: list = [dict() for _ in range(n)]
        for k, c in col.items():
            adk = tgt.ad_basis(k)
            for p, row in enumerate(adk.rows):
                acc = out[p]
                for q, v in row.items():
                    t = c * v
                    cur = acc.get(q)
                    acc[q] = t if cur is None else cur + t
        return out

    def collect_diff(lrows: list, rrows: list) -> None:
        for p in range(n):
            keys = set(lrows[p]) | set(rrows[p])
            for q in sorted(keys):
                d = lrows[p].get(q, 0) - rrows[p].get(q, 0)
                if d:
                    cpolys.append(d)

    if p2_mode == "basis":
        for j in range(n):
            t1 = _mul_rows_sparse(a_rows, tgt.ad_basis(j))
            t2 = _mul_rows(t1, a_rows)
            collect_diff(t2, ad_of_column(a_cols[j]))
    else:
        for j in _canonical_indices(tgt):
            t1 = _mul_rows_sparse(a_rows, tgt.ad_basis(j))
            t2 = _mul_rows(ad_of_column(a_cols[j]), a_rows)
            collect_diff(t1, t2)

    seen = set()
    q1: list[Poly] = []
    for f in cpolys:
        for g in (f.re, f.im):
            if not g:
                continue
            gm = g.monic()
            if gm not in seen:
                seen.add(gm)
                q1.append(gm)

    q2: list[Poly] = []
    for j in range(n):
        ej = tgt.basis_vector(j)
        tau_ej = tau_apply(tgt, ej)
        pairs = []
        for ai in basis:
            pairs.append((tau_apply(tgt, ai.matvec(ej)), ai.matvec(tau_ej)))
        for p in range(n):
            re_terms: dict = {}
            im_terms: dict = {}
            for i, (cv, dv) in enumerate(pairs):
                c = cv[p] if isinstance(cv[p], ComplexScalar) else ComplexScalar(cv[p])
                d = dv[p] if isinstance(dv[p], ComplexScalar) else ComplexScalar(dv[p])
                diff = c - d
                tot = c + d
                xe = tuple(1 if k == xpos[i] else 0 for k in range(2 * s))
                ye = tuple(1 if k == ypos[i] else 0 for k in range(2 * s))
                if diff.re:
                    re_terms[xe] = diff.re
                if tot.im:
                    re_terms[ye] = tot.im
                if diff.im:
                    im_terms[xe] = diff.im
                if tot.re:
                    im_terms[ye] = -tot.re
            for terms in (re_terms, im_terms):
                if not terms:
                    continue
                gm = Poly(vars, terms).monic()
                if gm not in seen:
                    seen.add(gm)
                    q2.append(gm)

    return InvolutionSystem(basis, vars, q1, q2, a_rows)


def _normalize_on_image(eps: Embedding, theta: Involution, basis: list) -> list:
    """Pin the scale of the map acting on the image subalgebra.

    Any extension of theta restricts to eps theta eps^-1 on the image of
    the source, so the unique basis map supported there is rescaled to
    equal that restriction; its coordinate in any solution is then 1.
    Skipped for composite sources and repeated image components, where
    no single map carries the restriction.
    """
    src = eps.source
    if "+" in src.type_name:
        return basis
    seed = src.basis_vector(src.rank + src.rs.npos - 1)  # highest root vector
    v = eps.apply(theta.apply(seed))
    want = eps.apply(seed)
    hits = [i for i, ai in enumerate(basis) if any(ai.matvec(v))]
    if len(hits) != 1:
        return basis
    got = basis[hits[0]].matvec(v)
    kappa = None
    for p, c in enumerate(want):
        if c:
            g = got[p] if isinstance(got[p], ComplexScalar) else ComplexScalar(got[p])
            kappa = g * c.inverse()
            break
    if kappa is None or not kappa:
        return basis
    scaled = basis[hits[0]].scale(kappa.inverse())
    if any((a - b) for a, b in zip(scaled.matvec(v), want)):
        return basis  # image component is not a single irreducible block
    out = list(basis)
    out[hits[0]] = scaled
    return out


def _canonical_indices(alg: LieAlgebra) -> list[int]:
    idx = list(range(alg.rank))
    for i in range(alg.rank):
        simple = tuple(1 if j == i else 0 for j in range(alg.rank))
        idx.append(alg.rank + alg.rs.root_index[simple])
        idx.append(alg.rank + alg.rs.root_index[alg.rs._neg(simple)])
    return idx


def instantiate_solution(system: InvolutionSystem, point: dict) -> SpMat:
    """The combination matrix at a solution point."""
    basis = system.intertwiner_basis
    n = basis[0].nrows
    s = len(basis)
    out = SpMat(n, n)
    for i in range(s):
        z = ComplexScalar(point[f"x{i + 1}"], point[f"y{i + 1}"])
        if not z:
            continue
        for p, row in enumerate(basis[i].rows):
            acc = out.rows[p]
            for q, c in row.items():
                cur = acc.get(q, 0) + z * c
                if cur:
                    acc[q] = cur
                else:
                    acc.pop(q, None)
    return out


# ---------------------------------------------------------------------------
# the full pipeline


@dataclass
class PipelineResult:
    source_type: str
    target_type: str
    balance_action: str
    dimension: int
    system: InvolutionSystem
    groebner_basis: list
    solutions: SolutionSet
    charpoly: "CharpolyResult | None"
    multiplicities: "tuple | None"
    reports: list
    involutions: list
    warnings: list
    notes: list

    def to_json_dict(self) -> dict:
        return {
            "source": self.source_type,
            "target": self.target_type,
            "balance": self.balance_action,
            "intertwiner_dimension": self.dimension,
            "equations": {"q1": len(self.system.q1), "q2": len(self.system.q2)},
            "groebner_basis": [str(g) for g in self.groebner_basis],
            "solutions": self.solutions.to_json_dict(),
            "charpoly": None if self.charpoly is None else {
                "parameter_free": self.charpoly.parameter_free,
                "coefficients": list(self.charpoly.raw),
            },
            "multiplicities": None if self.multiplicities is None else list(self.multiplicities),
            "reports": [r.to_json_dict() for r in self.reports],
            "warnings": list(self.warnings),
            "notes": list(self.notes),
        }


def run_pipeline(
    eps: Embedding,
    theta: Involution,
    p2_mode: str = "basis",
    var_order: str = "blocks",
) -> PipelineResult:
    """Balance, generate, solve, verify, classify.

    Finite solution sets instantiate and exactly verify one involution
    per point.  Parametric sets go through the characteristic
    polynomial of the symbolic combination reduced modulo the ideal;
    when that is parameter free its eigenvalue multiplicities pin the
    compact and noncompact dimensions for the whole family.
    """
    src, tgt = eps.source, eps.target
    eps.verify()
    theta.verify(src)
    theta.commutes_with_tau(src)
    eps2, action, notes = make_balanced(eps)
    system = involution_system(eps2, theta, p2_mode=p2_mode, var_order=var_order)
    sol = solve_system(system.all_polys())
    gb = sol.basis
    reports: list[RealFormReport] = []
    involutions: list[Involution] = []
    warnings: list[str] = []
    charres = None
    mult = None
    if sol.kind == "inconsistent":
        notes = notes + ["no involution extends theta compatibly with the compact form"]
    elif sol.kind == "finite":
        coords = CompactCoordinates(tgt)
        for k, pt in enumerate(sol.points):
            mat = instantiate_solution(system, pt)
            inv = Involution(mat, f"extension[{k}]")
            inv.verify(tgt)
            inv.commutes_with_tau(tgt)
            verify_extension(eps2, theta, inv)
            report, _, _ = real_form_from_involution(tgt, inv, coords, verify=False)
            reports.append(report)
            involutions.append(inv)
    else:
        charres = charpoly_mod_ideal(system.a_entries(), gb)
        mult = charres.eigenvalue_multiplicities()
        if mult is not None:
            dim_k, dim_p = mult
            name = classify_real_form(tgt.type_name, dim_k, dim_p)
            reports.append(RealFormReport(dim_k, dim_p, (dim_k, dim_p), name))
        else:
            warnings.append(
                "parametric solution set and parameter-dependent characteristic "
                "polynomial; family unresolved"
            )
    distinct = {(r.dim_k, r.dim_p) for r in reports}
    if len(distinct) > 2:
        warnings.append(
            f"{len(distinct)} distinct real forms; at most two are expected "
            "when the image is a maximal S-subalgebra"
        )
    return PipelineResult(
        src.type_name,
        tgt.type_name,
        action,
        system.dimension,
        system,
        gb,
        sol,
        charres,
        mult,
        reports,
        involutions,
        warnings,
        notes,
    )


def verify_extension(eps: Embedding, theta: Involution, ext: Involution) -> None:
    """ext composed with eps equals eps composed with theta, exactly."""
    src = eps.source
    m = eps.matrix
    for j in range(src.dim):
        e = src.basis_vector(j)
        lhs = ext.apply(m.matvec(e))
        rhs = m.matvec(theta.apply(e))
        if any((a - b) for a, b in zip(lhs, rhs)):
            raise ContractViolation(
                f"{ext.label} does not extend theta at source basis {src.labels[j]}"
            )
