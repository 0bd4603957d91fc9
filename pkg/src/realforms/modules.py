"""Weight decomposition and intertwiner bases for modules over a
canonically generated subalgebra.

A `ModuleRep` is the action of canonical generators (g_i, x_i, y_i) on
a finite-dimensional space.  `weight_decompose` splits the space into
simultaneous integer eigenspaces of the commuting g_i and locates the
highest weight vectors; `build_monomial_schedule` picks, per highest
weight, a deterministic set of lowering sequences whose images give a
basis of the generated irreducible; from these `end_rho_basis` and
`end_rho_phi_basis` construct exact bases of the commutant and of the
space of intertwining maps between two equivalent actions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation
from .linalg import (
    SpMat,
    SpanTracker,
    berkowitz_charpoly,
    dense_inverse,
    kernel_basis,
)
from .scalars import C_ZERO, ComplexScalar


def _as_complex(c) -> ComplexScalar:
    return c if isinstance(c, ComplexScalar) else ComplexScalar(c)


@dataclass
class ModuleRep:
    """Matrices of canonical generators acting on an n-dimensional space."""

    dim: int
    g_mats: list
    x_mats: list
    y_mats: list

    @property
    def rank(self) -> int:
        return len(self.g_mats)

    @classmethod
    def from_action(cls, algebra, g_images, x_images, y_images) -> "ModuleRep":
        """Adjoint action of images of canonical generators inside algebra."""
        return cls(
            algebra.dim,
            [algebra.adjoint(v) for v in g_images],
            [algebra.adjoint(v) for v in x_images],
            [algebra.adjoint(v) for v in y_images],
        )

    def generator_matrices(self):
        return list(self.g_mats) + list(self.x_mats) + list(self.y_mats)


@dataclass
class WeightDecomposition:
    weights: list  # distinct integer tuples, descending
    spaces: dict  # weight -> list of vectors
    hw_vectors: dict  # weight -> list of vectors (only weights with some)

    def multiplicity(self, weight) -> int:
        return len(self.hw_vectors.get(tuple(weight), ()))

    def weight_multiset(self) -> dict:
        return {w: len(v) for w, v in self.spaces.items()}

    def commutant_dimension(self) -> int:
        return sum(len(v) ** 2 for v in self.hw_vectors.values())


def _restriction_matrix(mat: SpMat, basis: list) -> list:
    """Rows of the action of mat on span(basis) in basis coordinates."""
    n = len(basis[0])
    tracker = SpanTracker(n, track=True)
    for v in basis:
        if tracker.add(v) is None:
            raise ContractViolation("subspace basis is dependent")
    cols = []
    for v in basis:
        coords = tracker.coordinates(mat.matvec(v))
        if coords is None:
            raise ContractViolation(
                "generator action does not preserve a weight subspace"
            )
        cols.append(coords)
    k = len(basis)
    return [[_as_complex(cols[j][i]) for j in range(k)] for i in range(k)]


def _integer_eigensplit(mat: SpMat, basis: list):
    """Split span(basis) into integer eigenspaces of mat.

    Returns {eigenvalue: vectors}.  Rejects any non-integer spectrum
    with the residual characteristic factor in the message.
    """
    rows = _restriction_matrix(mat, basis)
    k = len(rows)
    bound = 0
    for i in range(k):
        s = 0
        for j in range(k):
            s += rows[i][j].abs_upper_int()
        bound = max(bound, s)
    out = {}
    total = 0
    for m in range(-bound, bound + 1):
        shifted = [
            [rows[i][j] - (m if i == j else 0) for j in range(k)]
            for i in range(k)
        ]
        ker = kernel_basis(shifted, k)
        if not ker:
            continue
        out[m] = [
            _combine(basis, coords) for coords in ker
        ]
        total += len(ker)
    if total != k:
        coeffs = berkowitz_charpoly(rows)
        raise ContractViolation(
            "generator has a non-integer eigenvalue; characteristic "
            f"coefficients {[str(c) for c in coeffs]}"
        )
    return out


def _combine(basis: list, coords: list):
    n = len(basis[0])
    out = [C_ZERO] * n
    for c, v in zip(coords, basis):
        c = _as_complex(c)
        if not c:
            continue
        for t in range(n):
            if v[t]:
                out[t] = out[t] + c * v[t]
    return out


def _diagonal_weight_table(rep: ModuleRep):
    """When every g-matrix is diagonal, read weights straight off."""
    for mat in rep.g_mats:
        if not mat.is_diagonal():
            return None
    table = []
    for k in range(rep.dim):
        wt = []
        for mat in rep.g_mats:
            d = _as_complex(mat.get(k, k))
            if not d.is_real():
                raise ContractViolation(
                    f"non-integer eigenvalue {d} of a diagonal generator"
                )
            r = d.real_value()
            if not r.is_integer():
                raise ContractViolation(
                    f"non-integer eigenvalue {d} of a diagonal generator"
                )
            wt.append(int(r.rational_value().numerator))
        table.append(tuple(wt))
    return table


def weight_decompose(rep: ModuleRep) -> WeightDecomposition:
    """Simultaneous integer eigenspaces of the g_i plus highest weight
    vectors (kernel of all raising operators within each weight space)."""
    spaces: dict = {}
    table = _diagonal_weight_table(rep)
    if table is not None:
        for k, wt in enumerate(table):
            v = [C_ZERO] * rep.dim
            v[k] = ComplexScalar(1)
            spaces.setdefault(wt, []).append(v)
    else:
        ident = []
        for k in range(rep.dim):
            v = [C_ZERO] * rep.dim
            v[k] = ComplexScalar(1)
            ident.append(v)
        layers = {(): ident}
        for mat in rep.g_mats:
            nxt: dict = {}
            for wt, basis in layers.items():
                for m, vecs in _integer_eigensplit(mat, basis).items():
                    nxt[wt + (m,)] = vecs
            layers = nxt
        spaces = layers
    if sum(len(v) for v in spaces.values()) != rep.dim:
        raise ContractViolation("weight spaces do not fill the module")
    hw: dict = {}
    for wt in sorted(spaces, reverse=True):
        basis = spaces[wt]
        k = len(basis)
        stacked = []
        for v in basis:
            col = []
            for mat in rep.x_mats:
                col.extend(mat.matvec(v))
            stacked.append(col)
        # columns indexed by basis, rows by stacked image entries
        rows = [
            [stacked[j][i] for j in range(k)]
            for i in range(len(stacked[0]))
        ]
        ker = kernel_basis(rows, k)
        if ker:
            hw[wt] = [_combine(basis, coords) for coords in ker]
    return WeightDecomposition(sorted(spaces, reverse=True), spaces, hw)


def build_monomial_schedule(rep: ModuleRep, wd: WeightDecomposition) -> dict:
    """Per highest weight, lowering sequences (i_1,...,i_k) whose images
    on the first hw vector are independent; breadth first, so shorter
    sequences come first and each level is in index-lex order.

    A sequence acts right to left: (i_1,...,i_k) sends v to
    y_{i_1} ... y_{i_k} v.
    """
    out = {}
    for wt in sorted(wd.hw_vectors, reverse=True):
        v = wd.hw_vectors[wt][0]
        tracker = SpanTracker(rep.dim)
        schedule: list = []
        level = []
        if tracker.add(v) is not None:
            schedule.append(())
            level = [((), v)]
        while level:
            nxt = []
            for i in range(rep.rank):
                for seq, u in level:
                    w = rep.y_mats[i].matvec(u)
                    if any(w) and tracker.add(w) is not None:
                        nseq = (i + 1,) + seq
                        schedule.append(nseq)
                        nxt.append((nseq, w))
            level = nxt
        out[wt] = schedule
    return out


def apply_sequence(rep: ModuleRep, seq, v):
    for i in reversed(seq):
        v = rep.y_mats[i - 1].matvec(v)
    return v


def module_basis(rep: ModuleRep, wd: WeightDecomposition, ms: dict):
    """Scheduled images over all hw vectors: (columns, keys).

    keys[t] = (weight, hw index, position in schedule).  The columns
    must form a basis of the whole space; anything short is a
    decomposition failure.
    """
    cols = []
    keys = []
    tracker = SpanTracker(rep.dim)
    for wt in sorted(wd.hw_vectors, reverse=True):
        schedule = ms[wt]
        for s, v in enumerate(wd.hw_vectors[wt]):
            for t, seq in enumerate(schedule):
                u = apply_sequence(rep, seq, v)
                if tracker.add(u) is None:
                    raise ContractViolation(
                        "scheduled images are dependent at "
                        f"weight {wt}, vector {s}, sequence {seq}"
                    )
                cols.append(u)
                keys.append((wt, s, t))
    if len(cols) != rep.dim:
        raise ContractViolation(
            f"scheduled images span {len(cols)} of {rep.dim} dimensions"
        )
    return cols, keys


def _columns_matrix(cols: list) -> SpMat:
    n = len(cols[0])
    m = SpMat(n, len(cols))
    for j, v in enumerate(cols):
        for i, c in enumerate(v):
            if c:
                m.set(i, j, c)
    return m


def _verify_intertwines(maps, rho: ModuleRep, phi: ModuleRep):
    gens_r = rho.generator_matrices()
    gens_p = phi.generator_matrices()
    for a in maps:
        for zr, zp in zip(gens_r, gens_p):
            if a * zr != zp * a:
                raise ContractViolation(
                    "constructed map fails to intertwine the actions"
                )


def end_rho_basis(
    rep: ModuleRep,
    wd: WeightDecomposition | None = None,
    ms: dict | None = None,
    verify: bool = True,
) -> list:
    """Basis of all matrices commuting with the action; one unit-like
    map per ordered pair of hw vectors of equal weight."""
    if wd is None:
        wd = weight_decompose(rep)
    if ms is None:
        ms = build_monomial_schedule(rep, wd)
    cols, keys = module_basis(rep, wd, ms)
    b = _columns_matrix(cols)
    binv = SpMat.from_dense(dense_inverse(b.to_dense()))
    index = {key: t for t, key in enumerate(keys)}
    out = []
    for wt in sorted(wd.hw_vectors, reverse=True):
        mult = len(wd.hw_vectors[wt])
        npos = len(ms[wt])
        for s in range(mult):
            for t in range(mult):
                e = SpMat(rep.dim, rep.dim)
                for k in range(npos):
                    e.set(index[(wt, t, k)], index[(wt, s, k)], ComplexScalar(1))
                out.append(b * e * binv)
    if verify:
        _verify_intertwines(out, rep, rep)
    return out


def end_rho_phi_basis(rho: ModuleRep, phi: ModuleRep, verify: bool = True) -> list:
    """Basis of maps A with A*rho(z) = phi(z)*A for all generators z.

    Built as A0 * (commutant basis), with A0 sending each scheduled
    rho-image to the matching phi-image.  The actions must be
    equivalent; the first weight-multiplicity mismatch is reported.
    """
    if rho.dim != phi.dim or rho.rank != phi.rank:
        raise ContractViolation("actions live on different spaces")
    wd_r = weight_decompose(rho)
    wd_p = weight_decompose(phi)
    mr, mp = wd_r.weight_multiset(), wd_p.weight_multiset()
    for wt in sorted(set(mr) | set(mp), reverse=True):
        if mr.get(wt, 0) != mp.get(wt, 0):
            raise ContractViolation(
                "actions are not equivalent: weight "
                f"{wt} has multiplicity {mr.get(wt, 0)} versus {mp.get(wt, 0)}"
            )
    for wt in sorted(wd_r.hw_vectors, reverse=True):
        if len(wd_p.hw_vectors.get(wt, ())) != len(wd_r.hw_vectors[wt]):
            raise ContractViolation(
                "actions are not equivalent: highest weight "
                f"{wt} has multiplicity "
                f"{len(wd_r.hw_vectors[wt])} versus "
                f"{len(wd_p.hw_vectors.get(wt, ()))}"
            )
    ms = build_monomial_schedule(rho, wd_r)
    cols_r, keys_r = module_basis(rho, wd_r, ms)
    cols_p, keys_p = module_basis(phi, wd_p, ms)
    if keys_r != keys_p:
        raise ContractViolation("schedule keys diverge between actions")
    a0 = _columns_matrix(cols_p) * SpMat.from_dense(
        dense_inverse(_columns_matrix(cols_r).to_dense())
    )
    base = end_rho_basis(rho, wd_r, ms, verify=False)
    out = [a0 * a for a in base]
    if verify:
        _verify_intertwines(out, rho, phi)
    return out
