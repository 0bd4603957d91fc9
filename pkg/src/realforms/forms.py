"""Compact forms, conjugations, involutions, and real-form reports.

The compact form u of an algebra L in Chevalley basis is spanned by
i*h_1, ..., i*h_l followed by, for each positive root b in canonical
order, the pair  x_b - x_-b  and  i*(x_b + x_-b).  The compact
conjugation tau fixes u pointwise; on Chevalley coordinates it acts as
the antilinear map  h_i -> -h_i,  x_b -> -x_-b  with coefficients
conjugated (both descriptions are tested against each other).

A tau-compatible involution theta splits u into (+1)- and (-1)-spaces
u_1, u_-1, and  k = u_1, p = i*u_-1  spans a real form with Cartan
decomposition k + p.  Reports carry (dim k, dim p) and the exact Killing
signature; names come from a table keyed by (type, dim k), which is
injective for the implemented types except so(2,6)/so*(8) inside D4,
reported as "unclassified".
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LieAlgebra
from .errors import ContractViolation
from .linalg import (
    SpMat,
    congruence_diagonal,
    dense_inverse,
    kernel_basis,
    signature_counts,
    vec_is_zero,
)
from .scalars import C_I, C_ONE, ComplexScalar, FieldScalar


def compact_basis(L: LieAlgebra) -> list[list]:
    """The dim(L) compact-form vectors in fixed order."""
    out = []
    for i in range(L.rank):
        v = [ComplexScalar(0)] * L.dim
        v[i] = C_I
        out.append(v)
    for idx in range(L.rs.npos):
        bi = L.rank + idx
        ni = L.rank + L.rs.npos + idx
        v = [ComplexScalar(0)] * L.dim
        v[bi] = C_ONE
        v[ni] = -C_ONE
        out.append(v)
        w = [ComplexScalar(0)] * L.dim
        w[bi] = C_I
        w[ni] = C_I
        out.append(w)
    return out


def tau_apply(L: LieAlgebra, v) -> list:
    """Compact conjugation: antilinear, fixes the compact form pointwise.

    Acts on Chevalley coordinates as conj followed by h -> -h,
    x_b -> -x_{-b}.
    """
    out = [ComplexScalar(0)] * L.dim
    npos = L.rs.npos
    for i, c in enumerate(v):
        if not c:
            continue
        cc = c.conjugate() if isinstance(c, ComplexScalar) else ComplexScalar(c)
        if i < L.rank:
            out[i] = out[i] - cc
        elif i < L.rank + npos:
            out[i + npos] = out[i + npos] - cc
        else:
            out[i - npos] = out[i - npos] - cc
    return out


class CompactCoordinates:
    """Coordinate transform between the Chevalley and compact bases."""

    def __init__(self, L: LieAlgebra):
        self.L = L
        self.basis = compact_basis(L)
        self.matrix = [[self.basis[j][i] for j in range(L.dim)] for i in range(L.dim)]
        self.inverse = dense_inverse(self.matrix)

    def to_compact(self, v) -> list:
        return [
            sum((row[j] * v[j] for j in range(self.L.dim) if v[j]), start=0)
            for row in self.inverse
        ]

    def from_compact(self, coords) -> list:
        return [
            sum((row[j] * coords[j] for j in range(self.L.dim) if coords[j]), start=0)
            for row in self.matrix
        ]

    def tau(self, v) -> list:
        """tau via coordinates: conjugate the compact coefficients."""
        coords = self.to_compact(v)
        conj = [
            c.conjugate() if isinstance(c, ComplexScalar) else c for c in coords
        ]
        return self.from_compact(conj)


def verify_automorphism(L: LieAlgebra, matrix: SpMat, label: str = "map") -> None:
    """Bracket preservation on all basis pairs, exactly."""
    n = L.dim
    cols = [matrix.matvec(L.basis_vector(j)) for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = matrix.matvec(L.bracket(L.basis_vector(i), L.basis_vector(j)))
            rhs = L.bracket(cols[i], cols[j])
            if any((a - b) for a, b in zip(lhs, rhs)):
                raise ContractViolation(
                    f"{label}: not an automorphism on basis pair ({i}, {j})"
                )


class Involution:
    """A linear order-2 automorphism given by its matrix on the table basis."""

    def __init__(self, matrix: SpMat, label: str = "theta"):
        self.matrix = matrix
        self.label = label

    def apply(self, v) -> list:
        return self.matrix.matvec(v)

    def verify(self, L: LieAlgebra) -> None:
        """Order two and bracket preservation, checked on all basis pairs."""
        n = L.dim
        if (self.matrix.nrows, self.matrix.ncols) != (n, n):
            raise ContractViolation(f"{self.label}: matrix size mismatch")
        sq = self.matrix * self.matrix
        if sq != SpMat.identity(n):
            raise ContractViolation(f"{self.label}: square is not the identity")
        verify_automorphism(L, self.matrix, self.label)

    def commutes_with_tau(self, L: LieAlgebra) -> None:
        for j in range(L.dim):
            e = L.basis_vector(j)
            lhs = tau_apply(L, self.apply(e))
            rhs = self.apply(tau_apply(L, e))
            diff = [a - b for a, b in zip(lhs, rhs)]
            if not vec_is_zero(diff):
                raise ContractViolation(
                    f"{self.label}: does not commute with the compact conjugation; "
                    f"witness basis vector {L.labels[j]}"
                )

    def to_json_dict(self) -> dict:
        return {
            "dim": self.matrix.nrows,
            "matrix": [
                [str(self.matrix.get(i, j)) for j in range(self.matrix.ncols)]
                for i in range(self.matrix.nrows)
            ],
        }


def identity_involution(L: LieAlgebra) -> Involution:
    return Involution(SpMat.identity(L.dim, C_ONE), "identity")


def split_involution(L: LieAlgebra) -> Involution:
    """h -> -h, x_b -> -x_{-b}; fixed points of tau*theta form the split form."""
    m = SpMat(L.dim, L.dim)
    npos = L.rs.npos
    for i in range(L.rank):
        m.rows[i][i] = -C_ONE
    for idx in range(len(L.rs.roots)):
        src = L.rank + idx
        dst = L.rank + (idx + npos if idx < npos else idx - npos)
        m.rows[dst][src] = -C_ONE
    return Involution(m, "split")


def inner_involution(L: LieAlgebra, index: int) -> Involution:
    """x_b -> (-1)^(b_index) x_b, h -> h   (conjugation by a torus point)."""
    if not (0 <= index < L.rank):
        raise ContractViolation(f"inner involution index {index} out of range")
    m = SpMat.identity(L.dim, C_ONE)
    for idx, root in enumerate(L.rs.roots):
        if root[index] % 2:
            m.rows[L.rank + idx][L.rank + idx] = -C_ONE
    return Involution(m, f"inner:{index}")


def involution_by_kind(L: LieAlgebra, kind: str) -> Involution:
    if kind == "split":
        return split_involution(L)
    if kind == "identity":
        return identity_involution(L)
    if kind.startswith("inner:"):
        return inner_involution(L, int(kind.split(":", 1)[1]))
    raise ContractViolation(f"unknown involution kind {kind!r}")


def involution_from_json_dict(L: LieAlgebra, data: dict) -> Involution:
    """Load a Cartan involution from {"kind": ...} or an explicit matrix."""
    kind = data.get("kind", "matrix")
    if kind != "matrix":
        return involution_by_kind(L, kind)
    entries = data["matrix"]
    if len(entries) != L.dim:
        raise ContractViolation("involution matrix size mismatch")
    m = SpMat(L.dim, L.dim)
    for i, row in enumerate(entries):
        for j, text in enumerate(row):
            c = ComplexScalar.parse(text)
            if c:
                m.rows[i][j] = c
    theta = Involution(m, data.get("label", "theta"))
    theta.verify(L)
    return theta


@dataclass
class RealFormReport:
    dim_k: int
    dim_p: int
    killing_signature: tuple[int, int]
    type_name: str

    def to_json_dict(self) -> dict:
        return {
            "dim_k": self.dim_k,
            "dim_p": self.dim_p,
            "killing": list(self.killing_signature),
            "name": self.type_name,
        }


# (type, dim k) -> real form name; compact rows keep the family name.
_CLASSIFICATION: dict[str, dict[int, str]] = {
    "A1": {1: "sl(2,R)", 3: "su(2)"},
    "A2": {3: "sl(3,R)", 4: "su(1,2)", 8: "su(3)"},
    "A3": {6: "sl(4,R)", 7: "su(2,2)", 9: "su(1,3)", 10: "su*(4)", 15: "su(4)"},
    "A4": {10: "sl(5,R)", 12: "su(2,3)", 16: "su(1,4)", 24: "su(5)"},
    "A5": {
        15: "sl(6,R)",
        17: "su(3,3)",
        19: "su(2,4)",
        21: "su*(6)",
        25: "su(1,5)",
        35: "su(6)",
    },
    "B2": {4: "so(2,3)", 6: "so(1,4)", 10: "so(5)"},
    "B3": {9: "so(3,4)", 11: "so(2,5)", 15: "so(1,6)", 21: "so(7)"},
    "B4": {16: "so(4,5)", 18: "so(3,6)", 22: "so(2,7)", 28: "so(1,8)", 36: "so(9)"},
    "B5": {
        25: "so(5,6)",
        27: "so(4,7)",
        31: "so(3,8)",
        37: "so(2,9)",
        45: "so(1,10)",
        55: "so(11)",
    },
    "C3": {9: "sp(3,R)", 13: "sp(1,2)", 21: "sp(3)"},
    "C4": {16: "sp(4,R)", 20: "sp(2,2)", 24: "sp(1,3)", 36: "sp(4)"},
    "C5": {25: "sp(5,R)", 31: "sp(2,3)", 39: "sp(1,4)", 55: "sp(5)"},
    # dim k = 16 is so(2,6) or so*(8): not injective, stays unclassified
    "D4": {12: "so(4,4)", 13: "so(3,5)", 21: "so(1,7)", 28: "so(8)"},
    "D5": {
        20: "so(5,5)",
        21: "so(4,6)",
        24: "so(3,7)",
        25: "so*(10)",
        29: "so(2,8)",
        36: "so(1,9)",
        45: "so(10)",
    },
    "G2": {6: "G (split G2)", 14: "G2 (compact)"},
    "F4": {24: "FI", 36: "FII", 52: "F4 (compact)"},
    "E6": {36: "EI", 38: "EII", 46: "EIII", 52: "EIV", 78: "E6 (compact)"},
    "E7": {63: "EV", 69: "EVI", 79: "EVII", 133: "E7 (compact)"},
    "E8": {120: "EVIII", 136: "EIX", 248: "E8 (compact)"},
}

_TYPE_DIMS = {
    "A": lambda n: n * (n + 2),
    "B": lambda n: n * (2 * n + 1),
    "C": lambda n: n * (2 * n + 1),
    "D": lambda n: n * (2 * n - 1),
    "G": lambda n: 14,
    "F": lambda n: 52,
    "E": lambda n: {6: 78, 7: 133, 8: 248}[n],
}


def type_dimension(type_name: str) -> int:
    from .roots import parse_type_name

    return sum(_TYPE_DIMS[l](r) for l, r in parse_type_name(type_name))


def classify_real_form(type_name: str, dim_k: int, dim_p: int) -> str:
    """Name of the real form with the given compact dimension, by table.

    Composite types and ambiguous keys return "unclassified"; dimension
    mismatches are rejected.
    """
    dim = type_dimension(type_name)
    if dim_k + dim_p != dim:
        raise ContractViolation(
            f"report dims {dim_k}+{dim_p} do not match dim {type_name} = {dim}"
        )
    return _CLASSIFICATION.get(type_name, {}).get(dim_k, "unclassified")


def real_form_from_involution(
    L: LieAlgebra,
    theta: Involution,
    coords: CompactCoordinates | None = None,
    verify: bool = True,
):
    """Cartan decomposition and report for a tau-compatible involution.

    Returns (report, k_basis, p_basis) with bases in Chevalley coordinates.
    """
    if verify:
        theta.verify(L)
        theta.commutes_with_tau(L)
    if coords is None:
        coords = CompactCoordinates(L)
    n = L.dim
    # theta in compact coordinates must be a real matrix
    m = []
    for j in range(n):
        col = coords.to_compact(theta.apply(coords.basis[j]))
        for c in col:
            if isinstance(c, ComplexScalar) and c.im:
                raise ContractViolation(
                    "involution does not preserve the compact form"
                )
        m.append([c.re if isinstance(c, ComplexScalar) else FieldScalar(c) for c in col])
    real = [[m[j][i] for j in range(n)] for i in range(n)]  # columns -> matrix
    plus = [[real[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    minus = [[real[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    k_coords = kernel_basis(plus)
    p_coords = kernel_basis(minus)
    if len(k_coords) + len(p_coords) != n:
        raise ContractViolation("eigenspaces of the involution do not span")
    k_basis = [coords.from_compact(w) for w in k_coords]
    p_basis = [[C_I * c for c in coords.from_compact(w)] for w in p_coords]
    # exact Killing signature on the real span
    vectors = k_basis + p_basis
    gram = []
    for u in vectors:
        row = []
        for v in vectors:
            val = L.killing(u, v)
            if isinstance(val, ComplexScalar):
                if val.im:
                    raise ContractViolation("Killing form not real on the real form")
                val = val.re
            elif not isinstance(val, FieldScalar):
                val = FieldScalar(val)
            row.append(val)
        gram.append(row)
    neg, pos = signature_counts(congruence_diagonal(gram))
    if (neg, pos) != (len(k_basis), len(p_basis)):
        raise ContractViolation(
            f"Killing signature ({neg},{pos}) disagrees with the "
            f"decomposition ({len(k_basis)},{len(p_basis)})"
        )
    name = classify_real_form(L.type_name, len(k_basis), len(p_basis))
    report = RealFormReport(len(k_basis), len(p_basis), (neg, pos), name)
    return report, k_basis, p_basis
