"""Compact forms, involutions, and real-form classification."""

import pytest

from realforms.errors import ContractViolation
from realforms.forms import (
    CompactCoordinates,
    Involution,
    classify_real_form,
    compact_basis,
    identity_involution,
    inner_involution,
    involution_by_kind,
    involution_from_json_dict,
    real_form_from_involution,
    split_involution,
    tau_apply,
    type_dimension,
)
from realforms.linalg import congruence_diagonal, signature_counts, vec_is_zero
from realforms.scalars import ComplexScalar


def killing_signature_on(L, vectors):
    def real(c):
        z = c if isinstance(c, ComplexScalar) else ComplexScalar(c)
        return z.real_value()

    gram = [[real(L.killing(u, v)) for v in vectors] for u in vectors]
    return signature_counts(congruence_diagonal(gram))


# -- compact form --------------------------------------------------------------


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "B4", "G2"])
def test_compact_form_killing_negative_definite(alg, name):
    L = alg(name)
    basis = compact_basis(L)
    assert len(basis) == L.dim
    neg, pos = killing_signature_on(L, basis)
    assert (neg, pos) == (L.dim, 0)


def test_compact_basis_closed_under_bracket(alg):
    L = alg("A2")
    coords = CompactCoordinates(L)
    basis = compact_basis(L)
    for u in basis[:4]:
        for v in basis[:4]:
            w = L.bracket(u, v)
            assert coords.to_compact(w) is not None


def test_tau_fixes_compact_basis(alg):
    L = alg("B2")
    for v in compact_basis(L):
        assert vec_is_zero([a - b for a, b in zip(tau_apply(L, v), v)])


def test_tau_is_antilinear_involution(alg):
    L = alg("A2")
    i = ComplexScalar(0, 1)
    for j in range(L.dim):
        e = L.basis_vector(j)
        assert vec_is_zero([a - b for a, b in zip(tau_apply(L, tau_apply(L, e)), e)])
        lhs = tau_apply(L, [c * i for c in e])
        rhs = [c * (-i) for c in tau_apply(L, e)]
        assert vec_is_zero([a - b for a, b in zip(lhs, rhs)])


# -- involutions ---------------------------------------------------------------


def test_split_involution_verifies(alg):
    for name in ("A1", "A2", "G2"):
        L = alg(name)
        theta = split_involution(L)
        theta.verify(L)
        theta.commutes_with_tau(L)


def test_inner_involutions_verify(alg):
    L = alg("B4")
    for idx in range(L.rank):
        theta = inner_involution(L, idx)
        theta.verify(L)
        theta.commutes_with_tau(L)


def test_involution_by_kind_and_json(alg):
    L = alg("A2")
    assert involution_by_kind(L, "split").label == "split"
    assert involution_by_kind(L, "identity").label == "identity"
    with pytest.raises(ContractViolation):
        involution_by_kind(L, "outer")
    theta = involution_from_json_dict(L, {"kind": "split"})
    again = involution_from_json_dict(L, theta.to_json_dict())
    assert again.matrix.to_dense() == theta.matrix.to_dense()


def test_involution_rejects_non_automorphism(alg):
    L = alg("A1")
    from realforms.linalg import SpMat

    m = SpMat.identity(L.dim, ComplexScalar(1))
    m.set(0, 0, ComplexScalar(-1))  # flips h only: breaks [h,x] = 2x
    with pytest.raises(ContractViolation):
        Involution(m, "broken").verify(L)


# -- real forms ----------------------------------------------------------------


def test_identity_involution_gives_compact_form(alg):
    L = alg("G2")
    report, k_basis, p_basis = real_form_from_involution(L, identity_involution(L))
    assert report.dim_k == 14
    assert report.dim_p == 0
    assert report.type_name == "G2 (compact)"
    assert len(k_basis) == 14 and not p_basis


def test_split_involution_gives_split_form(alg):
    cases = {"A1": ("sl(2,R)", 1), "A2": ("sl(3,R)", 3), "A3": ("sl(4,R)", 6), "G2": ("G (split G2)", 6)}
    for name, (expect, dim_k) in cases.items():
        L = alg(name)
        report, k_basis, p_basis = real_form_from_involution(L, split_involution(L))
        assert report.type_name == expect
        assert report.dim_k == dim_k
        assert report.killing_signature == (dim_k, L.dim - dim_k)
        assert len(k_basis) == dim_k and len(p_basis) == L.dim - dim_k


def test_inner_involutions_of_b4_cover_the_so_ladder(alg):
    L = alg("B4")
    names = set()
    for idx in range(4):
        report, _, _ = real_form_from_involution(L, inner_involution(L, idx))
        names.add(report.type_name)
    assert {"so(2,7)", "so(4,5)"} <= names


def test_real_form_killing_signature_matches_cartan_split(alg):
    L = alg("B2")
    report, k_basis, p_basis = real_form_from_involution(L, split_involution(L))
    neg, pos = killing_signature_on(L, k_basis + p_basis)
    assert (neg, pos) == (report.dim_k, report.dim_p)


# -- classification table --------------------------------------------------------


def test_type_dimension():
    assert type_dimension("A3") == 15
    assert type_dimension("E6") == 78
    assert type_dimension("A1+G2+G2") == 3 + 14 + 14


def test_classify_known_rows():
    assert classify_real_form("A3", 6, 9) == "sl(4,R)"
    assert classify_real_form("E6", 36, 42) == "EI"
    assert classify_real_form("E6", 38, 40) == "EII"
    assert classify_real_form("E8", 120, 128) == "EVIII"
    assert classify_real_form("B4", 16, 20) == "so(4,5)"


def test_classify_ambiguous_d4_key():
    assert classify_real_form("D4", 16, 12) == "unclassified"


def test_classify_rejects_dimension_mismatch():
    with pytest.raises(ContractViolation):
        classify_real_form("A2", 3, 3)
