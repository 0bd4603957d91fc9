"""Chevalley structure constants and bracket identities."""

import pytest

from realforms.algebra import LieAlgebra, scalar_vector, vector_strings
from realforms.errors import ContractViolation
from realforms.linalg import vec_is_zero
from realforms.scalars import ComplexScalar, FieldScalar


def test_dimensions():
    expected = {"A1": 3, "A2": 8, "A3": 15, "B2": 10, "G2": 14, "B4": 36, "E6": 78}
    for name, dim in expected.items():
        assert LieAlgebra.build(name, verify="none").dim == dim


def test_jacobi_exact_small_ranks(alg):
    # verify_jacobi(None) sweeps every triple and returns the count checked
    for name in ("A1", "A2", "A3", "B2", "G2"):
        L = alg(name)
        n = L.dim
        assert L.verify_jacobi() == n * (n - 1) * (n - 2) // 6


def test_jacobi_sampled_large_ranks(alg):
    for name in ("B4", "E6"):
        assert alg(name).verify_jacobi(sample=1000) == 1000


def test_antisymmetry_on_basis(alg):
    L = alg("B2")
    for i in range(L.dim):
        ei = L.basis_vector(i)
        assert vec_is_zero(L.bracket(ei, ei))
        for j in range(i + 1, L.dim):
            ej = L.basis_vector(j)
            lhs = L.bracket(ei, ej)
            rhs = L.bracket(ej, ei)
            assert vec_is_zero([a + b for a, b in zip(lhs, rhs)])


def test_cartan_subalgebra_is_abelian(alg):
    L = alg("G2")
    for i in range(L.rank):
        for j in range(L.rank):
            assert vec_is_zero(L.bracket(L.basis_vector(i), L.basis_vector(j)))


def test_root_vector_weights(alg):
    L = alg("A2")
    rank, rs = L.rank, L.rs
    for idx, root in enumerate(rs.roots):
        xb = L.basis_vector(rank + idx)
        for t in range(rank):
            got = L.bracket(L.basis_vector(t), xb)
            want = [c * rs.pairing(root, t) for c in xb]
            assert vec_is_zero([a - b for a, b in zip(got, want)])


def test_canonical_generators_satisfy_defining_relations(alg):
    for name in ("A2", "B2", "G2"):
        L = alg(name)
        g, x, y = L.canonical_generators()
        L.verify_canonical(g, x, y, L.rs.cartan)


def test_opposite_root_vectors_bracket_to_coroot(alg):
    L = alg("G2")
    rank, rs = L.rank, L.rs
    for idx, root in enumerate(rs.positive):
        x = L.basis_vector(rank + idx)
        y = L.basis_vector(rank + rs.npos + idx)
        h = L.bracket(x, y)
        # h acts on x_root with eigenvalue <root, root^vee> = 2
        back = L.bracket(h, x)
        assert back == [c * 2 for c in x]


def test_killing_form_nondegenerate_and_invariant(alg):
    L = alg("A2")
    gram = L.killing_gram()
    from realforms.linalg import dense_inverse

    assert dense_inverse(gram) is not None
    # associativity k([a,b],c) = k(a,[b,c]) on a few basis triples
    for (i, j, k) in [(0, 2, 5), (1, 3, 4), (2, 4, 7), (0, 1, 2)]:
        a, b, c = (L.basis_vector(t) for t in (i, j, k))
        lhs = L.killing(L.bracket(a, b), c)
        rhs = L.killing(a, L.bracket(b, c))
        assert lhs == rhs


def test_build_from_cartan_matrix_matches_named(alg):
    direct = LieAlgebra.build([[2, -1], [-3, 2]], verify="full")
    named = alg("G2")
    assert direct.dim == named.dim == 14
    assert direct.type_name == "G2"


def test_composite_build(alg):
    L = alg("A1+A1")
    assert L.dim == 6
    # the two summands commute
    x1 = L.basis_vector(L.rank + 0)
    x2 = L.basis_vector(L.rank + 1)
    assert vec_is_zero(L.bracket(x1, x2))


def test_structure_constants_integral(alg):
    L = alg("G2")
    for (i, j), entry in L.table.items():
        for k, c in entry.items():
            assert isinstance(c, int)


def test_json_round_trip(alg):
    L = alg("B2")
    data = L.to_json_dict()
    back = LieAlgebra.from_json_dict(data)
    assert back.dim == L.dim
    assert back.labels == L.labels
    assert back.table == L.table
    assert back.type_name == L.type_name


def test_scalar_vector_and_strings(alg):
    L = alg("A1")
    v = scalar_vector(L, ["1", "sqrt(2)", "-i/2"])
    assert v[1] == ComplexScalar(FieldScalar.parse("sqrt(2)"))
    texts = vector_strings(v)
    assert scalar_vector(L, texts) == v


def test_bad_verify_mode_rejected():
    with pytest.raises((ContractViolation, ValueError)):
        LieAlgebra.build("A1", verify="sometimes")
