"""Root system enumeration from Cartan matrices."""

import pytest

from realforms.errors import ContractViolation
from realforms.roots import RootSystem, cartan_matrix, detect_type, parse_type_name


def rs(name):
    return RootSystem(cartan_matrix(name))


def test_positive_root_counts():
    expected = {"A1": 1, "A2": 3, "A3": 6, "B2": 4, "G2": 6, "B4": 16, "D4": 12, "F4": 24, "E6": 36}
    for name, npos in expected.items():
        r = rs(name)
        assert r.npos == npos
        assert len(r.roots) == 2 * npos


def test_roots_ordered_positives_then_matching_negatives():
    r = rs("B2")
    for i in range(r.npos):
        pos = r.roots[i]
        neg = r.roots[r.npos + i]
        assert neg == tuple(-c for c in pos)
        assert sum(pos) > 0


def test_positives_sorted_by_height():
    r = rs("G2")
    heights = [sum(root) for root in r.positive]
    assert heights == sorted(heights)
    assert sum(r.positive[-1]) == 5  # highest root of G2 has height 5


def test_root_index_inverts_roots():
    r = rs("A3")
    for i, root in enumerate(r.roots):
        assert r.root_index[root] == i


def test_pairing_on_simples_recovers_cartan():
    for name in ("A2", "B2", "G2", "F4"):
        r = rs(name)
        for i in range(r.rank):
            simple = tuple(1 if j == i else 0 for j in range(r.rank))
            for t in range(r.rank):
                assert r.pairing(simple, t) == r.cartan[t][i]


def test_add_and_neg():
    r = rs("A2")
    a, b = (1, 0), (0, 1)
    assert r.add(a, b) == (1, 1)
    assert r._neg((1, 1)) == (-1, -1)
    assert (1, 1) in r.root_index
    assert (2, 1) not in r.root_index


def test_composite_type():
    r = rs("A1+A1")
    assert r.rank == 2
    assert r.npos == 2
    assert r.cartan[0][1] == 0


def test_parse_type_name():
    assert parse_type_name("A2+G2") == [("A", 2), ("G", 2)]
    assert parse_type_name("b3") == [("B", 3)]
    with pytest.raises(ValueError):
        parse_type_name("H7")


def test_detect_type_round_trips():
    for name in ("A1", "A3", "B2", "B4", "C3", "D4", "G2", "F4", "E6", "A1+A1", "A2+G2"):
        assert detect_type(cartan_matrix(name)) == name


def test_detect_type_handles_permuted_nodes():
    # G2 with nodes swapped is still G2
    assert detect_type([[2, -1], [-3, 2]]) == "G2"


def test_invalid_cartan_rejected():
    with pytest.raises((ContractViolation, ValueError)):
        RootSystem([[2, -1], [-4, 2]])  # affine, infinitely many roots
    with pytest.raises((ContractViolation, ValueError)):
        RootSystem([[2, 1], [1, 2]])  # positive off-diagonal


def test_length_sq_long_short():
    r = rs("G2")
    lens = {r.length_sq(root) for root in r.positive}
    assert len(lens) == 2  # two root lengths
    long_over_short = max(lens) / min(lens)
    assert long_over_short == 3
