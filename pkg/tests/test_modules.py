"""Weight decompositions and intertwiner spaces between module structures."""

import random

import pytest

from realforms.algebra import LieAlgebra
from realforms.errors import ContractViolation
from realforms.linalg import SpMat, SpanTracker, kernel_basis
from realforms.modules import (
    ModuleRep,
    end_rho_phi_basis,
    weight_decompose,
)
from realforms.scalars import ComplexScalar, FieldScalar, Rational


def C(x):
    return ComplexScalar(x)


# -- exact irreducible building blocks -----------------------------------------


def sl2_irrep(n: int) -> tuple[list, list, list]:
    """h, e, f on the (n+1)-dimensional module, acting on columns."""
    d = n + 1
    h = SpMat(d, d)
    e = SpMat(d, d)
    f = SpMat(d, d)
    for k in range(d):
        h.set(k, k, C(n - 2 * k))
        if k + 1 < d:
            f.set(k + 1, k, C(1))
            e.set(k, k + 1, C((k + 1) * (n - k)))
    return [h], [e], [f]


def sl3_standard() -> tuple[list, list, list]:
    def unit(i, j):
        m = SpMat(3, 3)
        m.set(i, j, C(1))
        return m

    def diag(*cs):
        m = SpMat(3, 3)
        for i, c in enumerate(cs):
            if c:
                m.set(i, i, C(c))
        return m

    h = [diag(1, -1, 0), diag(0, 1, -1)]
    e = [unit(0, 1), unit(1, 2)]
    f = [unit(1, 0), unit(2, 1)]
    return h, e, f


def direct_sum(parts: list) -> ModuleRep:
    dim = sum(p[0][0].nrows for p in parts)
    rank = len(parts[0][0])
    gs, xs, ys = [], [], []
    for t in range(rank):
        g = SpMat(dim, dim)
        x = SpMat(dim, dim)
        y = SpMat(dim, dim)
        off = 0
        for hp, ep, fp in parts:
            for (i, j, v) in hp[t].items():
                g.set(off + i, off + j, v)
            for (i, j, v) in ep[t].items():
                x.set(off + i, off + j, v)
            for (i, j, v) in fp[t].items():
                y.set(off + i, off + j, v)
            off += hp[t].nrows
        gs.append(g)
        xs.append(x)
        ys.append(y)
    return ModuleRep(dim, gs, xs, ys)


def conjugated(rep: ModuleRep, rng: random.Random) -> ModuleRep:
    """Equivalent module structure through a random rational basis change."""
    n = rep.dim
    from realforms.linalg import dense_inverse

    while True:
        dense = [
            [FieldScalar(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)
        ]
        for i in range(n):
            dense[i][i] = dense[i][i] + FieldScalar(1)
        try:
            inv = dense_inverse(dense)
        except Exception:
            continue
        if inv is not None:
            break
    s = SpMat.from_dense([[C(v) for v in row] for row in dense])
    si = SpMat.from_dense([[C(v) for v in row] for row in inv])
    conv = lambda mats: [s * m * si for m in mats]
    return ModuleRep(n, conv(rep.g_mats), conv(rep.x_mats), conv(rep.y_mats))


def intertwiner_dimension_bruteforce(rho: ModuleRep, phi: ModuleRep) -> list:
    """Solve M rho(z) = phi(z) M entrywise as one linear system."""
    n = rho.dim
    rows = []
    for z_r, z_p in zip(rho.generator_matrices(), phi.generator_matrices()):
        rd = z_r.to_dense()
        pd = z_p.to_dense()
        for i in range(n):
            for j in range(n):
                row = [FieldScalar(0)] * (n * n)
                # (M z_r)_{ij} = sum_k M_{ik} (z_r)_{kj}
                for k in range(n):
                    c = rd[k][j]
                    if c:
                        row[i * n + k] = row[i * n + k] + c.real_value()
                # (z_p M)_{ij} = sum_k (z_p)_{ik} M_{kj}
                for k in range(n):
                    c = pd[i][k]
                    if c:
                        row[k * n + j] = row[k * n + j] - c.real_value()
                if any(row):
                    rows.append(row)
    return kernel_basis(rows, n * n)


# -- weight decomposition --------------------------------------------------------


def test_sl2_string_weights():
    rep = direct_sum([sl2_irrep(2), sl2_irrep(4)])
    wd = weight_decompose(rep)
    assert wd.multiplicity((2,)) == 1
    assert wd.multiplicity((4,)) == 1
    assert wd.commutant_dimension() == 2
    assert wd.weight_multiset()[(0,)] == 2


def test_multiplicity_two_block():
    rep = direct_sum([sl2_irrep(2), sl2_irrep(2), sl2_irrep(0)])
    wd = weight_decompose(rep)
    assert wd.multiplicity((2,)) == 2
    assert wd.multiplicity((0,)) == 1
    assert wd.commutant_dimension() == 5


def test_adjoint_restriction_a2_in_a3():
    tgt = LieAlgebra.build("A3")
    g, x, y = tgt.canonical_generators()
    rep = ModuleRep.from_action(tgt, g[:2], x[:2], y[:2])
    wd = weight_decompose(rep)
    assert wd.commutant_dimension() == 4


def test_principal_sl2_in_g2_module_types():
    tgt = LieAlgebra.build("G2")
    r6 = ComplexScalar(FieldScalar.parse("sqrt(6)"))
    r10 = ComplexScalar(FieldScalar.parse("sqrt(10)"))
    i1 = tgt.rank + tgt.rs.root_index[(1, 0)]
    i2 = tgt.rank + tgt.rs.root_index[(0, 1)]

    def vec(entries):
        v = [ComplexScalar(0)] * tgt.dim
        for k, c in entries.items():
            v[k] = c
        return v

    h = vec({0: C(6), 1: C(10)})
    x = vec({i1: r6, i2: r10})
    y = vec({i1 + tgt.rs.npos: r6, i2 + tgt.rs.npos: r10})
    rep = ModuleRep.from_action(tgt, [h], [x], [y])
    wd = weight_decompose(rep)
    assert wd.multiplicity((2,)) == 1
    assert wd.multiplicity((10,)) == 1
    assert wd.commutant_dimension() == 2


# -- intertwiner bases -------------------------------------------------------------


def check_intertwiner_basis(rho, phi):
    maps = end_rho_phi_basis(rho, phi, verify=True)
    oracle = intertwiner_dimension_bruteforce(rho, phi)
    assert len(maps) == len(oracle)
    n = rho.dim
    tracker = SpanTracker(n * n)
    for a in maps:
        # each map intertwines every generator pair exactly
        for z_r, z_p in zip(rho.generator_matrices(), phi.generator_matrices()):
            lhs = a * z_r
            rhs = z_p * a
            assert lhs.to_dense() == rhs.to_dense()
        flat = [a.get(i, j) for i in range(n) for j in range(n)]
        assert tracker.add(flat) is not None  # independent
    assert tracker.dim() == len(maps)


def test_randomized_direct_sums_match_bruteforce():
    rng = random.Random(20240817)
    menu_a1 = [0, 1, 2, 3, 4]
    for trial in range(8):
        k = rng.randint(1, 3)
        ns = [rng.choice(menu_a1) for _ in range(k)]
        rho = direct_sum([sl2_irrep(n) for n in ns])
        phi = conjugated(direct_sum([sl2_irrep(n) for n in rng.sample(ns, k)]), rng)
        check_intertwiner_basis(rho, phi)


def test_randomized_rank_two_direct_sums():
    rng = random.Random(99)
    for trial in range(2):
        parts = [sl3_standard() for _ in range(rng.randint(1, 2))]
        rho = direct_sum(parts)
        phi = conjugated(direct_sum(parts[::-1]), rng)
        check_intertwiner_basis(rho, phi)


def test_inequivalent_modules_rejected():
    # same dimension, different weight content
    rho = direct_sum([sl2_irrep(2), sl2_irrep(0)])
    phi = direct_sum([sl2_irrep(3)])
    with pytest.raises(ContractViolation):
        end_rho_phi_basis(rho, phi, verify=True)
