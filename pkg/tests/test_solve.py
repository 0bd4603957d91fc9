"""Back-substitution solving and characteristic polynomials modulo an ideal."""

import json
from importlib import resources

import pytest

from realforms.errors import FieldExtensionUnsupported
from realforms.groebner import groebner
from realforms.poly import CPoly, Poly
from realforms.scalars import ComplexScalar, FieldScalar, Rational
from realforms.solve import (
    CharpolyResult,
    charpoly_mod_ideal,
    free_variables,
    is_zero_dimensional,
    solve_system,
    split_cases,
    univariate_roots,
)


def polys(vars, texts):
    return [Poly.parse(tuple(vars), t) for t in texts]


def fs(text):
    return FieldScalar.parse(text)


# -- univariate roots ----------------------------------------------------------


def test_roots_linear_and_quadratic():
    # coefficients ascending: 2 - 3x + x^2 = (x-1)(x-2)
    assert sorted(univariate_roots([fs("2"), fs("-3"), fs("1")])) == [fs("1"), fs("2")]
    assert sorted(univariate_roots([fs("-2"), fs("0"), fs("1")])) == [fs("-sqrt(2)"), fs("sqrt(2)")]


def test_roots_with_tower_coefficients():
    # (x - sqrt(2))^2 = x^2 - 2 sqrt(2) x + 2
    roots = univariate_roots([fs("2"), fs("-2*sqrt(2)"), fs("1")])
    assert roots == [fs("sqrt(2)")]


def test_roots_rational_factor_peeling():
    # (x-1)(x^2-3) has a rational root that splits off a solvable quadratic
    u = [fs("3"), fs("-3"), fs("-1"), fs("1")]
    assert sorted(univariate_roots(u)) == [fs("-sqrt(3)"), fs("1"), fs("sqrt(3)")]


def test_roots_even_polynomial():
    # x^4 - 5x^2 + 6 = (x^2-2)(x^2-3)
    u = [fs("6"), fs("0"), fs("-5"), fs("0"), fs("1")]
    got = sorted(univariate_roots(u))
    assert got == sorted([fs("sqrt(2)"), fs("-sqrt(2)"), fs("sqrt(3)"), fs("-sqrt(3)")])


def test_roots_negative_discriminant_real_only():
    assert univariate_roots([fs("1"), fs("0"), fs("1")]) == []  # x^2 + 1


def test_unsupported_extensions_raise():
    with pytest.raises(FieldExtensionUnsupported):
        univariate_roots([fs("-2"), fs("0"), fs("0"), fs("1")])  # x^3 - 2
    with pytest.raises(FieldExtensionUnsupported):
        univariate_roots([fs("-2"), fs("0"), fs("0"), fs("0"), fs("1")])  # x^4 - 2


# -- systems ---------------------------------------------------------------------


def test_finite_system():
    sol = solve_system(polys(["x", "y"], ["x^2 - 2", "y - x"]))
    assert sol.kind == "finite"
    pts = sorted(str(p["x"]) for p in sol.points)
    assert pts == ["-sqrt(2)", "sqrt(2)"]
    for p in sol.points:
        assert p["y"] == p["x"]


def test_every_point_satisfies_every_generator():
    gens = polys(["x", "y", "z"], ["x^2 - 1", "y^2 - x", "z - x*y"])
    sol = solve_system(gens)
    assert sol.kind == "finite"
    assert len(sol.points) >= 2
    for pt in sol.points:
        for g in gens:
            assert not g.evaluate(pt)


def test_inconsistent_system():
    sol = solve_system(polys(["x"], ["x - 1", "x - 2"]))
    assert sol.kind == "inconsistent"
    assert not sol.points


def test_parametric_system_reports_free_variables():
    sol = solve_system(polys(["x", "y", "z"], ["x^2 + y^2 - 1", "z - 1"]))
    assert sol.kind == "parametric"
    assert set(sol.free_vars) == {"y"}


def test_zero_dimensionality_criterion():
    gb = groebner(polys(["x", "y"], ["x^2 - y", "y^2 - 1"]))
    assert is_zero_dimensional(gb)
    gb2 = groebner(polys(["x", "y"], ["x^2 + y^2 - 1"]))
    assert not is_zero_dimensional(gb2)
    assert free_variables(gb2) == ["y"]


def test_split_cases_refines_and_degenerates():
    vars = ("x", "y")
    base = groebner(polys(vars, ["x^2 - x", "y - x"]))
    on = split_cases(base, polys(vars, ["x - 1"]))
    assert [str(g) for g in on] == ["x - 1", "y - 1"]
    contradictory = split_cases(base, polys(vars, ["1"]))
    assert [str(g) for g in contradictory] == ["1"]


def test_e8_regression_fixture_single_point():
    data = json.loads(
        resources.files("realforms").joinpath("data").joinpath("e8_a1g2g2_gb.json").read_text()
    )
    vars = tuple(data["variables"])
    sol = solve_system([Poly.parse(vars, s) for s in data["basis"]])
    assert sol.kind == "finite"
    assert len(sol.points) == 1
    pt = sol.points[0]
    xs = [str(pt[f"x{i}"]) for i in range(1, 7)]
    assert xs == ["-1", "0", "1", "-1", "1", "-1"]
    assert all(not pt[f"y{i}"] for i in range(1, 7))


# -- characteristic polynomial ----------------------------------------------------


def cmat(vars, rows):
    return [[CPoly.const(vars, ComplexScalar(c)) for c in row] for row in rows]


def test_charpoly_constant_matrix():
    vars = ("x",)
    res = charpoly_mod_ideal(cmat(vars, [[2, 1], [1, 2]]), [])
    assert res.parameter_free
    # T^2 - 4T + 3
    assert res.coeffs == [FieldScalar(1), FieldScalar(-4), FieldScalar(3)]
    assert res.eigenvalue_multiplicities() is None  # eigenvalues are 1 and 3


def test_charpoly_multiplicity_extraction():
    vars = ("x",)
    # diag(1, 1, -1): (T-1)^2 (T+1)
    res = charpoly_mod_ideal(cmat(vars, [[1, 0, 0], [0, 1, 0], [0, 0, -1]]), [])
    assert res.eigenvalue_multiplicities() == (2, 1)


def test_charpoly_reduces_modulo_ideal():
    vars = ("c", "s")
    gb = groebner(polys(vars, ["c^2 + s^2 - 1"]))
    c = CPoly(Poly.parse(vars, "c"), Poly.parse(vars, "0"))
    s = CPoly(Poly.parse(vars, "s"), Poly.parse(vars, "0"))
    # rotation-like symmetric matrix [[c, s], [s, -c]]: charpoly T^2 - (c^2+s^2) = T^2 - 1
    res = charpoly_mod_ideal([[c, s], [s, -c]], gb)
    assert res.parameter_free
    assert res.eigenvalue_multiplicities() == (1, 1)


def test_charpoly_keeps_parameters_when_unresolved():
    vars = ("a",)
    a = CPoly(Poly.parse(vars, "a"), Poly.parse(vars, "0"))
    zero = CPoly.const(vars, ComplexScalar(0))
    res = charpoly_mod_ideal([[a, zero], [zero, a]], [])
    assert not res.parameter_free
    assert res.eigenvalue_multiplicities() is None
