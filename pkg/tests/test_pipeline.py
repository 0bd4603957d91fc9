"""Embedding extension, balancing, and the full involution pipeline."""

import json
from importlib import resources

import pytest

from realforms.errors import ContractViolation
from realforms.forms import (
    Involution,
    identity_involution,
    involution_from_json_dict,
    split_involution,
)
from realforms.groebner import groebner, ideal_equal
from realforms.linalg import vec_is_zero
from realforms.pipeline import (
    Embedding,
    balancing_system,
    branching,
    extend_embedding,
    instantiate_solution,
    involution_system,
    is_balanced,
    make_balanced,
    rebuild_balanced,
    rescaling_trick,
    run_pipeline,
    verify_extension,
    weight_support,
)
from realforms.poly import Poly
from realforms.scalars import ComplexScalar, FieldScalar

FIXTURES = [
    "a2_in_a3",
    "principal_sl2_in_a2",
    "principal_sl2_in_g2",
    "a1a1_in_b2",
    "a1a1_in_a3",
    "b4_in_e6",
]


def load(name: str) -> Embedding:
    data = json.loads(
        resources.files("realforms").joinpath("data").joinpath(name + ".json").read_text()
    )
    return Embedding.from_json_dict(data)


def scaled(eps: Embedding, c: ComplexScalar) -> Embedding:
    ci = c.inverse()
    return Embedding(
        eps.source,
        eps.target,
        eps.g_images,
        [[v * c for v in vec] for vec in eps.x_images],
        [[v * ci for v in vec] for vec in eps.y_images],
    )


# -- embeddings ------------------------------------------------------------------


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_embeddings_verify(name):
    eps = load(name)
    eps.verify()
    ok, witnesses = is_balanced(eps)
    assert ok and not witnesses


@pytest.mark.parametrize("name", ["a2_in_a3", "principal_sl2_in_g2"])
def test_fixture_json_round_trip(name):
    eps = load(name)
    again = Embedding.from_json_dict(eps.to_json_dict())
    assert again.to_json_dict() == eps.to_json_dict()


def test_extension_covers_whole_source():
    eps = load("principal_sl2_in_a2")
    m = extend_embedding(eps)
    assert m.ncols == eps.source.dim
    assert m.nrows == eps.target.dim
    # extension is bracket preserving on all pairs, including non-generators
    src, tgt = eps.source, eps.target
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            lhs = eps.apply(src.bracket(src.basis_vector(i), src.basis_vector(j)))
            rhs = tgt.bracket(eps.apply(src.basis_vector(i)), eps.apply(src.basis_vector(j)))
            assert vec_is_zero([a - b for a, b in zip(lhs, rhs)])


def test_broken_embedding_rejected():
    eps = load("a2_in_a3")
    bad_x = [list(v) for v in eps.x_images]
    bad_x[0][4] = bad_x[0][4] + ComplexScalar(1)
    bad = Embedding(eps.source, eps.target, eps.g_images, bad_x, eps.y_images)
    with pytest.raises(ContractViolation):
        bad.verify()


def test_branching_reads_coefficients():
    eps = load("principal_sl2_in_g2")
    bd = branching(eps)
    coeffs = sorted(str(bd.a[key]) for key in bd.a)
    assert coeffs == ["sqrt(10)", "sqrt(6)"]
    for key, ca in bd.a.items():
        assert bd.b[key] == ca.conjugate()


def test_weight_support_includes_unobserved_slots():
    # the two simple-root slots of the principal sl2 share its weight
    eps = load("principal_sl2_in_a2")
    sup = weight_support(eps, 0)
    assert len(sup) == 2


# -- balancing --------------------------------------------------------------------


def test_rescaling_repairs_rational_scaling():
    eps = load("a2_in_a3")
    bad = scaled(eps, ComplexScalar(2))
    bad.verify()
    ok, witnesses = is_balanced(bad)
    assert not ok and witnesses
    res = rescaling_trick(bad)
    assert res.ok
    assert is_balanced(res.embedding)[0]
    res.embedding.verify()


def test_rescaling_repairs_radical_scaling():
    eps = load("principal_sl2_in_g2")
    bad = scaled(eps, ComplexScalar(FieldScalar.parse("sqrt(2)")))
    eps2, action, _ = make_balanced(bad)
    assert action == "rescaled"
    assert is_balanced(eps2)[0]


def test_unit_phase_scaling_stays_balanced():
    # |c| = 1 scalings commute with the conjugation symmetry
    eps = load("a2_in_a3")
    phased = scaled(eps, ComplexScalar(0, 1))
    phased.verify()
    assert is_balanced(phased)[0]


def test_make_balanced_identity_on_balanced_input():
    eps = load("a1a1_in_b2")
    eps2, action, notes = make_balanced(eps)
    assert action == "already-balanced"
    assert eps2 is eps


def test_quartic_scaling_condition_falls_back_to_rebuild():
    # the long target root demands delta^4 = 1 from one simple scaling,
    # which the square-only shortcut refuses; the full system takes over
    eps = load("a1a1_in_b2")
    bent = scaled(eps, ComplexScalar.parse("3/5 * sqrt(5)"))
    bent.verify()
    assert not is_balanced(bent)[0]
    fixed, action, notes = make_balanced(bent)
    assert action == "rebalanced"
    assert any(n.startswith("free balancing parameters pinned") for n in notes)
    assert is_balanced(fixed)[0]
    fixed.verify()


def test_balancing_system_vanishes_on_known_solution():
    eps = load("principal_sl2_in_a2")
    vars, polys, pairs = balancing_system(eps)
    point = {}
    for k, (i, bi) in enumerate(pairs):
        c = eps.x_images[i][eps.target.rank + bi]
        c = c if isinstance(c, ComplexScalar) else ComplexScalar(c)
        point[f"s{k + 1}"] = c.re
        point[f"t{k + 1}"] = c.im
    for p in polys:
        assert not p.evaluate(point)
    rebuilt = rebuild_balanced(eps, pairs, point, vars)
    assert rebuilt.to_json_dict() == eps.to_json_dict()


# -- involution systems -------------------------------------------------------------


def test_system_shape_and_realness():
    eps = load("a2_in_a3")
    system = involution_system(eps, split_involution(eps.source))
    assert system.dimension == 4
    assert system.variables == ("x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4")
    for p in system.q1:
        assert p.degree() <= 2
    for p in system.q2:
        assert p.degree() == 1


def test_interleaved_variable_order():
    eps = load("a2_in_a3")
    system = involution_system(eps, split_involution(eps.source), var_order="interleaved")
    assert system.variables == ("x1", "y1", "x2", "y2", "x3", "y3", "x4", "y4")
    sol = run_pipeline(eps, split_involution(eps.source), var_order="interleaved")
    assert [r.type_name for r in sol.reports] == ["sl(4,R)"]


def test_generator_mode_spans_the_same_ideal():
    eps = load("a2_in_a3")
    theta = split_involution(eps.source)
    full = involution_system(eps, theta, p2_mode="basis")
    slim = involution_system(eps, theta, p2_mode="generators")
    assert len(slim.all_polys()) < len(full.all_polys())
    assert ideal_equal(groebner(full.all_polys()), groebner(slim.all_polys()))


def test_unbalanced_input_rejected_by_system_builder():
    eps = load("a2_in_a3")
    bad = scaled(eps, ComplexScalar(2))
    with pytest.raises(ContractViolation):
        involution_system(bad, split_involution(bad.source))


# -- full pipeline -------------------------------------------------------------------


def test_pipeline_repairs_unbalanced_input():
    eps = load("a2_in_a3")
    bad = scaled(eps, ComplexScalar(2))
    result = run_pipeline(bad, split_involution(bad.source))
    assert result.balance_action == "rescaled"
    assert [r.type_name for r in result.reports] == ["sl(4,R)"]


def test_pipeline_finite_case_verifies_every_extension():
    eps = load("principal_sl2_in_g2")
    theta = split_involution(eps.source)
    result = run_pipeline(eps, theta)
    assert result.solutions.kind == "finite"
    assert len(result.involutions) == len(result.solutions.points) == 1
    for ext in result.involutions:
        ext.verify(eps.target)
        ext.commutes_with_tau(eps.target)
        verify_extension(eps, theta, ext)
    assert [r.type_name for r in result.reports] == ["G (split G2)"]
    assert result.reports[0].killing_signature == (6, 8)


def test_pipeline_composite_source():
    eps = load("a1a1_in_b2")
    theta = split_involution(eps.source)
    result = run_pipeline(eps, theta)
    assert result.solutions.kind == "finite"
    assert len(result.reports) == 2
    assert {r.type_name for r in result.reports} == {"so(2,3)"}
    for ext in result.involutions:
        verify_extension(eps, theta, ext)


def test_pipeline_identity_theta_lands_in_compact_family():
    eps = load("a2_in_a3")
    result = run_pipeline(eps, identity_involution(eps.source))
    names = sorted(r.type_name for r in result.reports)
    assert names == ["su(1,3)", "su(4)"]
    for r in result.reports:
        assert r.dim_k + r.dim_p == 15


def test_pipeline_parametric_family_is_classified_by_charpoly():
    eps = load("a2_in_a3")
    result = run_pipeline(eps, split_involution(eps.source))
    assert result.solutions.kind == "parametric"
    assert result.charpoly is not None and result.charpoly.parameter_free
    assert result.multiplicities == (6, 9)
    assert [r.type_name for r in result.reports] == ["sl(4,R)"]
    assert not result.warnings


def test_instantiated_solutions_satisfy_system():
    eps = load("a1a1_in_b2")
    theta = split_involution(eps.source)
    system = involution_system(eps, theta)
    from realforms.solve import solve_system

    sol = solve_system(system.all_polys())
    assert sol.kind == "finite"
    assert sol.points
    for pt in sol.points:
        mat = instantiate_solution(system, pt)
        Involution(mat, "candidate").verify(eps.target)


def test_parametric_family_left_unresolved():
    # two inequivalent extensions share a positive-dimensional solution set,
    # so no single characteristic polynomial exists modulo the full ideal
    eps = load("a1a1_in_a3")
    theta = split_involution(eps.source)
    result = run_pipeline(eps, theta)
    assert result.solutions.kind == "parametric"
    assert result.dimension == 7
    assert result.reports == []
    assert result.warnings == [
        "parametric solution set and parameter-dependent characteristic polynomial; "
        "family unresolved"
    ]


def test_case_split_resolves_parametric_family():
    eps = load("a1a1_in_a3")
    theta = split_involution(eps.source)
    system = involution_system(eps, theta)
    from realforms.forms import classify_real_form
    from realforms.solve import charpoly_mod_ideal, solve_system, split_cases

    gb = groebner(system.all_polys())
    names = {}
    for tag in ("x7 - 1", "x7 + 1"):
        branch = split_cases(gb, [Poly.parse(system.variables, tag)])
        assert solve_system(branch).kind != "inconsistent"
        mult = charpoly_mod_ideal(system.a_entries(), branch).eigenvalue_multiplicities()
        assert mult is not None
        names[tag] = classify_real_form(eps.target.type_name, mult[0], mult[1])
    # both real forms of sl(4, C) admitting sl(2, R) + sl(2, R)
    assert names == {"x7 - 1": "su(2,2)", "x7 + 1": "sl(4,R)"}


def test_theta_fixture_loads_against_source():
    eps = load("b4_in_e6")
    data = json.loads(
        resources.files("realforms").joinpath("data").joinpath("theta_b4_so45.json").read_text()
    )
    theta = involution_from_json_dict(eps.source, data)
    theta.verify(eps.source)
    theta.commutes_with_tau(eps.source)
    from realforms.forms import real_form_from_involution

    report, _, _ = real_form_from_involution(eps.source, theta)
    assert report.type_name == "so(4,5)"
    assert report.dim_k == 16
