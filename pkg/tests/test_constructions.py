import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicross.catalog import (
    build_hl_bicross,
    build_lie_type_bicross,
    build_weyl_noncounital,
    crossed_hl,
    crossed_weyl,
    duality_action,
    hl,
    kappa_data,
    translations,
    weyl,
)
from bicross.constructions import (
    BicrossData,
    ConfluenceError,
    ConstructionFailure,
    QuantumSpaceSpec,
    TwistSpec,
    bicrossproduct,
    check_bicross_conditions,
    crossed_coproduct,
    half_primitive_coproduct,
    half_primitive_image,
    heisenberg_twist,
    primitive_coproduct,
    star_commutator,
    star_product,
    theta_twist,
    twist_cocycle_check,
    verify_crossed_product_matches,
)
from bicross.errors import InputError
from bicross.hopf import check_cocommutativity
from bicross.morphism import LeftCoaction, verify_morphism
from bicross.ncpoly import tensor_elements
from bicross.scalars import I, DeformationSeries
from strategies import elements, golden

FULL_QSPACE = QuantumSpaceSpec(3, constant={(3, 2): 1}, linear={(3, 2, 1): 2}, quadratic={(3, 2, 1, 2): 1})


def test_primitive_on_weyl_fails_with_unit_residual():
    res = primitive_coproduct(weyl(1), 0)
    assert isinstance(res, ConstructionFailure)
    [fail] = res.report.failures
    assert fail.witness == "(1 (x) 1)"
    assert fail.gens == "P1,x1"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_half_primitive_is_morphism_on_weyl(n):
    for side in ("left", "right"):
        B = half_primitive_coproduct(weyl(n), side, 1)
        assert verify_morphism(B.coproduct).passed
        assert not B.counital


def test_half_primitive_on_full_quantum_space():
    p = FULL_QSPACE.presentation(samples=100, degree=4)
    assert verify_morphism(half_primitive_coproduct(p, "left", 1).coproduct).passed


@given(data=st.data())
def test_half_primitive_acts_as_e_tensor_one(data):
    W = weyl(2)
    B = half_primitive_coproduct(W, "left", 1)
    e = data.draw(elements(W, order=1, degree=3))
    assert B.coproduct(e) == half_primitive_image(e) == tensor_elements(e, W.one(1))


def test_quantum_space_rejects_bad_indices():
    with pytest.raises(InputError):
        QuantumSpaceSpec(2, constant={(1, 2): 1}).presentation()
    with pytest.raises(InputError):
        QuantumSpaceSpec(3, quadratic={(3, 1, 2, 1): 1}).presentation()


def test_non_confluent_quantum_space_detected():
    spec = QuantumSpaceSpec(3, linear={(2, 1, 3): 1, (3, 2, 1): 1, (3, 1, 1): 1})
    with pytest.raises(ConfluenceError):
        spec.presentation(samples=50, degree=3)


@pytest.mark.parametrize("n", [1, 2])
def test_crossed_weyl_reproduces_weyl(n):
    rep = verify_crossed_product_matches(crossed_weyl(n), weyl(n), 3)
    assert rep.passed, rep.render()


def test_literal_action_gives_sign_flipped_isomorph():
    built = crossed_weyl(1, literal=True)
    assert built.action.table_kind == "literal"
    direct = verify_crossed_product_matches(built, weyl(1), 3)
    assert not direct.passed
    assert {r.witness for r in direct.failures} >= {"2"}
    flipped = verify_crossed_product_matches(built, weyl(1), 3, bijection={"P1": ("P1", -1)})
    assert flipped.passed


def test_crossed_hl_matches_and_literal_isomorph():
    assert verify_crossed_product_matches(crossed_hl(1), hl(1), 3).passed
    lit = crossed_hl(1, literal=True)
    assert not verify_crossed_product_matches(lit, hl(1), 3).passed
    assert verify_crossed_product_matches(lit, hl(1), 3, bijection={"P1": ("P1", -I)}).passed


def test_hl_bicross_golden():
    B = build_hl_bicross(1)
    assert B.render() == golden("hl1_bicross.txt")
    assert B.report.passed


def test_hl2_bicross_primitive():
    B = build_hl_bicross(2)
    assert "\n".join(B.coproduct.render()).replace("Delta", "D") == golden("hl2_coproduct.txt")


def test_weyl_noncounital_golden():
    B = build_weyl_noncounital(1)
    assert B.render() == golden("weyl_noncounital1.txt")
    assert not check_cocommutativity(B).passed


def test_hl_bicross_conditions_on_random_elements():
    H, X, action = duality_action(1, 1, central=True)
    A = primitive_coproduct(X, 1)
    data = BicrossData(H, A, action, LeftCoaction(A, H, order=1))
    rep = check_bicross_conditions(data, degree=3, samples=4, seed=3)
    assert rep.passed
    assert {r.condition for r in rep.records} >= {"bicross:A1", "bicross:A2", "bicross:B", "bicross:B2",
                                                  "bicross:C"}


def test_crossed_coproduct_plain_tensor():
    H, X, action = duality_action(1, 0, central=True)
    A = primitive_coproduct(X, 0)
    B = crossed_coproduct(H, A, LeftCoaction(A, H, order=0))
    assert B.counital
    assert B.coproduct.image("x1").render() == "(x1 (x) 1) + (1 (x) x1)"


@pytest.mark.parametrize("corruption", ["coaction-sign", "beta-pi", "boost-action-sign"])
def test_corrupted_kappa_data_does_not_build(corruption):
    kd = kappa_data(1, corruptions=(corruption,))
    res = bicrossproduct(kd.bicross_data(), degree=2, samples=1)
    assert isinstance(res, ConstructionFailure)
    assert all(r.witness for r in res.report.failures)


def test_lie_type_bicross():
    B = build_lie_type_bicross({(1, 2): {2: 1}}, {}, {(1, 1): {1: 1}}, g_dim=2, h_dim=1)
    assert B.report.passed
    assert B.alg.relation_text(B.alg.rule("k1", "g1")) == "[g1,k1] = -k1"


def test_lie_type_jacobi_violation():
    with pytest.raises(InputError, match="Jacobi"):
        build_lie_type_bicross({(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {1: 1}}, {}, {}, g_dim=3, h_dim=1)


# -- twists ----------------------------------------------------------------------------------


@pytest.fixture(scope="module")
def translations3():
    return primitive_coproduct(translations(3), 3)


def test_theta_twist_cocycle(translations3):
    F = theta_twist(translations3, {(1, 2): 1, (1, 3): -2, (2, 3): I})
    assert twist_cocycle_check(F).passed


def test_heisenberg_twist_cocycle():
    B = primitive_coproduct(hl(2), 3)
    F = heisenberg_twist(B, {(1, 2): 1}, {1: 2, 2: -1}, ["P1", "P2"], "C")
    assert twist_cocycle_check(F).passed


def test_twist_rejects_non_commuting_letters():
    B = primitive_coproduct(hl(1), 2)
    X = tensor_elements(B.alg.gen("P1", 2), B.alg.gen("x1", 2)).scale(DeformationSeries.h(2))
    with pytest.raises(InputError):
        TwistSpec(B, [X])


def test_non_antisymmetric_theta_rejected(translations3):
    with pytest.raises(InputError):
        theta_twist(translations3, {(1, 2): 1, (2, 1): 1})


@pytest.mark.parametrize("literal", [False, True])
def test_star_commutator_constant(literal):
    N = 2
    H, X, action = duality_action(3, N, literal=literal)
    theta = {(1, 2): 3, (1, 3): -1, (2, 3): 0}
    F = theta_twist(H, theta)
    h = DeformationSeries.h(N)
    for a in range(1, 4):
        for b in range(1, 4):
            t = F.theta.get((a, b), 0)
            expect = X.scalar(h * -4 * t, N)
            assert star_commutator(F, action, f"x{a}", f"x{b}") == expect


def test_star_product_on_nonlinear_functions():
    N = 2
    H, X, action = duality_action(2, N)
    F = theta_twist(H, {(1, 2): 1})
    x1, x2 = X.gen("x1", N), X.gen("x2", N)
    # F^-1 = exp(-2h (P1 (x) P2 - P2 (x) P1)); only the first-order term survives on x1^2 (x) x2
    got = star_product(F, action, x1 * x1, x2)
    h = DeformationSeries.h(N)
    assert got == x1 * x1 * x2 + x1.scale(h * -4)
