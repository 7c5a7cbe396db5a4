"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
``ACCEPTANCE <n> <name>: PASS|FAIL`` line per criterion.
"""

import time

import pytest

from bicross.catalog import (
    METRIC_CANDIDATES,
    KappaSearchFailure,
    ab,
    build_hl_bicross,
    build_kappa_poincare,
    build_weyl_noncounital,
    crossed_hl,
    crossed_weyl,
    duality_action,
    hl,
    kappa_data,
    kappa_translations,
    o13,
    qspace,
    translations,
    weyl,
)
from bicross.constructions import (
    ConstructionFailure,
    QuantumSpaceSpec,
    bicrossproduct,
    check_bicross_conditions,
    half_primitive_coproduct,
    heisenberg_twist,
    primitive_coproduct,
    star_commutator,
    theta_twist,
    twist_cocycle_check,
    verify_crossed_product_matches,
)
from bicross.hopf import (
    ObstructionCertificate,
    check_antipode_axiom,
    check_coassociativity,
    check_cocommutativity,
    check_counit_axiom,
    solve_antipode,
    solve_counit,
)
from bicross.morphism import verify_morphism
from bicross.ncpoly import apply_slots, check_confluence, tensor_elements, tensor_presentation
from bicross.parser import parse_expression
from bicross.report import PASS, SKIP
from bicross.scalars import I, DeformationSeries
from bicross.suites import RunOptions, run_suite
from strategies import golden

CONDITIONS = ("bicross:A1", "bicross:A2", "bicross:B", "bicross:B2", "bicross:C")


@pytest.fixture(scope="module")
def kappa4():
    start = time.perf_counter()
    B = build_kappa_poincare(4)
    return B, time.perf_counter() - start


def test_criterion_01_kappa_conditions_order4(kappa4):
    B, elapsed = kappa4
    assert not isinstance(B, KappaSearchFailure)
    assert B.kappa.convention == "metric=(+,+,+,-) lorentz=- eps123=+1"
    assert elapsed < 120
    rep = B.report
    for cond in CONDITIONS:
        recs = rep.of(cond)
        assert recs and all(r.status == PASS for r in recs), cond
    P = [f"P{m}" for m in range(1, 5)]
    L = [f"{t}{i}" for t in "MN" for i in (1, 2, 3)]
    for cond in ("bicross:A1", "bicross:A2", "bicross:C"):
        assert {f"{p},{l}" for p in P for l in L} <= {r.gens for r in rep.of(cond)}
    assert {f"{a},{b}" for a in L for b in L} <= {r.gens for r in rep.of("bicross:B")}
    # the same conditions recomputed directly on the assembled data
    again = check_bicross_conditions(B.kappa.bicross_data(), 2, samples=2, seed=7)
    assert again.passed


def test_criterion_02_kappa_coassociativity():
    A = kappa_translations(4, antipode=False)
    rep = check_coassociativity(A, 0)
    assert rep.passed
    assert {r.gens for r in rep.records} >= {"P1", "P2", "P3", "P4"}

    A1 = kappa_translations(1, antipode=False)
    T3 = tensor_presentation([A1.alg] * 3)
    D = A1.coproduct
    hand = {
        f"P{i}": f"(P{i} (x) 1 (x) 1) + (1 (x) P{i} (x) 1) + (1 (x) 1 (x) P{i})"
                 f" + h*(P{i} (x) P4 (x) 1) + h*(P{i} (x) 1 (x) P4) + h*(1 (x) P{i} (x) P4)"
        for i in (1, 2, 3)
    }
    hand["P4"] = "(P4 (x) 1 (x) 1) + (1 (x) P4 (x) 1) + (1 (x) 1 (x) P4)" + "".join(
        f" + h*(P{m} (x) 1 (x) P{m}) + h*(1 (x) P{m} (x) P{m}) + h*(P{m} (x) P{m} (x) 1)" for m in (1, 2, 3)
    )
    for g, src in hand.items():
        expect = parse_expression(src, T3, 1)
        P = A1.alg.gen(g, 1)
        assert apply_slots(D(P), [D, None]) == expect, g
        assert apply_slots(D(P), [None, D]) == expect, g


def test_criterion_03_kappa_counit_and_antipode():
    A = kappa_translations(3, antipode=False)
    sol = solve_counit(A.alg, A.coproduct)
    assert not isinstance(sol, ObstructionCertificate)
    assert not sol.free
    for g in ("P1", "P2", "P3", "P4"):
        assert sol.values[g].is_zero()
    A.counit = sol.morphism
    S = solve_antipode(A)
    A.antipode = S
    rep = check_antipode_axiom(A, 2, samples=2)
    assert rep.passed and rep.records

    A1 = kappa_translations(1)
    for i in (1, 2, 3):
        # S(P_i) (1 + h P4) + P_i = 0 at order h
        hand = parse_expression(f"-P{i} + h*P{i}*P4", A1.alg, 1)
        assert A1.antipode.image(f"P{i}") == hand


def test_criterion_04_crossed_products():
    for n in (1, 2, 3):
        assert verify_crossed_product_matches(crossed_weyl(n), weyl(n), 3).passed
    for n in (1, 2):
        assert verify_crossed_product_matches(crossed_hl(n), hl(n), 3).passed

    lit = crossed_weyl(2, literal=True)
    direct = verify_crossed_product_matches(lit, weyl(2), 3)
    assert not direct.passed
    flip = {"P1": ("P1", -1), "P2": ("P2", -1)}
    assert verify_crossed_product_matches(lit, weyl(2), 3, bijection=flip).passed
    lit_hl = crossed_hl(1, literal=True)
    assert not verify_crossed_product_matches(lit_hl, hl(1), 3).passed
    assert verify_crossed_product_matches(lit_hl, hl(1), 3, bijection={"P1": ("P1", -I)}).passed

    opts = RunOptions(order=0)
    catalog_rep = run_suite("weyl(2)", "crossed", opts)
    literal_rep = run_suite("weyl(2)", "crossed-literal", opts)
    assert catalog_rep.passed and literal_rep.passed
    assert "note: action table: catalog" in catalog_rep.render("text")
    assert "note: action table: literal" in literal_rep.render("text")


def test_criterion_05_weyl_counit_obstruction():
    cert = solve_counit(weyl(1), order=2)
    assert isinstance(cert, ObstructionCertificate)
    assert cert.relation_text() == "[P1,x1] = 1"
    for values in ({}, {"P1": 3, "x1": -2}, {"P1": 1}):
        lhs, rhs = cert.replay(values)
        assert lhs.is_zero()
        assert rhs == DeformationSeries.constant(1, 2)


def test_criterion_06_half_primitive_morphism():
    for n in (1, 2, 3):
        for side in ("left", "right"):
            assert verify_morphism(half_primitive_coproduct(weyl(n), side, 1).coproduct).passed
    full = QuantumSpaceSpec(3, constant={(3, 2): 1}, linear={(3, 2, 1): 2}, quadratic={(3, 2, 1, 2): 1})
    p = full.presentation(samples=200, degree=4)
    assert verify_morphism(half_primitive_coproduct(p, "left", 1).coproduct).passed

    res = primitive_coproduct(weyl(1), 0)
    assert isinstance(res, ConstructionFailure)
    [fail] = res.report.failures
    assert fail.witness == tensor_elements(weyl(1).one(0), weyl(1).one(0)).render() == "(1 (x) 1)"


def test_criterion_07_hl_golden():
    B = build_hl_bicross(1)
    assert B.report.passed
    assert B.render() == golden("hl1_bicross.txt")
    for n in (1, 2):
        B = build_hl_bicross(n)
        for g in B.alg.names:
            x = B.alg.gen(g, 0)
            one = B.alg.one(0)
            assert B.coproduct.image(g) == tensor_elements(x, one) + tensor_elements(one, x)
    D2 = "\n".join(build_hl_bicross(2).coproduct.render()).replace("Delta", "D")
    assert D2 == golden("hl2_coproduct.txt")


def test_criterion_08_weyl_noncounital():
    for n in (1, 2):
        B = build_weyl_noncounital(n)
        p = B.alg
        one = p.one(0)
        for i in range(1, n + 1):
            x, P = p.gen(f"x{i}", 0), p.gen(f"P{i}", 0)
            assert B.coproduct.image(f"x{i}") == tensor_elements(x, one)
            assert B.coproduct.image(f"P{i}") == tensor_elements(P, one) + tensor_elements(one, P)
        assert not check_cocommutativity(B).passed
        assert B.counit is None
        rep = check_counit_axiom(B)
        assert {r.status for r in rep.records} == {SKIP}
        assert rep.notes
    assert build_weyl_noncounital(1).render() == golden("weyl_noncounital1.txt")


def test_criterion_09_confluence():
    kappa = build_kappa_poincare(1)
    presentations = [
        ab(3), weyl(1), weyl(2), weyl(3), hl(1), hl(2), o13(), qspace(), translations(4),
        crossed_weyl(2), crossed_hl(2), build_hl_bicross(1).alg, kappa.alg,
    ]
    for p in presentations:
        rep = check_confluence(p, degree=5, samples=1000)
        assert rep.confluent and not rep.failures, p.label
        assert rep.samples_checked == 1000


def test_criterion_10_twists():
    T3 = primitive_coproduct(translations(3), 3)
    F = theta_twist(T3, {(1, 2): 1, (1, 3): -2, (2, 3): I})
    assert twist_cocycle_check(F).passed
    H2 = primitive_coproduct(hl(2), 3)
    G = heisenberg_twist(H2, {(1, 2): 1}, {1: 2, 2: -1}, ["P1", "P2"], "C")
    assert twist_cocycle_check(G).passed

    N = 3
    H, X, action = duality_action(3, N)
    theta = {(1, 2): 3, (1, 3): -1, (2, 3): 2}
    F = theta_twist(H, theta)
    h = DeformationSeries.h(N)
    for a in range(1, 4):
        for b in range(1, 4):
            t = F.theta.get((a, b), 0)
            got = star_commutator(F, action, f"x{a}", f"x{b}")
            assert got == X.scalar(h * -4 * t, N)
            if a == b:
                assert got.is_zero()


def test_criterion_11_negative_controls():
    for corruption in ("coaction-sign", "beta-pi", "boost-action-sign"):
        kd = kappa_data(2, corruptions=(corruption,))
        rep = check_bicross_conditions(kd.bicross_data(), 2, samples=1)
        assert not rep.passed, corruption
        assert all(r.witness and r.witness != "0" for r in rep.failures)
        assert isinstance(bicrossproduct(kd.bicross_data(), degree=2, samples=1), ConstructionFailure)
        res = build_kappa_poincare(2, lorentz_signs=(-1,), eps_signs=(1,), corruptions=(corruption,))
        assert isinstance(res, KappaSearchFailure), corruption
    for metric in METRIC_CANDIDATES[1:]:
        rep = check_coassociativity(kappa_translations(2, metric, antipode=False), 0)
        assert not rep.passed
        assert all(r.witness and r.witness != "0" for r in rep.failures)
        res = build_kappa_poincare(2, metrics=(metric,))
        assert isinstance(res, KappaSearchFailure)
