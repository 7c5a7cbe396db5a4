import pytest

from bicross.catalog import (
    CATALOG_NAMES,
    DEFAULT_METRIC,
    METRIC_CANDIDATES,
    KappaSearchFailure,
    MetricConvention,
    ab,
    build_kappa_poincare,
    catalog_presentation,
    kappa_data,
    kappa_translations,
    o13,
    parse_catalog_name,
    qspace,
)
from bicross.constructions import check_bicross_conditions
from bicross.errors import InputError
from bicross.hopf import check_coassociativity
from bicross.ncpoly import apply_slots, tensor_presentation
from bicross.parser import parse_expression


@pytest.mark.parametrize("name,label,ngens", [
    ("ab(3)", "ab(3)", 3),
    ("weyl(2)", "weyl(2)", 4),
    ("hl(2)", "hl(2)", 5),
    ("o13", "o13", 6),
    ("qspace", "qspace(2)", 2),
    ("translations(4)", "T(4)", 4),
])
def test_catalog_presentations(name, label, ngens):
    p = catalog_presentation(name)
    assert p.label == label
    assert p.ngens == ngens


def test_catalog_name_errors():
    assert parse_catalog_name("weyl(3)") == ("weyl", ["3"])
    for bad in ("weyl", "weyl(x)", "nonsense", "o13(2)", "weyl(1"):
        with pytest.raises(InputError):
            catalog_presentation(bad)
    assert "kappa-poincare" in CATALOG_NAMES


def test_o13_relations():
    p = o13()
    texts = [p.relation_text(r, 0) for r in p.rules() if r.remainder]
    assert "[M1,M2] = -i * M3" in texts
    assert "[N1,N2] = i * M3" in texts
    assert "[M1,N2] = -i * N3" in texts
    assert len(texts) == 12


def test_default_quantum_space():
    p = qspace()
    [rule] = [r for r in p.rules() if r.remainder]
    assert p.relation_text(rule, 0) == "[x1,x2] = -1 - x1 - x1*x2"


def test_ab_symbol():
    assert ab(2, "P").names == ["P1", "P2"]


def test_metric_conventions():
    assert DEFAULT_METRIC.name == "(+,+,+,-)"
    assert [DEFAULT_METRIC.sign(m) for m in range(1, 5)] == [1, 1, 1, -1]
    assert MetricConvention((1, 1, 1, 1)).name == "(+,+,+,+)"


@pytest.mark.parametrize("order", [1, 2, 3])
def test_kappa_translations_coassociative(order):
    A = kappa_translations(order)
    assert check_coassociativity(A, 2, samples=1).passed


@pytest.mark.parametrize("metric", METRIC_CANDIDATES[1:], ids=lambda m: m.name)
def test_wrong_metrics_break_coassociativity(metric):
    A = kappa_translations(2, metric, antipode=False)
    rep = check_coassociativity(A, 0)
    assert not rep.passed
    assert rep.failures[0].witness == "2*h^2 * (P1 (x) P4 (x) P4)"


def test_order_one_boost_coproduct():
    B = build_kappa_poincare(1)
    assert B.coproduct.image("N1").render() == (
        "(N1 (x) 1) - h * (P2 (x) M3) + h * (P3 (x) M2) - h * (P4 (x) N1) + (1 (x) N1)"
    )


@pytest.mark.parametrize("order", [1, 2, 3])
def test_kappa_poincare_builds(order):
    B = build_kappa_poincare(order)
    assert not isinstance(B, KappaSearchFailure)
    assert B.report.passed
    assert B.counital and B.hopf
    assert B.kappa.convention == "metric=(+,+,+,-) lorentz=- eps123=+1"


def test_convention_search_records_rejections():
    B = build_kappa_poincare(2)
    rejected = dict(B.search)
    assert rejected["metric=(+,+,+,-) lorentz=+ eps123=+1"] == "module:H-relation[M1,M2;P1] witness=2 * P2"
    assert "convention metric=(+,+,+,-) lorentz=- eps123=+1" in B.notes


def test_search_with_only_wrong_metric_fails():
    res = build_kappa_poincare(2, metrics=METRIC_CANDIDATES[1:2])
    assert isinstance(res, KappaSearchFailure)
    assert res.candidates[0][0] == "metric=(-,-,-,+)"
    assert "coassoc" in res.candidates[0][1]


def test_crossed_product_brackets_follow_action():
    # right crossed product: a g = g a + a <| g for primitive g
    B = build_kappa_poincare(1)
    p, N = B.alg, 1
    M1, N1 = p.gen("M1", N), p.gen("N1", N)
    P1, P2, P4 = p.gen("P1", N), p.gen("P2", N), p.gen("P4", N)
    kd = B.kappa
    assert P1 * N1 - N1 * P1 == p.embed_a(kd.action.act(kd.A.alg.gen("P1", N), kd.H.alg.gen("N1", N)))
    assert (P1 * N1 - N1 * P1).render() == "-i * P4"
    assert (P2 * M1 - M1 * P2).render() == "i * P3"
    assert (P4 * N1 - N1 * P4).render() == "-i * P1"


@pytest.mark.parametrize("corruption", ["coaction-sign", "beta-pi", "boost-action-sign"])
def test_corruptions_fail_conditions(corruption):
    kd = kappa_data(2, corruptions=(corruption,))
    rep = check_bicross_conditions(kd.bicross_data(), 2, samples=1)
    assert not rep.passed
    assert all(r.witness and r.witness != "0" for r in rep.failures)


def test_kappa_order_one_coassociativity_by_hand():
    A = kappa_translations(1)
    T3 = tensor_presentation([A.alg] * 3)
    D = A.coproduct
    for i in (1, 2, 3):
        P = A.alg.gen(f"P{i}", 1)
        hand = parse_expression(
            f"(P{i} (x) 1 (x) 1) + (1 (x) P{i} (x) 1) + (1 (x) 1 (x) P{i})"
            f" + h*(P{i} (x) P4 (x) 1) + h*(P{i} (x) 1 (x) P4) + h*(1 (x) P{i} (x) P4)",
            T3, 1,
        )
        assert apply_slots(D(P), [D, None]) == hand
        assert apply_slots(D(P), [None, D]) == hand
