from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicross.catalog import ab, hl, o13, qspace, weyl
from bicross.errors import InputError, NotASquareRoot
from bicross.ncpoly import (
    Presentation,
    central_invert,
    central_sqrt,
    check_confluence,
    flip,
    normal_form,
    regroup,
    tensor_elements,
    tensor_presentation,
)
from bicross.scalars import I, DeformationSeries
from strategies import elements

W1 = weyl(1)
HL1 = hl(1)
O13 = o13()
QS = qspace()


def weyl_monomial(a, b, N=0):
    P, x = W1.gen("P1", N), W1.gen("x1", N)
    return P ** a * x ** b


def weyl_oracle(a, b, c, d):
    """(P^a x^b)(P^c x^d) via x^b P^c = sum_k (-1)^k k! C(b,k) C(c,k) P^(c-k) x^(b-k)."""
    out = W1.zero(0)
    for k in range(min(b, c) + 1):
        coeff = (-1) ** k * factorial(k) * comb(b, k) * comb(c, k)
        out = out + W1.monomial((0,) * (a + c - k) + (1,) * (b - k + d), 0, coeff)
    return out


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_weyl_product_matches_closed_form(a, b, c, d):
    assert weyl_monomial(a, b) * weyl_monomial(c, d) == weyl_oracle(a, b, c, d)


def test_weyl_commutator_normal_form():
    P, x = W1.gen("P1", 0), W1.gen("x1", 0)
    assert (P * x - x * P).render() == "1"
    assert (x * P).render() == "-1 + P1*x1"


@given(st.lists(st.integers(0, 2), max_size=7))
def test_commutative_normal_form_is_sorted_word(word):
    p = ab(3)
    e = normal_form(p, [(1, word[::-1]), (2, word)], 0)
    assert e == p.monomial(tuple(sorted(word)), 0, 3)
    assert len(e) == 1


@pytest.mark.parametrize("p", [HL1, O13, QS], ids=lambda p: p.label)
@given(data=st.data())
def test_associativity(p, data):
    a, b, c = (data.draw(elements(p, order=1, degree=2)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("p", [HL1, O13], ids=lambda p: p.label)
@given(data=st.data())
def test_distributivity_and_unit(p, data):
    a, b, c = (data.draw(elements(p, order=1, degree=2)) for _ in range(3))
    one = p.one(1)
    assert a * (b + c) == a * b + a * c
    assert one * a == a == a * one


def test_o13_sample_relations():
    M1, M2, M3 = (O13.gen(f"M{i}", 0) for i in (1, 2, 3))
    assert M1 * M2 - M2 * M1 == M3.scale(-I)


def test_qspace_relation():
    x1, x2 = QS.gen("x1", 0), QS.gen("x2", 0)
    assert (x1 * x2 - x2 * x1).render() == "-1 - x1 - x1*x2"


def test_tensor_product_multiplies_slotwise(rng):
    for _ in range(5):
        a, b, c, d = (W1.one(0) * weyl_monomial(rng.randint(0, 2), rng.randint(0, 2)) for _ in range(4))
        assert tensor_elements(a, b) * tensor_elements(c, d) == tensor_elements(a * c, b * d)


def test_tensor_render_and_flip():
    T = tensor_presentation([W1, W1])
    P, x = W1.gen("P1", 0), W1.gen("x1", 0)
    t = tensor_elements(P, x)
    assert t.render() == "(P1 (x) x1)"
    assert flip(t) == tensor_elements(x, P)
    assert regroup(t, [(0, 1)]) == P * x
    assert tensor_presentation([W1, W1]) is T


def test_central_sqrt_and_invert():
    p = ab(2)
    N = 4
    h = DeformationSeries.h(N)
    x = p.gen("x1", N)
    e = p.one(N) - (x * x).scale(h * h)
    r = central_sqrt(e)
    assert r * r == e
    assert central_invert(r) * r == p.one(N)


def test_central_sqrt_rejects_non_unit_constant():
    p = ab(1)
    with pytest.raises((NotASquareRoot, InputError)):
        central_sqrt(p.gen("x1", 2))


def test_presentation_rejects_unsolved_relation():
    with pytest.raises(InputError):
        Presentation("bad", ["a", "b"], [("a", "b", {})])


def test_presentation_rejects_non_normal_remainder():
    with pytest.raises(InputError):
        Presentation("bad", ["a", "b"], [("b", "a", {("b", "a"): 1})])


def test_presentation_rejects_degree_increase():
    with pytest.raises(InputError):
        Presentation("bad", ["a", "b"], [("b", "a", {("a", "a", "b"): 1})])


def test_duplicate_rule_rejected():
    with pytest.raises(InputError):
        Presentation("bad", ["a", "b"], [("b", "a", {}), ("b", "a", {("a",): 1})])


def test_confluence_detects_jacobi_violation():
    p = Presentation("bad", ["e1", "e2", "e3"], [
        ("e2", "e1", {("e3",): 1}),
        ("e3", "e2", {("e1",): 1}),
        ("e3", "e1", {("e1",): 1}),
    ])
    rep = check_confluence(p, degree=3, samples=20)
    assert not rep.confluent
    assert rep.failures and rep.failures[0].witness == "e3*e2*e1"


@pytest.mark.parametrize("p", [W1, HL1, O13, QS], ids=lambda p: p.label)
def test_catalog_confluence_quick(p):
    assert check_confluence(p, degree=4, samples=100, seed=7).confluent


@given(data=st.data())
def test_render_is_deterministic(data):
    e = data.draw(elements(HL1, order=2))
    raw = [(DeformationSeries.from_sparse({k: c}, 2), w) for (w, k), c in e.raw_terms().items()]
    assert e.render() == normal_form(HL1, raw, 2).render()


def test_truncation_drops_high_powers():
    p = ab(1)
    h = DeformationSeries.h(2)
    x = p.gen("x1", 2).scale(h)
    assert (x ** 3).is_zero()
    assert (x ** 2).render() == "h^2 * x1*x1"
