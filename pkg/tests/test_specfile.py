import textwrap
from pathlib import Path

import pytest

from bicross.catalog import hl
from bicross.errors import InputError
from bicross.ncpoly import check_confluence
from bicross.specfile import load_spec, parse_relation, parse_spec
from bicross.suites import RunOptions, run_suite

SPECS = Path(__file__).resolve().parent.parent / "specs"


def spec(text, **kw):
    return parse_spec(textwrap.dedent(text), **kw)


def test_relation_orientation():
    names = ["P1", "x1"]
    hi, lo, rem = parse_relation("[P1, x1] = 1", names)
    assert (hi, lo) == (1, 0)
    # x1*P1 -> P1*x1 - 1
    assert dict(rem) == {((), 0): -1}
    _, _, rem2 = parse_relation("[x1, P1] = -1", names)
    assert dict(rem2) == dict(rem)


def test_relation_errors():
    for bad in ("P1 x1 = 1", "[P1, y] = 1", "[P1, P1] = 0", "[P1, x1] = x1*P1*P1"):
        with pytest.raises(InputError):
            s = spec(f"""
                algebras:
                  W:
                    generators: [P1, x1]
                    relations: ["{bad}"]
            """)
            assert s is None


def test_declared_algebra_equals_catalog():
    s = spec("""
        algebras:
          H:
            generators: [P1, x1, C]
            relations:
              - "[P1, x1] = -i*C"
    """)
    p = s.algebras["H"]
    ref = hl(1)
    assert [p.relation_text(r, 0) for r in p.rules()] == [ref.relation_text(r, 0) for r in ref.rules()]
    assert check_confluence(p, degree=4, samples=50).confluent


def test_definitions_and_coproduct_map():
    s = spec("""
        order: 2
        algebras:
          T: translations(1)
        definitions:
          E: {algebra: T, expr: "1 + h*P1"}
        bialgebras:
          T:
            coproduct:
              P1: "(P1 (x) 1) + (E (x) P1)"
    """)
    B = s.bialgebras["T"]
    assert B.counital and B.hopf
    # E is grouplike, so S(P1) = -P1 E^-1
    assert B.antipode.image("P1").render() == "-P1 + h * P1*P1 - h^2 * P1*P1*P1"


def test_order_override():
    s = spec("order: 1\nalgebras:\n  T: ab(1)\n", order=3)
    assert s.order == 3


@pytest.mark.parametrize("text", [
    "order: [1]",
    "- 1\n- 2",
    "algebras: {X: {generators: []}}",
    "bogus: 1",
    "algebras:\n  X: {generators: [a]\n",
    "bialgebras: {B: {algebra: missing}}",
    "algebras: {T: ab(1)}\nbialgebras: {T: {coproduct: sideways}}",
    "algebras: {T: ab(1)}\nbialgebras: {T: {coproduct: {x1: 'x1 (x) 1', y: '1'}}}",
])
def test_malformed_specs(text):
    with pytest.raises(InputError):
        parse_spec(text)


def test_spec_obstruction_recorded():
    s = load_spec(SPECS / "weyl_counit.yaml")
    assert s.obstructions["W0"].render() == "obstruction relation=[P1,x1] = 1 derived=0 = 1"


def test_heisenberg_lie_spec_suite_passes():
    rep = run_suite(str(SPECS / "heisenberg_lie.yaml"), None, RunOptions(max_degree=2))
    assert rep.passed
    assert rep.counts()["PASS"] > 50


def test_missing_file():
    with pytest.raises(InputError):
        load_spec("/nonexistent/spec.yaml")
