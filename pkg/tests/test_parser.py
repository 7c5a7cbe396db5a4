from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicross.catalog import hl, o13, translations, weyl
from bicross.errors import InputError
from bicross.ncpoly import central_invert, central_sqrt, tensor_elements, tensor_presentation
from bicross.parser import ParseError, parse_ast, parse_expression, tokenize
from bicross.scalars import DeformationSeries, Scalar
from strategies import elements

W1 = weyl(1)
HL1 = hl(1)
O13 = o13()


def test_unit_and_scalars():
    assert parse_expression("1", W1) == W1.one(3)
    assert parse_expression("1 + 2*3^2", W1, 0) == W1.scalar(19, 0)
    assert parse_expression("-2^2", W1, 0) == W1.scalar(-4, 0)
    assert parse_expression("3/4 - i", W1, 0) == W1.scalar(Scalar(Fraction(3, 4), -1), 0)


def test_weyl_commutator():
    assert parse_expression("P1*x1 - x1*P1", W1).render() == "1"


def test_h_and_truncation():
    e = parse_expression("(1 + h)^5", W1, 2)
    assert e.render() == "(1 + 5*h + 10*h^2)"


def test_sqrt_and_inv_match_library():
    T = translations(4)
    N = 4
    Psq = parse_expression("P1^2 + P2^2 + P3^2 - P4^2", T, N)
    Pi = parse_expression("h*P4 + sqrt(1 - h^2 * Psq)", T, N, {"Psq": Psq})
    h = DeformationSeries.h(N)
    direct = T.gen("P4", N).scale(h) + central_sqrt(T.one(N) - Psq.scale(h * h))
    assert Pi == direct
    assert parse_expression("inv(1 + h*P1)", T, N) == central_invert(T.one(N) + T.gen("P1", N).scale(h))


def test_tensor_slots_lowest_precedence():
    T = tensor_presentation([W1, W1])
    x = parse_expression("P1 + x1 (x) 1 - h", T, 1)
    assert x == tensor_elements(parse_expression("P1 + x1", W1, 1), parse_expression("1 - h", W1, 1))
    with pytest.raises(InputError, match="3 tensor slots"):
        parse_expression("P1 (x) 1 + 1 (x) P1", T)


def test_flattened_slot_names():
    T = tensor_presentation([W1, W1])
    assert parse_expression("P1_2*x1_1", T, 0) == tensor_elements(W1.gen("x1", 0), W1.gen("P1", 0))


def test_parenthesised_tensors_add():
    T = tensor_presentation([W1, W1])
    x = parse_expression("(P1 (x) 1) + (1 (x) P1)", T, 0)
    assert x.render() == "(P1 (x) 1) + (1 (x) P1)"


@pytest.mark.parametrize("src,line,col", [
    ("P1 + * 2", 1, 6),
    ("P1 +\n  Q2", 2, 3),
    ("(P1", 1, 4),
    ("P1 $ x1", 1, 4),
    ("2 - -1", 1, 5),
    ("P1^x1", 1, 4),
    ("1/0", 1, 3),
])
def test_errors_carry_position(src, line, col):
    with pytest.raises(ParseError) as info:
        parse_expression(src, W1)
    assert (info.value.line, info.value.col) == (line, col)


def test_parse_error_is_input_error():
    assert issubclass(ParseError, InputError)


def test_tokens_prefer_tensor_separator():
    kinds = [t.kind for t in tokenize("(x)(x1)")]
    assert kinds == ["tensor", "(", "ident", ")", "eof"]


def test_ast_shape():
    assert parse_ast("a + b*c")[0] == "add"
    assert parse_ast("a (x) b")[0] == "tensor"


@pytest.mark.parametrize("p", [W1, HL1, O13], ids=lambda p: p.label)
@given(data=st.data())
def test_render_round_trip(p, data):
    e = data.draw(elements(p, order=2, degree=3))
    assert parse_expression(e.render(), p, 2) == e


@given(data=st.data())
def test_tensor_render_round_trip(data):
    T = tensor_presentation([HL1, HL1, HL1])
    parts = [data.draw(elements(HL1, order=1, degree=2, nterms=2)) for _ in range(3)]
    e = tensor_elements(*parts) + tensor_elements(parts[1], parts[0], parts[2])
    assert parse_expression(e.render(), T, 1) == e
