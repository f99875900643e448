import pytest

from deltacalc.delta import App, Coerce, Proj, SPair, UConst, Var, lam
from deltacalc.syntax import ParseError, parse_basis, parse_lambda, parse_term, parse_type, show_term
from deltacalc.typecheck import CHAIR
from deltacalc.typeexpr import OMEGA, Arrow, Atom
from termgen import generate

a = Atom("a")


def test_term_forms():
    assert parse_term(r"\x:a. x") == lam("x", a, Var("x"))
    assert parse_term("f x y") == App(App(Var("f"), Var("x")), Var("y"))
    assert parse_term("<x, y>") == SPair(Var("x"), Var("y"))
    assert parse_term("pr2 pr1 x") == Proj(2, Proj(1, Var("x")))
    assert parse_term("x ^ omega") == Coerce(Var("x"), OMEGA)
    assert parse_term("u[x]") == UConst(Var("x"))


def test_basis_syntax():
    b = parse_basis("x:a->a, y:a")
    assert b.lookup("x") == Arrow(a, a) and b.lookup("y") == a
    assert len(parse_basis("")) == 0


@pytest.mark.parametrize("src", ["\\x. x", "<x, y", "x ^", "pr1", "a->", "(x", "x ; y"])
def test_malformed_input_is_rejected(src):
    with pytest.raises(ParseError):
        parse_term(src) if src != "a->" else parse_type(src)


def test_parse_error_points_at_the_problem():
    with pytest.raises(ParseError) as err:
        parse_term("<x, y")
    assert "<x, y" in str(err.value)


def test_lambda_parser_rejects_annotations():
    with pytest.raises(ParseError):
        parse_lambda(r"\x:a. x")


@pytest.mark.parametrize("sys", CHAIR, ids=str)
def test_generated_terms_round_trip(sys):
    for sample in generate(sys, 40, 7):
        assert parse_term(show_term(sample.term)) == sample.term
