import pytest
from hypothesis import assume, given, settings

from deltacalc.oracle import declarative_subtype
from deltacalc.subtyping import (
    Glb, Incl1, InvalidDerivation, Refl, conclusion, derive_subtype, show_subderiv,
    subtype, uses_arrow_axioms, validate_subderiv,
)
from deltacalc.syntax import parse_type as T
from deltacalc.typeexpr import BCD, CD, CDS, CDV, type_size
from strategies import types

THEORIES = [CD, CDS, CDV, BCD]


@pytest.mark.parametrize("theory,lhs,rhs,expected", [
    (CD, "a&b", "a", True),
    (CD, "a", "a&b", False),
    (CD, "a&b", "b&a", True),
    (CD, "(a->b)&(a->c)", "a->b&c", False),
    (CDV, "(a->b)&(a->c)", "a->b&c", True),
    (CD, "a->b", "a&c->b", False),
    (CDV, "a->b", "a&c->b", True),
    (CDS, "a", "omega", True),
    (CDS, "omega", "a->omega", False),
    (BCD, "omega", "a->omega", True),
    (BCD, "omega", "omega->omega", True),
])
def test_known_judgments(theory, lhs, rhs, expected):
    assert subtype(theory, T(lhs), T(rhs)) is expected


@pytest.mark.parametrize("theory", THEORIES)
@settings(max_examples=60, deadline=None)
@given(s=types(), t=types())
def test_derivations_certify_decisions(theory, s, t):
    d = derive_subtype(theory, s, t)
    assert (d is not None) == subtype(theory, s, t)
    if d is not None:
        assert validate_subderiv(theory, d, s, t)


@pytest.mark.parametrize("theory", [CDS, BCD])
@settings(max_examples=40, deadline=None)
@given(s=types(with_omega=True, max_leaves=4), t=types(with_omega=True, max_leaves=4))
def test_agrees_with_declarative_search(theory, s, t):
    assume(type_size(s) <= 5 and type_size(t) <= 5)
    assert subtype(theory, s, t) == declarative_subtype(theory, s, t)


@given(types(with_omega=True))
def test_reflexive_and_top(t):
    assert subtype(BCD, t, t)
    assert subtype(BCD, t, T("omega"))


def test_conclusion_rejects_bad_trees():
    a, b = T("a"), T("b")
    with pytest.raises(InvalidDerivation):
        conclusion(CD, Glb(Refl(a), Refl(b)))
    assert conclusion(CD, Incl1(a, b)) == (T("a&b"), a)
    assert not validate_subderiv(CD, Refl(a), a, b)


def test_arrow_axioms_are_reported():
    d = derive_subtype(CDV, T("(a->b)&(a->c)"), T("a->b&c"))
    assert uses_arrow_axioms(d)
    assert not uses_arrow_axioms(derive_subtype(CD, T("a&b"), T("b")))
    assert show_subderiv(Incl1(T("a"), T("b"))) == "Incl1(a, b)"


def test_oracle_refuses_types_outside_its_universe():
    with pytest.raises(ValueError):
        declarative_subtype(CD, T("a->a->a->a"), T("a"))
