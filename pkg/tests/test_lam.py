import os
import subprocess
import sys

import pytest
from hypothesis import given, settings

from deltacalc import _pykernel
from deltacalc import lam as L
from deltacalc.lam import (
    KERNEL, LApp, LBound, LVar, Relation, RelVerdict, alpha_eq, common_reduct, decode, encode,
    lfree_vars, lsuccessors, normalize, normalize_steps, rel_check, show_lambda,
)
from deltacalc.syntax import parse_lambda as P
from strategies import lambdas

OMEGA_TERM = P(r"(\x. x x) (\x. x x)")


def test_binder_hints_do_not_affect_equality():
    assert P(r"\x. x") == P(r"\y. y")
    assert P(r"\x. \y. x") != P(r"\x. \y. y")


@given(lambdas)
def test_encode_decode_round_trip(m):
    assert decode(*encode(m)) == m


@given(lambdas)
def test_show_parse_round_trip(m):
    assert P(show_lambda(m)) == m


def test_show_avoids_capture():
    m = LApp(L.labs("x", LApp(LVar("x"), LVar("x_"))), LVar("x"))
    assert P(show_lambda(m)) == m


@pytest.mark.parametrize("src,mode,expected", [
    (r"(\x. x) y", "beta", "y"),
    (r"\x. f x", "beta", r"\x. f x"),
    (r"\x. f x", "betaeta", "f"),
    (r"(\x. \y. x) y", "beta", r"\z. y"),
    (r"\x. (\y. y) x", "betaeta", r"\x. x"),
])
def test_normal_forms(src, mode, expected):
    assert normalize(P(src), mode) == P(expected)


def test_divergence_exhausts_fuel():
    nf, steps = normalize_steps(OMEGA_TERM, Relation.BETA, fuel=50)
    assert nf is None and steps >= 50


@settings(max_examples=150, deadline=None)
@given(lambdas)
def test_native_and_fallback_kernels_agree(m):
    for mode in (Relation.BETA, Relation.BETAETA):
        assert normalize_steps(m, mode, 300) == normalize_steps(m, mode, 300, kernel=_pykernel)


def test_environment_forces_the_fallback():
    code = "import deltacalc.lam as l; print(l.KERNEL)"
    env = dict(os.environ, DELTACALC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == _pykernel.NAME
    assert KERNEL in ("cython", _pykernel.NAME)


def test_rel_check_verdicts():
    assert rel_check("syn", P(r"\x. x"), P(r"\y. y")) is RelVerdict.HOLDS
    assert rel_check("syn", P(r"(\x. x) y"), P("y")) is RelVerdict.FAILS
    assert rel_check("beta", P(r"(\x. x) y"), P("y")) is RelVerdict.HOLDS
    assert rel_check("beta", P(r"\x. f x"), P("f")) is RelVerdict.FAILS
    assert rel_check("betaeta", P(r"\x. f x"), P("f")) is RelVerdict.HOLDS
    assert rel_check("beta", OMEGA_TERM, P("y"), fuel=100) is RelVerdict.UNKNOWN


def test_relations_are_ordered():
    assert Relation.SYN <= Relation.BETA <= Relation.BETAETA
    assert not Relation.BETAETA <= Relation.BETA


def test_successors_cover_beta_and_eta():
    m = P(r"\x. (\y. y) f x")
    assert set(lsuccessors(m)) == {P(r"\x. f x")}
    assert set(lsuccessors(m, eta=True)) == {P(r"\x. f x"), P(r"(\y. y) f")}
    assert lsuccessors(P(r"\x. x x")) == []


def test_common_reduct_witnesses_divergent_terms():
    wrapped = P(r"(\x. (\f. \z. f z) x x) (\x. x x)")
    assert common_reduct("betaeta", wrapped, OMEGA_TERM) is not None
    assert common_reduct("beta", OMEGA_TERM, P(r"\x. x")) is None
    assert common_reduct("beta", P(r"(\x. x) y"), P("y")) == P("y")


def test_free_variables():
    assert lfree_vars(P(r"\x. x y (\z. z w)")) == {"y", "w"}
    assert alpha_eq(LBound(0), LBound(0))
