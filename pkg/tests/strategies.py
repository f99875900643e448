"""Hypothesis strategies shared by the unit tests."""

from __future__ import annotations

from hypothesis import strategies as st

from deltacalc.lam import LApp, LVar, labs
from deltacalc.typeexpr import OMEGA, Arrow, Atom, Inter

ATOMS = st.sampled_from([Atom("a"), Atom("b")])


def types(with_omega: bool = False, max_leaves: int = 6):
    leaves = st.one_of(ATOMS, st.just(OMEGA)) if with_omega else ATOMS
    return st.recursive(
        leaves,
        lambda kids: st.one_of(st.builds(Arrow, kids, kids), st.builds(Inter, kids, kids)),
        max_leaves=max_leaves,
    )


NAMES = st.sampled_from(["x", "y", "z"])

lambdas = st.recursive(
    st.builds(LVar, NAMES),
    lambda kids: st.one_of(st.builds(LApp, kids, kids), st.builds(labs, NAMES, kids)),
    max_leaves=8,
)
