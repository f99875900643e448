"""Turning subtype derivations into coercion functions and erasing coercions from terms."""

from __future__ import annotations

from .basis import Basis
from .delta import Abs, App, Bound, Coerce, DeltaTerm, Proj, SPair, UConst, Var, close, essence, free_vars, lam, open_body
from .lam import DEFAULT_FUEL, Relation, RelVerdict, common_reduct, fresh_name, rel_check
from .subtyping import (
    ArrowInter,
    ArrowMono,
    Glb,
    Incl1,
    Incl2,
    OmegaArrow,
    OmegaTop,
    Refl,
    SubDeriv,
    Trans,
    conclusion,
    derive_subtype,
)
from .typecheck import SystemId, TypingError, infer
from .typeexpr import OMEGA, Arrow, Inter, Theory

_TARGET_RELATION = {"CD": Relation.BETA, "CDS": Relation.BETA, "CDV": Relation.BETAETA, "BCD": Relation.BETAETA}


def target_system(source: SystemId) -> SystemId:
    return SystemId(source.theory, _TARGET_RELATION[source.theory.id])


def coercion_term(theory: Theory, d: SubDeriv) -> DeltaTerm:
    """A closed coercion-free function from the left to the right type of `d`."""
    conclusion(theory, d)
    return _coerce(theory, d)


def _coerce(theory: Theory, d: SubDeriv) -> DeltaTerm:
    x = Var("x")
    match d:
        case Refl(s):
            return lam("x", s, x)
        case Incl1(a, b):
            return lam("x", Inter(a, b), Proj(1, x))
        case Incl2(a, b):
            return lam("x", Inter(a, b), Proj(2, x))
        case Glb(d1, d2):
            rho = conclusion(theory, d1)[0]
            return lam("x", rho, SPair(App(_coerce(theory, d1), x), App(_coerce(theory, d2), x)))
        case Trans(d1, d2):
            sigma = conclusion(theory, d1)[0]
            return lam("x", sigma, App(_coerce(theory, d2), App(_coerce(theory, d1), x)))
        case OmegaTop(s):
            return lam("x", s, UConst(x))
        case OmegaArrow(s):
            return lam("f", OMEGA, lam("x", s, UConst(App(Var("f"), x))))
        case ArrowInter(s, t, r):
            f = Var("f")
            both = SPair(App(Proj(1, f), x), App(Proj(2, f), x))
            return lam("f", Inter(Arrow(s, t), Arrow(s, r)), lam("x", s, both))
        case ArrowMono(contra, cov):
            s1, t1 = conclusion(theory, contra)[1], conclusion(theory, cov)[0]
            s2 = conclusion(theory, contra)[0]
            body = App(_coerce(theory, cov), App(Var("f"), App(_coerce(theory, contra), x)))
            return lam("f", Arrow(s1, t1), lam("x", s2, body))
    raise TypeError(f"not a subtype derivation: {d!r}")


def translate(sys: SystemId, b: Basis, d: DeltaTerm, fuel: int = DEFAULT_FUEL) -> DeltaTerm:
    """Replace every coercion node by an application of its coercion function."""
    infer(sys, b, d, fuel)
    return _Translator(sys, fuel).run(b, d, lenient=False)


def coherence(sys: SystemId, source: DeltaTerm, translated: DeltaTerm, fuel: int = DEFAULT_FUEL) -> RelVerdict:
    """Whether the two essences are related in the target relation.

    Normalization decides it; when an essence diverges, a shared reduct found
    by bounded search still proves the relation.
    """
    rel = target_system(sys).relation
    m, n = essence(translated), essence(source)
    verdict = rel_check(rel, m, n, fuel)
    if verdict is RelVerdict.UNKNOWN and common_reduct(rel, m, n) is not None:
        return RelVerdict.HOLDS
    return verdict


class _Translator:
    def __init__(self, sys: SystemId, fuel: int):
        self.sys = sys
        self.fuel = fuel

    def run(self, b: Basis, d: DeltaTerm, lenient: bool) -> DeltaTerm:
        match d:
            case Var() | Bound():
                return d
            case UConst(x):
                # indices need not be typable; untypable coercions there are simply dropped
                return UConst(self.run(b, x, lenient=True))
            case Abs(annot, body, hint):
                x = fresh_name(hint, set(b.names()) | free_vars(body))
                inner = self.run(b.extend(x, annot), open_body(body, x), lenient)
                return Abs(annot, close(inner, x), hint)
            case App(f, a):
                return App(self.run(b, f, lenient), self.run(b, a, lenient))
            case SPair(l, r):
                return SPair(self.run(b, l, lenient), self.run(b, r, lenient))
            case Proj(i, x):
                return Proj(i, self.run(b, x, lenient))
            case Coerce(x, target):
                inner = self.run(b, x, lenient)
                try:
                    sigma = infer(self.sys, b, x, self.fuel)
                    c = coercion_term(self.sys.theory, derive_subtype(self.sys.theory, sigma, target))
                except (TypingError, ValueError):
                    if not lenient:
                        raise
                    return inner
                return App(c, inner)
        raise TypeError(f"not a term: {d!r}")
