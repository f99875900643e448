"""Syntax-directed typing for the ten typed systems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .basis import Basis
from .delta import Abs, App, Bound, Coerce, DeltaTerm, Proj, SPair, UConst, Var, essence, free_vars, open_body
from .lam import DEFAULT_FUEL, LambdaTerm, Relation, RelVerdict, fresh_name, rel_check, show_lambda
from .subtyping import SubDeriv, derive_subtype, subtype
from .typeexpr import BCD, CD, CDS, CDV, OMEGA, Arrow, Inter, Theory, TypeExpr, check_wellformed, show_type, theory_leq


@dataclass(frozen=True)
class SystemId:
    theory: Theory
    relation: Relation

    def __post_init__(self):
        if (self.theory.id, self.relation) not in _CHAIR_KEYS:
            raise ValueError(f"{self.theory.id} with {self.relation.value} is not one of the ten systems")

    def __str__(self) -> str:
        return f"{self.theory.id}/{self.relation.value}"

    @staticmethod
    def parse(theory: str, relation: str) -> "SystemId":
        return SystemId(Theory.named(theory), Relation.named(relation))


_CHAIR_KEYS = {
    (t, r)
    for t in ("CD", "CDS", "CDV", "BCD")
    for r in (Relation.SYN, Relation.BETA)
} | {("CDV", Relation.BETAETA), ("BCD", Relation.BETAETA)}

CHAIR = tuple(
    SystemId(t, r)
    for t, r in [
        (CD, Relation.SYN), (CD, Relation.BETA), (CDV, Relation.SYN), (CDV, Relation.BETA),
        (CDS, Relation.SYN), (CDS, Relation.BETA), (BCD, Relation.SYN), (BCD, Relation.BETA),
        (CDV, Relation.BETAETA), (BCD, Relation.BETAETA),
    ]
)


def system_leq(s1: SystemId, s2: SystemId) -> bool:
    return theory_leq(s1.theory, s2.theory) and s1.relation <= s2.relation


class TypingError(Exception):
    code = "TypingError"


class UnboundVar(TypingError):
    code = "UnboundVar"

    def __init__(self, name: str):
        super().__init__(f"unbound variable {name}")
        self.name = name


class ArrowExpected(TypingError):
    code = "ArrowExpected"

    def __init__(self, found: TypeExpr):
        super().__init__(f"expected a function, found type {show_type(found)}")
        self.found = found


class InterExpected(TypingError):
    code = "InterExpected"

    def __init__(self, found: TypeExpr):
        super().__init__(f"projection needs an intersection, found type {show_type(found)}")
        self.found = found


class ArgumentMismatch(TypingError):
    code = "ArgumentMismatch"

    def __init__(self, expected: TypeExpr, found: TypeExpr):
        super().__init__(f"argument has type {show_type(found)}, expected {show_type(expected)}")
        self.expected, self.found = expected, found


class PairEssenceMismatch(TypingError):
    code = "PairEssenceMismatch"

    def __init__(self, left: LambdaTerm, right: LambdaTerm, relation: Relation):
        super().__init__(
            f"pair components are not {relation.value}-related: {show_lambda(left)} vs {show_lambda(right)}"
        )
        self.left, self.right, self.relation = left, right, relation


class CoercionFails(TypingError):
    code = "CoercionFails"

    def __init__(self, sigma: TypeExpr, tau: TypeExpr, theory: Theory):
        super().__init__(f"{show_type(sigma)} is not a subtype of {show_type(tau)} in {theory.id}")
        self.sigma, self.tau = sigma, tau


class TopUnavailable(TypingError):
    code = "TopUnavailable"

    def __init__(self, theory: Theory):
        super().__init__(f"u-constants need omega, which {theory.id} lacks")


class RelUnknown(TypingError):
    code = "RelUnknown"

    def __init__(self, left: LambdaTerm, right: LambdaTerm, fuel: int):
        super().__init__(f"could not decide {show_lambda(left)} vs {show_lambda(right)} within fuel {fuel}")
        self.left, self.right, self.fuel = left, right, fuel


@dataclass(frozen=True)
class Derivation:
    rule: str
    basis: Basis
    term: DeltaTerm
    type: TypeExpr
    premises: tuple["Derivation", ...] = ()
    var: str | None = None
    verdict: RelVerdict | None = None
    subderiv: SubDeriv | None = None


class _Checker:
    def __init__(self, sys: SystemId, fuel: int, alphabet: Iterable[str] | None, build: bool):
        self.sys = sys
        self.fuel = fuel
        self.alphabet = None if alphabet is None else frozenset(alphabet)
        self.build = build

    def wf(self, t: TypeExpr) -> None:
        check_wellformed(self.sys.theory, t, self.alphabet)

    def node(self, rule, b, d, ty, premises=(), **extra):
        if not self.build:
            return ty, None
        return ty, Derivation(rule, b, d, ty, tuple(p for _, p in premises), **extra)

    def run(self, b: Basis, d: DeltaTerm):
        theory = self.sys.theory
        match d:
            case UConst():
                if not theory.has_omega:
                    raise TopUnavailable(theory)
                return self.node("top", b, d, OMEGA)
            case Var(n):
                ty = b.lookup(n)
                if ty is None:
                    raise UnboundVar(n)
                self.wf(ty)
                return self.node("ax", b, d, ty)
            case Bound(k):
                raise ValueError(f"dangling index {k}; terms must be locally closed")
            case Abs(annot, body, hint):
                self.wf(annot)
                x = fresh_name(hint, set(b.names()) | free_vars(body))
                inner = self.run(b.extend(x, annot), open_body(body, x))
                return self.node("->I", b, d, Arrow(annot, inner[0]), [inner], var=x)
            case App(f, a):
                pf = self.run(b, f)
                if not isinstance(pf[0], Arrow):
                    raise ArrowExpected(pf[0])
                pa = self.run(b, a)
                if pa[0] != pf[0].dom:
                    raise ArgumentMismatch(pf[0].dom, pa[0])
                return self.node("->E", b, d, pf[0].cod, [pf, pa])
            case SPair(l, r):
                pl, pr = self.run(b, l), self.run(b, r)
                el, er = essence(l), essence(r)
                verdict = rel_check(self.sys.relation, el, er, self.fuel)
                if verdict is RelVerdict.UNKNOWN:
                    raise RelUnknown(el, er, self.fuel)
                if verdict is RelVerdict.FAILS:
                    raise PairEssenceMismatch(el, er, self.sys.relation)
                return self.node("&I", b, d, Inter(pl[0], pr[0]), [pl, pr], verdict=verdict)
            case Proj(i, x):
                px = self.run(b, x)
                if not isinstance(px[0], Inter):
                    raise InterExpected(px[0])
                ty = px[0].left if i == 1 else px[0].right
                return self.node(f"&E{i}", b, d, ty, [px])
            case Coerce(x, target):
                self.wf(target)
                px = self.run(b, x)
                if not subtype(theory, px[0], target):
                    raise CoercionFails(px[0], target, theory)
                sub = derive_subtype(theory, px[0], target) if self.build else None
                return self.node("<=", b, d, target, [px], subderiv=sub)
        raise TypeError(f"not a term: {d!r}")


def infer(sys: SystemId, b: Basis, d: DeltaTerm, fuel: int = DEFAULT_FUEL, alphabet: Iterable[str] | None = None) -> TypeExpr:
    return _Checker(sys, fuel, alphabet, build=False).run(b, d)[0]


def check(sys: SystemId, b: Basis, d: DeltaTerm, sigma: TypeExpr, fuel: int = DEFAULT_FUEL) -> bool:
    return infer(sys, b, d, fuel) == sigma


def derivation(sys: SystemId, b: Basis, d: DeltaTerm, fuel: int = DEFAULT_FUEL) -> Derivation:
    return _Checker(sys, fuel, None, build=True).run(b, d)[1]


def try_infer(sys: SystemId, b: Basis, d: DeltaTerm, fuel: int = DEFAULT_FUEL) -> TypeExpr | None:
    try:
        return infer(sys, b, d, fuel)
    except TypingError:
        return None

