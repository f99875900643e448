"""Curry-style type assignment: derivations, validation, erasure, decoration, bounded search."""

from __future__ import annotations

from dataclasses import dataclass

from .basis import Basis
from .delta import Abs, App, Coerce, DeltaTerm, Proj, SPair, UConst, Var, close, essence
from .delta import Bound as DBound
from .lam import DEFAULT_FUEL, LAbs, LApp, LBound, LVar, LambdaTerm, Relation, RelVerdict, fresh_name, lfree_vars, lopen, rel_check
from .subtyping import InvalidDerivation, SubDeriv, _sub, conclusion, derive_subtype, subtype
from .typecheck import Derivation, SystemId
from .typeexpr import OMEGA, Arrow, IllFormedType, Inter, Omega, Theory, TypeExpr, check_wellformed, mentions_omega


@dataclass(frozen=True)
class CurryDeriv:
    rule: str
    basis: Basis
    subject: LambdaTerm
    type: TypeExpr
    premises: tuple["CurryDeriv", ...] = ()
    var: str | None = None
    subderiv: SubDeriv | None = None


class Unsupported(Exception):
    """The typed system is not sound for type assignment; erasure has no target."""


class DecorationImpossible(ValueError):
    pass


SOUND = frozenset(
    {("CD", Relation.SYN), ("CDS", Relation.SYN), ("CDV", Relation.SYN), ("BCD", Relation.SYN),
     ("CDS", Relation.BETA), ("BCD", Relation.BETA)}
)


def is_sound(sys: SystemId) -> bool:
    return (sys.theory.id, sys.relation) in SOUND


def validate_curry(theory: Theory, deriv: CurryDeriv, allow_adm: bool = False, fuel: int = DEFAULT_FUEL) -> bool:
    try:
        _validate(theory, deriv, allow_adm, fuel)
        return True
    except (_Invalid, IllFormedType, InvalidDerivation):
        return False


class _Invalid(Exception):
    pass


def _need(cond: bool, why: str) -> None:
    if not cond:
        raise _Invalid(why)


def _validate(theory: Theory, d: CurryDeriv, allow_adm: bool, fuel: int) -> None:
    check_wellformed(theory, d.type)
    prem = d.premises
    arity = {"Ax": 0, "Top": 0, "ArrowI": 1, "InterE1": 1, "InterE2": 1, "Leq": 1,
             "ArrowE": 2, "InterI": 2, "InterIAdm": 2}
    _need(d.rule in arity and len(prem) == arity[d.rule], f"bad rule {d.rule}")
    for p in prem:
        _validate(theory, p, allow_adm, fuel)
    if d.rule != "ArrowI":
        _need(all(p.basis == d.basis for p in prem), "premise basis differs")
    match d.rule:
        case "Ax":
            _need(isinstance(d.subject, LVar) and d.basis.lookup(d.subject.name) == d.type, "ax")
        case "Top":
            _need(theory.has_omega and d.type == OMEGA, "top")
        case "ArrowI":
            p = prem[0]
            x = d.var
            _need(isinstance(d.subject, LAbs) and isinstance(d.type, Arrow), "arrow-intro shape")
            _need(x is not None and x not in d.basis and x not in lfree_vars(d.subject), "arrow-intro variable")
            _need(p.basis == d.basis.extend(x, d.type.dom), "arrow-intro basis")
            _need(p.subject == lopen(d.subject.body, x) and p.type == d.type.cod, "arrow-intro premise")
        case "ArrowE":
            f, a = prem
            _need(d.subject == LApp(f.subject, a.subject), "arrow-elim subject")
            _need(f.type == Arrow(a.type, d.type), "arrow-elim types")
        case "InterI":
            l, r = prem
            _need(l.subject == d.subject == r.subject, "inter-intro subject")
            _need(d.type == Inter(l.type, r.type), "inter-intro type")
        case "InterIAdm":
            l, r = prem
            _need(allow_adm and theory.has_omega, "admissible inter-intro not allowed here")
            _need(l.subject == d.subject and d.type == Inter(l.type, r.type), "admissible inter-intro shape")
            _need(rel_check(Relation.BETA, l.subject, r.subject, fuel) is RelVerdict.HOLDS, "subjects not beta-equal")
        case "InterE1" | "InterE2":
            p = prem[0]
            _need(p.subject == d.subject and isinstance(p.type, Inter), "inter-elim shape")
            _need(d.type == (p.type.left if d.rule == "InterE1" else p.type.right), "inter-elim type")
        case "Leq":
            p = prem[0]
            _need(p.subject == d.subject and d.subderiv is not None, "leq shape")
            _need(conclusion(theory, d.subderiv) == (p.type, d.type), "leq derivation")


def erase_derivation(sys: SystemId, node: Derivation) -> CurryDeriv:
    if not is_sound(sys):
        raise Unsupported(f"{sys} is not sound for type assignment")
    return _erase(sys, node)


def _erase(sys: SystemId, node: Derivation) -> CurryDeriv:
    prem = tuple(_erase(sys, p) for p in node.premises)
    subject = essence(node.term)
    match node.rule:
        case "top":
            return CurryDeriv("Top", node.basis, subject, node.type)
        case "ax":
            return CurryDeriv("Ax", node.basis, subject, node.type)
        case "->I":
            return CurryDeriv("ArrowI", node.basis, subject, node.type, prem, var=node.var)
        case "->E":
            return CurryDeriv("ArrowE", node.basis, subject, node.type, prem)
        case "&I":
            same = prem[0].subject == prem[1].subject
            return CurryDeriv("InterI" if same else "InterIAdm", node.basis, subject, node.type, prem)
        case "&E1" | "&E2":
            return CurryDeriv(f"InterE{node.rule[-1]}", node.basis, subject, node.type, prem)
        case "<=":
            return CurryDeriv("Leq", node.basis, subject, node.type, prem, subderiv=node.subderiv)
    raise ValueError(f"unknown rule {node.rule}")


def omega_decorate(m: LambdaTerm) -> DeltaTerm:
    match m:
        case LVar(n):
            return Var(n)
        case LBound(k):
            return DBound(k)
        case LAbs(b, h):
            return Abs(OMEGA, omega_decorate(b), h)
        case LApp(f, a):
            return App(omega_decorate(f), omega_decorate(a))
    raise TypeError(f"not a lambda term: {m!r}")


def synthesize_delta(sys: SystemId, c: CurryDeriv) -> DeltaTerm:
    prem = [synthesize_delta(sys, p) for p in c.premises]
    match c.rule:
        case "Ax":
            return Var(c.subject.name)
        case "Top":
            return UConst(omega_decorate(c.subject))
        case "ArrowI":
            return Abs(c.type.dom, close(prem[0], c.var), c.var)
        case "ArrowE":
            return App(prem[0], prem[1])
        case "InterI":
            return SPair(prem[0], prem[1])
        case "InterE1" | "InterE2":
            return Proj(int(c.rule[-1]), prem[0])
        case "Leq":
            return Coerce(prem[0], conclusion(sys.theory, c.subderiv)[1])
    raise DecorationImpossible(f"cannot decorate a {c.rule} node")


@dataclass(frozen=True)
class Derivable:
    deriv: CurryDeriv


@dataclass(frozen=True)
class NotWithin:
    depth: int


def _subformulas(t: TypeExpr, acc: list[TypeExpr]) -> None:
    if t in acc:
        return
    acc.append(t)
    match t:
        case Arrow(a, b) | Inter(a, b):
            _subformulas(a, acc)
            _subformulas(b, acc)


def search_candidates(theory: Theory, b: Basis, sigma: TypeExpr, arrow_levels: int = 2) -> list[TypeExpr]:
    """Subformulas of the goal and basis, closed `arrow_levels` times under `->`."""
    base: list[TypeExpr] = []
    _subformulas(sigma, base)
    for _, t in b:
        _subformulas(t, base)
    if theory.has_omega and OMEGA not in base:
        base.append(OMEGA)
    base = [t for t in base if theory.has_omega or not mentions_omega(t)]
    out = list(base)
    for _ in range(arrow_levels):
        layer = [Arrow(s, t) for s in out for t in out]
        out += [t for t in dict.fromkeys(layer) if t not in out]
    return out


def bounded_curry_search(
    theory: Theory, b: Basis, m: LambdaTerm, sigma: TypeExpr, depth: int, arrow_levels: int = 2
) -> Derivable | NotWithin:
    check_wellformed(theory, sigma)
    candidates = search_candidates(theory, b, sigma, arrow_levels)
    found = _Search(theory, candidates).run(b, m, sigma, depth)
    return Derivable(found) if found is not None else NotWithin(depth)


class _Search:
    def __init__(self, theory: Theory, candidates: list[TypeExpr]):
        self.theory = theory
        self.candidates = candidates
        # failure at some depth implies failure at every smaller depth, and
        # success at some depth carries over to every larger one
        self.failed: dict = {}
        self.found: dict = {}
        self._below: dict = {}

    def below(self, goal: TypeExpr) -> list[TypeExpr]:
        hit = self._below.get(goal)
        if hit is None:
            hit = [r for r in self.candidates if r != goal and subtype(self.theory, r, goal)]
            self._below[goal] = hit
        return hit

    def run(self, b: Basis, m: LambdaTerm, goal: TypeExpr, depth: int) -> CurryDeriv | None:
        key = (b, m, goal)
        hit = self.found.get(key)
        if hit is not None and hit[0] <= depth:
            return hit[1]
        if self.failed.get(key, 0) >= depth:
            return None
        # provisional failure guards against revisiting the same goal on this path
        previous = self.failed.get(key, 0)
        self.failed[key] = depth
        result = self._search(b, m, goal, depth)
        if result is None:
            return None
        self.failed[key] = previous
        self.found[key] = (depth, result)
        return result

    def _search(self, b: Basis, m: LambdaTerm, goal: TypeExpr, depth: int) -> CurryDeriv | None:
        if depth <= 0:
            return None
        th = self.theory
        if isinstance(goal, Omega) and th.has_omega:
            return CurryDeriv("Top", b, m, goal)
        if isinstance(goal, Inter):
            left = self.run(b, m, goal.left, depth - 1)
            right = left and self.run(b, m, goal.right, depth - 1)
            if right:
                return CurryDeriv("InterI", b, m, goal, (left, right))
        match m:
            case LVar(n):
                have = b.lookup(n)
                if have is None:
                    return None
                ax = CurryDeriv("Ax", b, m, have)
                if have == goal:
                    return ax
                # candidate and basis types are well formed, so the unchecked test suffices
                if _sub(th, have, goal):
                    return CurryDeriv("Leq", b, m, goal, (ax,), subderiv=derive_subtype(th, have, goal))
                return None
            case LAbs(body, hint) if isinstance(goal, Arrow):
                x = fresh_name(hint, set(b.names()) | lfree_vars(m))
                inner = self.run(b.extend(x, goal.dom), lopen(body, x), goal.cod, depth - 1)
                if inner:
                    return CurryDeriv("ArrowI", b, m, goal, (inner,), var=x)
            case LApp(f, a):
                for rho in self.candidates:
                    pf = self.run(b, f, Arrow(rho, goal), depth - 1)
                    if pf:
                        pa = self.run(b, a, rho, depth - 1)
                        if pa:
                            return CurryDeriv("ArrowE", b, m, goal, (pf, pa))
        for rho in self.below(goal):
            inner = self.run(b, m, rho, depth - 1)
            if inner:
                return CurryDeriv("Leq", b, m, goal, (inner,), subderiv=derive_subtype(th, rho, goal))
        return None
