"""Deciding subtyping and building checkable subtype derivations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .typeexpr import (
    OMEGA,
    Arrow,
    Atom,
    Inter,
    Omega,
    Theory,
    TypeExpr,
    check_wellformed,
    flatten,
    inter_all,
    mentions_omega,
    show_type,
)


class InvalidDerivation(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Refl:
    sigma: TypeExpr


@dataclass(frozen=True, slots=True)
class Incl1:
    left: TypeExpr
    right: TypeExpr


@dataclass(frozen=True, slots=True)
class Incl2:
    left: TypeExpr
    right: TypeExpr


@dataclass(frozen=True, slots=True)
class Glb:
    d1: "SubDeriv"
    d2: "SubDeriv"


@dataclass(frozen=True, slots=True)
class Trans:
    d1: "SubDeriv"
    d2: "SubDeriv"


@dataclass(frozen=True, slots=True)
class OmegaTop:
    sigma: TypeExpr


@dataclass(frozen=True, slots=True)
class OmegaArrow:
    sigma: TypeExpr


@dataclass(frozen=True, slots=True)
class ArrowInter:
    sigma: TypeExpr
    tau: TypeExpr
    rho: TypeExpr


@dataclass(frozen=True, slots=True)
class ArrowMono:
    contra: "SubDeriv"
    cov: "SubDeriv"


SubDeriv = Union[Refl, Incl1, Incl2, Glb, Trans, OmegaTop, OmegaArrow, ArrowInter, ArrowMono]


def conclusion(theory: Theory, d: SubDeriv) -> tuple[TypeExpr, TypeExpr]:
    """The judgment proved by `d`; raises InvalidDerivation on a malformed node."""
    match d:
        case Refl(s):
            res = (s, s)
        case Incl1(a, b):
            res = (Inter(a, b), a)
        case Incl2(a, b):
            res = (Inter(a, b), b)
        case Glb(d1, d2):
            (r1, s), (r2, t) = conclusion(theory, d1), conclusion(theory, d2)
            if r1 != r2:
                raise InvalidDerivation(f"glb premises disagree: {show_type(r1)} vs {show_type(r2)}")
            res = (r1, Inter(s, t))
        case Trans(d1, d2):
            (a, b1), (b2, c) = conclusion(theory, d1), conclusion(theory, d2)
            if b1 != b2:
                raise InvalidDerivation(f"trans middle mismatch: {show_type(b1)} vs {show_type(b2)}")
            res = (a, c)
        case OmegaTop(s):
            if not theory.has_omega_top:
                raise InvalidDerivation(f"{theory.id} has no omega-top axiom")
            res = (s, OMEGA)
        case OmegaArrow(s):
            if not theory.has_omega_arrow:
                raise InvalidDerivation(f"{theory.id} has no omega-arrow axiom")
            res = (OMEGA, Arrow(s, OMEGA))
        case ArrowInter(s, t, r):
            if not theory.has_arrow_schemes:
                raise InvalidDerivation(f"{theory.id} has no arrow-intersection axiom")
            res = (Inter(Arrow(s, t), Arrow(s, r)), Arrow(s, Inter(t, r)))
        case ArrowMono(dc, dv):
            if not theory.has_arrow_schemes:
                raise InvalidDerivation(f"{theory.id} has no arrow rule")
            (s2, s1), (t1, t2) = conclusion(theory, dc), conclusion(theory, dv)
            res = (Arrow(s1, t1), Arrow(s2, t2))
        case _:
            raise InvalidDerivation(f"not a subtype derivation: {d!r}")
    if not theory.has_omega and (mentions_omega(res[0]) or mentions_omega(res[1])):
        raise InvalidDerivation(f"omega is not available in {theory.id}")
    return res


def validate_subderiv(theory: Theory, d: SubDeriv, sigma: TypeExpr, tau: TypeExpr) -> bool:
    try:
        return conclusion(theory, d) == (sigma, tau)
    except InvalidDerivation:
        return False


def subtype(theory: Theory, sigma: TypeExpr, tau: TypeExpr) -> bool:
    check_wellformed(theory, sigma)
    check_wellformed(theory, tau)
    return _sub(theory, sigma, tau)


@lru_cache(maxsize=1 << 16)
def _sub(theory: Theory, sigma: TypeExpr, tau: TypeExpr) -> bool:
    match tau:
        case Inter(l, r):
            return _sub(theory, sigma, l) and _sub(theory, sigma, r)
        case Omega():
            return theory.has_omega_top
        case Atom():
            return tau in flatten(sigma)
        case Arrow(t1, t2):
            members = flatten(sigma)
            if tau in members:
                return True
            if not theory.has_arrow_schemes:
                return False
            if theory.has_omega_arrow and _sub(theory, OMEGA, t2):
                return True
            # the intersection of all usable codomains is the strongest candidate
            cods = [m.cod for m in members if isinstance(m, Arrow) and _sub(theory, t1, m.dom)]
            return bool(cods) and _sub(theory, inter_all(cods), t2)
    raise TypeError(f"not a type: {tau!r}")


def derive_subtype(theory: Theory, sigma: TypeExpr, tau: TypeExpr) -> SubDeriv | None:
    if not subtype(theory, sigma, tau):
        return None
    return _derive(theory, sigma, tau)


def _trans(d1: SubDeriv, d2: SubDeriv) -> SubDeriv:
    if isinstance(d1, Refl):
        return d2
    if isinstance(d2, Refl):
        return d1
    return Trans(d1, d2)


def _glb(d1: SubDeriv, d2: SubDeriv) -> SubDeriv:
    match d1, d2:
        case Incl1(a, b), Incl2(c, e) if (a, b) == (c, e):
            return Refl(Inter(a, b))
    return Glb(d1, d2)


def _arrow(contra: SubDeriv, cov: SubDeriv, dom: TypeExpr, cod: TypeExpr) -> SubDeriv:
    if isinstance(contra, Refl) and isinstance(cov, Refl):
        return Refl(Arrow(dom, cod))
    return ArrowMono(contra, cov)


def _project(sigma: TypeExpr, member: TypeExpr) -> SubDeriv:
    """Projection chain from an intersection down to one of its flattened members."""
    match sigma:
        case Inter(l, r):
            if member in flatten(l):
                return _trans(Incl1(l, r), _project(l, member))
            return _trans(Incl2(l, r), _project(r, member))
    return Refl(sigma)


@lru_cache(maxsize=1 << 14)
def _derive(theory: Theory, sigma: TypeExpr, tau: TypeExpr) -> SubDeriv:
    # caller guarantees sigma <= tau holds
    if sigma == tau:
        return Refl(sigma)
    match tau:
        case Inter(l, r):
            return _glb(_derive(theory, sigma, l), _derive(theory, sigma, r))
        case Omega():
            return OmegaTop(sigma)
        case Atom():
            return _project(sigma, tau)
    t1, t2 = tau.dom, tau.cod
    members = flatten(sigma)
    if tau in members:
        return _project(sigma, tau)
    arrows = []
    for m in members:
        if isinstance(m, Arrow) and m not in arrows and _sub(theory, t1, m.dom):
            arrows.append(m)
    for m in arrows:
        if _sub(theory, m.cod, t2):
            step = _arrow(_derive(theory, t1, m.dom), _derive(theory, m.cod, t2), t1, t2)
            return _trans(_project(sigma, m), step)
    if arrows and _sub(theory, inter_all(m.cod for m in arrows), t2):
        pieces = [
            _trans(_project(sigma, m), _arrow(_derive(theory, t1, m.dom), Refl(m.cod), t1, m.cod))
            for m in arrows
        ]
        acc, rest = pieces[-1], arrows[-1].cod
        for m, piece in zip(reversed(arrows[:-1]), reversed(pieces[:-1])):
            acc = _trans(_glb(piece, acc), ArrowInter(t1, m.cod, rest))
            rest = Inter(m.cod, rest)
        if rest == t2:
            return acc
        return _trans(acc, ArrowMono(Refl(t1), _derive(theory, rest, t2)))
    # only the omega route is left
    base = OmegaArrow(t1) if sigma == OMEGA else Trans(OmegaTop(sigma), OmegaArrow(t1))
    if t2 == OMEGA:
        return base
    return _trans(base, ArrowMono(Refl(t1), _derive(theory, OMEGA, t2)))


def show_subderiv(d: SubDeriv) -> str:
    match d:
        case Refl(s) | OmegaTop(s) | OmegaArrow(s):
            return f"{type(d).__name__}({show_type(s)})"
        case Incl1(a, b) | Incl2(a, b):
            return f"{type(d).__name__}({show_type(a)}, {show_type(b)})"
        case ArrowInter(s, t, r):
            return f"ArrowInter({show_type(s)}, {show_type(t)}, {show_type(r)})"
        case Glb(d1, d2) | Trans(d1, d2):
            return f"{type(d).__name__}({show_subderiv(d1)}, {show_subderiv(d2)})"
        case ArrowMono(dc, dv):
            return f"ArrowMono({show_subderiv(dc)}, {show_subderiv(dv)})"
    raise TypeError(f"not a subtype derivation: {d!r}")


def uses_arrow_axioms(d: SubDeriv) -> bool:
    """Whether `d` relies on (->), (->&) or (omega->)."""
    match d:
        case ArrowInter() | ArrowMono() | OmegaArrow():
            return True
        case Glb(d1, d2) | Trans(d1, d2):
            return uses_arrow_axioms(d1) or uses_arrow_axioms(d2)
    return False
