"""Simply-typed lambda calculus with products, and the map that forgets intersections."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .basis import Basis
from .delta import Abs, App, Bound, Coerce, DeltaTerm, Proj, SPair, UConst, Var, free_vars, open_body
from .lam import DEFAULT_FUEL, fresh_name
from .typecheck import SystemId, infer
from .typeexpr import Arrow, Atom, Inter, Omega, TypeExpr


@dataclass(frozen=True, slots=True)
class Base:
    def __str__(self) -> str:
        return "o"


@dataclass(frozen=True, slots=True)
class SArrow:
    dom: "SimpleType"
    cod: "SimpleType"


@dataclass(frozen=True, slots=True)
class SProd:
    left: "SimpleType"
    right: "SimpleType"


SimpleType = Union[Base, SArrow, SProd]
BASE = Base()


@dataclass(frozen=True, slots=True)
class SVar:
    name: str


@dataclass(frozen=True, slots=True)
class SBound:
    index: int


@dataclass(frozen=True, slots=True)
class SAbs:
    dom: SimpleType
    body: "StlcTerm"


@dataclass(frozen=True, slots=True)
class SApp:
    fun: "StlcTerm"
    arg: "StlcTerm"


@dataclass(frozen=True, slots=True)
class SPairT:
    left: "StlcTerm"
    right: "StlcTerm"


@dataclass(frozen=True, slots=True)
class SProj:
    i: int
    of: "StlcTerm"


@dataclass(frozen=True, slots=True)
class ConstU:
    pass


@dataclass(frozen=True, slots=True)
class ConstC:
    sigma: SimpleType


StlcTerm = Union[SVar, SBound, SAbs, SApp, SPairT, SProj, ConstU, ConstC]


class StlcTypeError(Exception):
    pass


def show_simple(t: SimpleType) -> str:
    match t:
        case Base():
            return "o"
        case SArrow(d, c):
            left = show_simple(d)
            return f"({left})->{show_simple(c)}" if isinstance(d, SArrow) else f"{left}->{show_simple(c)}"
        case SProd(l, r):
            return f"({show_simple(l)})*({show_simple(r)})"
    raise TypeError(f"not a simple type: {t!r}")


def forget_type(sigma: TypeExpr) -> SimpleType:
    match sigma:
        case Atom() | Omega():
            return BASE
        case Arrow(d, c):
            return SArrow(forget_type(d), forget_type(c))
        case Inter(l, r):
            return SProd(forget_type(l), forget_type(r))
    raise TypeError(f"not a type: {sigma!r}")


def forget_term(sys: SystemId, b: Basis, d: DeltaTerm, fuel: int = DEFAULT_FUEL) -> StlcTerm:
    infer(sys, b, d, fuel)
    return _forget(sys, b, d, fuel)


def _forget(sys: SystemId, b: Basis, d: DeltaTerm, fuel: int) -> StlcTerm:
    match d:
        case Var(n):
            return SVar(n)
        case Bound(k):
            return SBound(k)
        case UConst():
            return ConstU()
        case Abs(annot, body, hint):
            x = fresh_name(hint, set(b.names()) | free_vars(body))
            inner = _forget(sys, b.extend(x, annot), open_body(body, x), fuel)
            return SAbs(forget_type(annot), _close(inner, x))
        case App(f, a):
            return SApp(_forget(sys, b, f, fuel), _forget(sys, b, a, fuel))
        case SPair(l, r):
            return SPairT(_forget(sys, b, l, fuel), _forget(sys, b, r, fuel))
        case Proj(i, x):
            return SProj(i, _forget(sys, b, x, fuel))
        case Coerce(x, target):
            sigma = infer(sys, b, x, fuel)
            c = ConstC(SArrow(forget_type(sigma), forget_type(target)))
            return SApp(c, _forget(sys, b, x, fuel))
    raise TypeError(f"not a term: {d!r}")


def _close(t: StlcTerm, name: str, depth: int = 0) -> StlcTerm:
    match t:
        case SVar(n):
            return SBound(depth) if n == name else t
        case SAbs(s, body):
            return SAbs(s, _close(body, name, depth + 1))
        case SApp(f, a):
            return SApp(_close(f, name, depth), _close(a, name, depth))
        case SPairT(l, r):
            return SPairT(_close(l, name, depth), _close(r, name, depth))
        case SProj(i, x):
            return SProj(i, _close(x, name, depth))
    return t


def stlc_check(basis: Mapping[str, SimpleType], t: StlcTerm) -> SimpleType:
    return _check(dict(basis), [], t)


def _check(free: dict, bound: list, t: StlcTerm) -> SimpleType:
    match t:
        case SVar(n):
            if n not in free:
                raise StlcTypeError(f"unbound variable {n}")
            return free[n]
        case SBound(k):
            if k >= len(bound):
                raise StlcTypeError(f"dangling index {k}")
            return bound[-1 - k]
        case ConstU():
            return BASE
        case ConstC(s):
            return s
        case SAbs(s, body):
            return SArrow(s, _check(free, bound + [s], body))
        case SApp(f, a):
            tf = _check(free, bound, f)
            ta = _check(free, bound, a)
            if not isinstance(tf, SArrow) or tf.dom != ta:
                raise StlcTypeError(f"cannot apply {show_simple(tf)} to {show_simple(ta)}")
            return tf.cod
        case SPairT(l, r):
            return SProd(_check(free, bound, l), _check(free, bound, r))
        case SProj(i, x):
            tx = _check(free, bound, x)
            if not isinstance(tx, SProd):
                raise StlcTypeError(f"projection of non-product {show_simple(tx)}")
            return tx.left if i == 1 else tx.right
    raise TypeError(f"not a simple term: {t!r}")


def forget_basis(b: Basis) -> dict[str, SimpleType]:
    return {n: forget_type(t) for n, t in b}


def _shift(t: StlcTerm, d: int, cutoff: int = 0) -> StlcTerm:
    match t:
        case SBound(k):
            return SBound(k + d) if k >= cutoff else t
        case SAbs(s, body):
            return SAbs(s, _shift(body, d, cutoff + 1))
        case SApp(f, a):
            return SApp(_shift(f, d, cutoff), _shift(a, d, cutoff))
        case SPairT(l, r):
            return SPairT(_shift(l, d, cutoff), _shift(r, d, cutoff))
        case SProj(i, x):
            return SProj(i, _shift(x, d, cutoff))
    return t


def _instantiate(body: StlcTerm, arg: StlcTerm, depth: int = 0) -> StlcTerm:
    match body:
        case SBound(k):
            if k == depth:
                return _shift(arg, depth)
            return SBound(k - 1) if k > depth else body
        case SAbs(s, b):
            return SAbs(s, _instantiate(b, arg, depth + 1))
        case SApp(f, a):
            return SApp(_instantiate(f, arg, depth), _instantiate(a, arg, depth))
        case SPairT(l, r):
            return SPairT(_instantiate(l, arg, depth), _instantiate(r, arg, depth))
        case SProj(i, x):
            return SProj(i, _instantiate(x, arg, depth))
    return body


def stlc_successors(t: StlcTerm) -> list[StlcTerm]:
    """Every one-step beta or projection reduct."""
    out = []
    match t:
        case SApp(SAbs(_, body), arg):
            out.append(_instantiate(body, arg))
        case SProj(1, SPairT(l, _)):
            out.append(l)
        case SProj(2, SPairT(_, r)):
            out.append(r)
    match t:
        case SAbs(s, body):
            out += [SAbs(s, x) for x in stlc_successors(body)]
        case SApp(f, a):
            out += [SApp(x, a) for x in stlc_successors(f)]
            out += [SApp(f, x) for x in stlc_successors(a)]
        case SPairT(l, r):
            out += [SPairT(x, r) for x in stlc_successors(l)]
            out += [SPairT(l, x) for x in stlc_successors(r)]
        case SProj(i, x):
            out += [SProj(i, y) for y in stlc_successors(x)]
    return out
