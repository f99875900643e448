"""Explicitly typed terms with strong pairs, projections, coercions and u-constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .lam import LAbs, LApp, LBound, LVar, LambdaTerm, alpha_eq
from .typeexpr import TypeExpr


@dataclass(frozen=True, slots=True)
class UConst:
    index: "DeltaTerm"


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Bound:
    index: int


@dataclass(frozen=True, slots=True)
class Abs:
    annot: TypeExpr
    body: "DeltaTerm"
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True, slots=True)
class App:
    fun: "DeltaTerm"
    arg: "DeltaTerm"


@dataclass(frozen=True, slots=True)
class SPair:
    left: "DeltaTerm"
    right: "DeltaTerm"


@dataclass(frozen=True, slots=True)
class Proj:
    i: int
    of: "DeltaTerm"


@dataclass(frozen=True, slots=True)
class Coerce:
    of: "DeltaTerm"
    target: TypeExpr


DeltaTerm = Union[UConst, Var, Bound, Abs, App, SPair, Proj, Coerce]


def shift(t: DeltaTerm, d: int, cutoff: int = 0) -> DeltaTerm:
    match t:
        case Bound(k):
            return Bound(k + d) if k >= cutoff else t
        case Var():
            return t
        case Abs(s, b, h):
            return Abs(s, shift(b, d, cutoff + 1), h)
        case App(f, a):
            return App(shift(f, d, cutoff), shift(a, d, cutoff))
        case SPair(l, r):
            return SPair(shift(l, d, cutoff), shift(r, d, cutoff))
        case Proj(i, x):
            return Proj(i, shift(x, d, cutoff))
        case Coerce(x, s):
            return Coerce(shift(x, d, cutoff), s)
        case UConst(x):
            return UConst(shift(x, d, cutoff))
    raise TypeError(f"not a term: {t!r}")


def instantiate(body: DeltaTerm, arg: DeltaTerm, depth: int = 0) -> DeltaTerm:
    """Substitute `arg` for the outermost loose index of `body`."""
    match body:
        case Bound(k):
            if k == depth:
                return shift(arg, depth) if depth else arg
            return Bound(k - 1) if k > depth else body
        case Var():
            return body
        case Abs(s, b, h):
            return Abs(s, instantiate(b, arg, depth + 1), h)
        case App(f, a):
            return App(instantiate(f, arg, depth), instantiate(a, arg, depth))
        case SPair(l, r):
            return SPair(instantiate(l, arg, depth), instantiate(r, arg, depth))
        case Proj(i, x):
            return Proj(i, instantiate(x, arg, depth))
        case Coerce(x, s):
            return Coerce(instantiate(x, arg, depth), s)
        case UConst(x):
            return UConst(instantiate(x, arg, depth))
    raise TypeError(f"not a term: {body!r}")


def open_body(body: DeltaTerm, name: str) -> DeltaTerm:
    return instantiate(body, Var(name))


def close(t: DeltaTerm, name: str, depth: int = 0) -> DeltaTerm:
    """Turn free occurrences of `name` into the index bound just outside `t`."""
    match t:
        case Var(n):
            return Bound(depth) if n == name else t
        case Bound():
            return t
        case Abs(s, b, h):
            return Abs(s, close(b, name, depth + 1), h)
        case App(f, a):
            return App(close(f, name, depth), close(a, name, depth))
        case SPair(l, r):
            return SPair(close(l, name, depth), close(r, name, depth))
        case Proj(i, x):
            return Proj(i, close(x, name, depth))
        case Coerce(x, s):
            return Coerce(close(x, name, depth), s)
        case UConst(x):
            return UConst(close(x, name, depth))
    raise TypeError(f"not a term: {t!r}")


def lam(name: str, annot: TypeExpr, body: DeltaTerm) -> Abs:
    """Abstraction over a named variable of `body`."""
    return Abs(annot, close(body, name), name)


def subst_d(body: DeltaTerm, x: str, arg: DeltaTerm, depth: int = 0) -> DeltaTerm:
    match body:
        case Var(n):
            return (shift(arg, depth) if depth else arg) if n == x else body
        case Bound():
            return body
        case Abs(s, b, h):
            return Abs(s, subst_d(b, x, arg, depth + 1), h)
        case App(f, a):
            return App(subst_d(f, x, arg, depth), subst_d(a, x, arg, depth))
        case SPair(l, r):
            return SPair(subst_d(l, x, arg, depth), subst_d(r, x, arg, depth))
        case Proj(i, t):
            return Proj(i, subst_d(t, x, arg, depth))
        case Coerce(t, s):
            return Coerce(subst_d(t, x, arg, depth), s)
        case UConst(t):
            return UConst(subst_d(t, x, arg, depth))
    raise TypeError(f"not a term: {body!r}")


def free_vars(t: DeltaTerm) -> set[str]:
    return set(_names(t))


def _names(t: DeltaTerm) -> Iterator[str]:
    stack = [t]
    while stack:
        node = stack.pop()
        match node:
            case Var(n):
                yield n
            case Abs(_, b) | Proj(_, b) | Coerce(b, _) | UConst(b):
                stack.append(b)
            case App(l, r) | SPair(l, r):
                stack.append(r)
                stack.append(l)


def has_loose(t: DeltaTerm, depth: int = 0) -> bool:
    """Whether `t` mentions the index bound just outside it."""
    match t:
        case Bound(k):
            return k == depth
        case Var():
            return False
        case Abs(_, b):
            return has_loose(b, depth + 1)
        case App(l, r) | SPair(l, r):
            return has_loose(l, depth) or has_loose(r, depth)
        case Proj(_, b) | Coerce(b, _) | UConst(b):
            return has_loose(b, depth)
    raise TypeError(f"not a term: {t!r}")


def essence(d: DeltaTerm) -> LambdaTerm:
    match d:
        case Var(n):
            return LVar(n)
        case Bound(k):
            return LBound(k)
        case Abs(_, b, h):
            return LAbs(essence(b), h)
        case App(f, a):
            return LApp(essence(f), essence(a))
        case SPair(l, _):
            return essence(l)
        case Proj(_, x) | Coerce(x, _) | UConst(x):
            return essence(x)
    raise TypeError(f"not a term: {d!r}")


def pairs(d: DeltaTerm) -> Iterator[SPair]:
    stack = [d]
    while stack:
        node = stack.pop()
        match node:
            case SPair(l, r):
                yield node
                stack.append(r)
                stack.append(l)
            case App(l, r):
                stack.append(r)
                stack.append(l)
            case Abs(_, b) | Proj(_, b) | Coerce(b, _) | UConst(b):
                stack.append(b)


def is_synchronous(d: DeltaTerm) -> bool:
    return all(alpha_eq(essence(p.left), essence(p.right)) for p in pairs(d))


def delta_size(d: DeltaTerm) -> int:
    match d:
        case Abs(_, b) | Proj(_, b) | Coerce(b, _) | UConst(b):
            return 1 + delta_size(b)
        case App(l, r) | SPair(l, r):
            return 1 + delta_size(l) + delta_size(r)
    return 1


def is_coercion_free(d: DeltaTerm) -> bool:
    match d:
        case Coerce():
            return False
        case Abs(_, b) | Proj(_, b) | UConst(b):
            return is_coercion_free(b)
        case App(l, r) | SPair(l, r):
            return is_coercion_free(l) and is_coercion_free(r)
    return True
