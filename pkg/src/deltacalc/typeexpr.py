"""Intersection types and the four type theories."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True, slots=True)
class Omega:
    def __str__(self) -> str:
        return "omega"


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: "TypeExpr"
    cod: "TypeExpr"
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def __hash__(self) -> int:
        # cached: structural hashes of deep trees are hot in memo tables
        h = self._hash
        if h is None:
            h = hash((Arrow, self.dom, self.cod))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True, slots=True)
class Inter:
    left: "TypeExpr"
    right: "TypeExpr"
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((Inter, self.left, self.right))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self) -> str:
        return show_type(self)


TypeExpr = Union[Atom, Omega, Arrow, Inter]

OMEGA = Omega()


class IllFormedType(ValueError):
    """A type mentions omega under a theory without it, or an undeclared atom."""


@dataclass(frozen=True, slots=True)
class Theory:
    id: str
    has_omega: bool
    has_omega_top: bool
    has_omega_arrow: bool
    has_arrow_schemes: bool

    def __str__(self) -> str:
        return self.id

    @staticmethod
    def named(name: str) -> "Theory":
        try:
            return THEORIES[name.upper()]
        except KeyError:
            raise ValueError(f"unknown theory {name!r}") from None


CD = Theory("CD", False, False, False, False)
CDS = Theory("CDS", True, True, False, False)
CDV = Theory("CDV", False, False, False, True)
BCD = Theory("BCD", True, True, True, True)

THEORIES = {t.id: t for t in (CD, CDS, CDV, BCD)}


def theory_leq(t1: Theory, t2: Theory) -> bool:
    # every axiom enabled in t1 must be enabled in t2
    flags = ("has_omega", "has_omega_top", "has_omega_arrow", "has_arrow_schemes")
    return all(getattr(t2, f) or not getattr(t1, f) for f in flags)


def flatten(sigma: TypeExpr) -> list[TypeExpr]:
    out: list[TypeExpr] = []
    stack = [sigma]
    while stack:
        t = stack.pop()
        if isinstance(t, Inter):
            stack.append(t.right)
            stack.append(t.left)
        else:
            out.append(t)
    return out


def inter_all(members: Iterable[TypeExpr]) -> TypeExpr:
    """Right-nested intersection of a nonempty sequence."""
    items = list(members)
    if not items:
        raise ValueError("intersection of no types")
    acc = items[-1]
    for t in reversed(items[:-1]):
        acc = Inter(t, acc)
    return acc


def type_size(sigma: TypeExpr) -> int:
    match sigma:
        case Arrow(d, c):
            return 1 + type_size(d) + type_size(c)
        case Inter(l, r):
            return 1 + type_size(l) + type_size(r)
        case _:
            return 1


def mentions_omega(sigma: TypeExpr) -> bool:
    match sigma:
        case Omega():
            return True
        case Arrow(d, c):
            return mentions_omega(d) or mentions_omega(c)
        case Inter(l, r):
            return mentions_omega(l) or mentions_omega(r)
        case _:
            return False


def atoms_of(sigma: TypeExpr) -> set[str]:
    match sigma:
        case Atom(n):
            return {n}
        case Arrow(d, c):
            return atoms_of(d) | atoms_of(c)
        case Inter(l, r):
            return atoms_of(l) | atoms_of(r)
        case _:
            return set()


def check_wellformed(theory: Theory, sigma: TypeExpr, alphabet: Iterable[str] | None = None) -> None:
    if not theory.has_omega and mentions_omega(sigma):
        raise IllFormedType(f"omega is not available in {theory.id}: {show_type(sigma)}")
    if alphabet is not None:
        extra = atoms_of(sigma) - set(alphabet)
        if extra:
            raise IllFormedType(f"undeclared atoms {sorted(extra)} in {show_type(sigma)}")


def show_type(sigma: TypeExpr) -> str:
    """Compact concrete syntax; `&` binds tighter than `->`, both nest explicitly."""
    match sigma:
        case Atom(n):
            return n
        case Omega():
            return "omega"
        case Arrow(d, c):
            left = show_type(d)
            if isinstance(d, Arrow):
                left = f"({left})"
            return f"{left}->{show_type(c)}"
        case Inter(l, r):
            return f"{_inter_operand(l, False)}&{_inter_operand(r, True)}"
    raise TypeError(f"not a type: {sigma!r}")


def _inter_operand(t: TypeExpr, right: bool) -> str:
    s = show_type(t)
    # `&` is left-associative, so a right-nested intersection needs parentheses
    if isinstance(t, Arrow) or (right and isinstance(t, Inter)):
        return f"({s})"
    return s
