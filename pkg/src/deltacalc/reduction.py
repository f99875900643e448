"""Beta, projection and eta reduction: plain, synchronous and parallel closures."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, Iterator

from .delta import (
    Abs,
    App,
    Bound,
    Coerce,
    DeltaTerm,
    Proj,
    SPair,
    essence,
    has_loose,
    instantiate,
    shift,
)
from .lam import DEFAULT_FUEL, alpha_eq

Position = tuple[int, ...]


class RedexKind(enum.Enum):
    BETA = "Beta"
    PROJ1 = "Proj1"
    PROJ2 = "Proj2"
    ETA = "Eta"


BETA_PR = frozenset({RedexKind.BETA, RedexKind.PROJ1, RedexKind.PROJ2})
ALL_KINDS = BETA_PR | {RedexKind.ETA}


class InvalidPosition(ValueError):
    pass


class InvalidChoice(ValueError):
    pass


class SyncViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class TraceRecord:
    positions: tuple[tuple[Position, RedexKind], ...]
    term: DeltaTerm


def show_position(pos: Position) -> str:
    return ".".join(map(str, pos)) if pos else "root"


def root_kind(t: DeltaTerm, kinds: Iterable[RedexKind] = ALL_KINDS) -> RedexKind | None:
    match t:
        case App(Abs(), _) if RedexKind.BETA in kinds:
            return RedexKind.BETA
        case Proj(1, SPair()) if RedexKind.PROJ1 in kinds:
            return RedexKind.PROJ1
        case Proj(2, SPair()) if RedexKind.PROJ2 in kinds:
            return RedexKind.PROJ2
        case Abs(_, App(f, Bound(0))) if RedexKind.ETA in kinds and not has_loose(f):
            return RedexKind.ETA
    return None


def contract(t: DeltaTerm, kind: RedexKind) -> DeltaTerm:
    match kind, t:
        case RedexKind.BETA, App(Abs(_, body), arg):
            return instantiate(body, arg)
        case RedexKind.PROJ1, Proj(1, SPair(l, _)):
            return l
        case RedexKind.PROJ2, Proj(2, SPair(_, r)):
            return r
        case RedexKind.ETA, Abs(_, App(f, Bound(0))) if not has_loose(f):
            return shift(f, -1)
    raise InvalidPosition(f"no {kind.value} redex here")


def children(t: DeltaTerm) -> tuple[DeltaTerm, ...]:
    match t:
        case Abs(_, b) | Proj(_, b) | Coerce(b, _):
            return (b,)
        case App(l, r) | SPair(l, r):
            return (l, r)
    # u-constant indices are deliberately not reachable
    return ()


def with_child(t: DeltaTerm, i: int, new: DeltaTerm) -> DeltaTerm:
    match t:
        case Abs(s, _, h):
            return Abs(s, new, h)
        case Proj(k, _):
            return Proj(k, new)
        case Coerce(_, s):
            return Coerce(new, s)
        case App(l, r):
            return App(new, r) if i == 0 else App(l, new)
        case SPair(l, r):
            return SPair(new, r) if i == 0 else SPair(l, new)
    raise InvalidPosition(f"no child {i}")


def subterm(d: DeltaTerm, pos: Position) -> DeltaTerm:
    for i in pos:
        kids = children(d)
        if i >= len(kids):
            raise InvalidPosition(f"path {show_position(pos)} leaves the term")
        d = kids[i]
    return d


def replace(d: DeltaTerm, pos: Position, new: DeltaTerm) -> DeltaTerm:
    if not pos:
        return new
    kids = children(d)
    if pos[0] >= len(kids):
        raise InvalidPosition(f"path {show_position(pos)} leaves the term")
    return with_child(d, pos[0], replace(kids[pos[0]], pos[1:], new))


def redexes(d: DeltaTerm, kinds: Iterable[RedexKind] = BETA_PR) -> list[tuple[Position, RedexKind]]:
    kinds = frozenset(kinds)
    out = []
    stack: list[tuple[DeltaTerm, Position]] = [(d, ())]
    while stack:
        t, pos = stack.pop()
        k = root_kind(t, kinds)
        if k is not None:
            out.append((pos, k))
        kids = children(t)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((kids[i], pos + (i,)))
    return out


def step(d: DeltaTerm, at: Position, kind: RedexKind) -> DeltaTerm:
    t = subterm(d, at)
    if root_kind(t, {kind}) is not kind:
        raise InvalidPosition(f"no {kind.value} redex at {show_position(at)}")
    return replace(d, at, contract(t, kind))


def successors(d: DeltaTerm, kinds: Iterable[RedexKind] = BETA_PR) -> list[DeltaTerm]:
    return [step(d, p, k) for p, k in redexes(d, kinds)]


def step_sync(
    d: DeltaTerm, left_sel: tuple[Position, RedexKind], right_sel: tuple[Position, RedexKind]
) -> DeltaTerm | None:
    (lpos, lkind), (rpos, rkind) = left_sel, right_sel
    k = 0
    while k < min(len(lpos), len(rpos)) and lpos[k] == rpos[k]:
        k += 1
    prefix = lpos[:k]
    if k == len(lpos) or k == len(rpos) or (lpos[k], rpos[k]) != (0, 1):
        raise InvalidPosition("selections must address the two components of one pair")
    pair = subterm(d, prefix)
    if not isinstance(pair, SPair):
        raise InvalidPosition(f"no pair at {show_position(prefix)}")
    left = step(pair.left, lpos[k + 1:], lkind)
    right = step(pair.right, rpos[k + 1:], rkind)
    if not alpha_eq(essence(left), essence(right)):
        return None
    return replace(d, prefix, SPair(left, right))


def sync_successors(d: DeltaTerm, kinds: Iterable[RedexKind] = BETA_PR) -> Iterator[TraceRecord]:
    """One synchronous step, leftmost-outermost first.

    Inside a pair each component takes one step or stays put (at least one
    moves), and the resulting components must have the same essence.
    """
    return _sync(d, (), frozenset(kinds))


def _sync(t: DeltaTerm, path: Position, kinds: frozenset) -> Iterator[TraceRecord]:
    k = root_kind(t, kinds)
    if k is not None:
        yield TraceRecord(((path, k),), contract(t, k))
    match t:
        case SPair(l, r):
            lefts = list(_sync(l, path + (0,), kinds)) + [TraceRecord((), l)]
            rights = list(_sync(r, path + (1,), kinds)) + [TraceRecord((), r)]
            for lrec in lefts:
                for rrec in rights:
                    if not lrec.positions and not rrec.positions:
                        continue
                    if alpha_eq(essence(lrec.term), essence(rrec.term)):
                        yield TraceRecord(lrec.positions + rrec.positions, SPair(lrec.term, rrec.term))
        case _:
            for i, kid in enumerate(children(t)):
                for rec in _sync(kid, path + (i,), kinds):
                    yield TraceRecord(rec.positions, with_child(t, i, rec.term))


def reduce_trace(
    d: DeltaTerm, mode: str = "plain", fuel: int = DEFAULT_FUEL, eta: bool = False
) -> tuple[DeltaTerm | None, list[TraceRecord]]:
    """Leftmost-outermost reduction to normal form; None as result on fuel exhaustion."""
    kinds = ALL_KINDS if eta else BETA_PR
    if mode not in ("plain", "sync"):
        raise ValueError(f"unknown reduction mode {mode!r}")
    trace: list[TraceRecord] = []
    while True:
        if mode == "plain":
            found = redexes(d, kinds)
            rec = None
            if found:
                pos, kind = found[0]
                rec = TraceRecord(((pos, kind),), step(d, pos, kind))
        else:
            rec = next(sync_successors(d, kinds), None)
            if rec is None and redexes(d, kinds):
                raise SyncViolation("no synchronised step exists for a reducible pair")
        if rec is None:
            return d, trace
        if len(trace) >= fuel:
            return None, trace
        trace.append(rec)
        d = rec.term


def normalize_d(d: DeltaTerm, mode: str = "plain", fuel: int = DEFAULT_FUEL, eta: bool = False) -> DeltaTerm | None:
    return reduce_trace(d, mode, fuel, eta)[0]


def par_step(d: DeltaTerm, choice: Iterable[Position]) -> DeltaTerm:
    chosen = frozenset(choice)
    valid = {p for p, _ in redexes(d, BETA_PR)}
    bad = chosen - valid
    if bad:
        raise InvalidChoice(f"not beta/projection redexes: {sorted(map(show_position, bad))}")
    return _par(d, (), chosen)


def _par(t: DeltaTerm, path: Position, chosen: frozenset) -> DeltaTerm:
    if path in chosen:
        match t:
            case App(Abs(_, body), arg):
                return instantiate(_par(body, path + (0, 0), chosen), _par(arg, path + (1,), chosen))
            case Proj(i, SPair(l, r)):
                return _par(l if i == 1 else r, path + (0, i - 1), chosen)
    kids = children(t)
    for i, kid in enumerate(kids):
        t = with_child(t, i, _par(kid, path + (i,), chosen))
    return t


def par_successors(d: DeltaTerm) -> Iterator[DeltaTerm]:
    """Every one-step parallel reduct, one per subset of redexes."""
    spots = [p for p, _ in redexes(d, BETA_PR)]
    for subset in chain.from_iterable(combinations(spots, n) for n in range(len(spots) + 1)):
        yield _par(d, (), frozenset(subset))


def complete_dev(d: DeltaTerm, eta: bool = False) -> DeltaTerm:
    match d:
        case App(Abs(_, body), arg):
            return instantiate(complete_dev(body, eta), complete_dev(arg, eta))
        case Proj(i, SPair(l, r)):
            return complete_dev(l if i == 1 else r, eta)
        case Abs(_, App(f, Bound(0))) if eta and not has_loose(f):
            return shift(complete_dev(f, eta), -1)
        case Abs(s, b, h):
            return Abs(s, complete_dev(b, eta), h)
        case App(f, a):
            return App(complete_dev(f, eta), complete_dev(a, eta))
        case SPair(l, r):
            return SPair(complete_dev(l, eta), complete_dev(r, eta))
        case Proj(i, x):
            return Proj(i, complete_dev(x, eta))
        case Coerce(x, s):
            return Coerce(complete_dev(x, eta), s)
    return d
