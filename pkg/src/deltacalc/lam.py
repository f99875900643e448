"""Pure lambda terms: locally nameless representation, normalization, essence relations."""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Union

from . import _pykernel

if os.environ.get("DELTACALC_PURE_PYTHON"):
    _kernel = _pykernel
else:
    try:
        from . import _ckernel as _kernel
    except ImportError:
        _kernel = _pykernel

KERNEL = _kernel.NAME
DEFAULT_FUEL = 10_000
# a reduct longer than this many slots counts as exhausting the budget
MAX_CODE_LEN = 1 << 16


@dataclass(frozen=True, slots=True)
class LVar:
    name: str


@dataclass(frozen=True, slots=True)
class LBound:
    index: int


@dataclass(frozen=True, slots=True)
class LAbs:
    body: "LambdaTerm"
    hint: str = field(default="x", compare=False)
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def __hash__(self) -> int:
        # cached: structural hashes of deep trees are hot in memo tables
        h = self._hash
        if h is None:
            h = hash((LAbs, self.body))
            object.__setattr__(self, "_hash", h)
        return h


@dataclass(frozen=True, slots=True)
class LApp:
    fun: "LambdaTerm"
    arg: "LambdaTerm"
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((LApp, self.fun, self.arg))
            object.__setattr__(self, "_hash", h)
        return h


LambdaTerm = Union[LVar, LBound, LAbs, LApp]


class Relation(enum.Enum):
    SYN = "syn"
    BETA = "beta"
    BETAETA = "betaeta"

    @property
    def rank(self) -> int:
        return _RANK[self]

    def __le__(self, other: "Relation") -> bool:
        return self.rank <= other.rank

    @staticmethod
    def named(name: str) -> "Relation":
        key = name.strip().lower().replace("=", "").replace("_", "")
        aliases = {"syn": "syn", "≡": "syn", "beta": "beta", "β": "beta", "betaeta": "betaeta", "βη": "betaeta"}
        if key not in aliases:
            raise ValueError(f"unknown relation {name!r}")
        return Relation(aliases[key])


_RANK = {Relation.SYN: 0, Relation.BETA: 1, Relation.BETAETA: 2}


class RelVerdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown (fuel exhausted)"


def lshift(t: LambdaTerm, d: int, cutoff: int = 0) -> LambdaTerm:
    match t:
        case LBound(k):
            return LBound(k + d) if k >= cutoff else t
        case LAbs(b, h):
            return LAbs(lshift(b, d, cutoff + 1), h)
        case LApp(f, a):
            return LApp(lshift(f, d, cutoff), lshift(a, d, cutoff))
    return t


def linstantiate(body: LambdaTerm, arg: LambdaTerm, depth: int = 0) -> LambdaTerm:
    """Replace the outermost loose index of `body` by `arg`."""
    match body:
        case LBound(k):
            if k == depth:
                return lshift(arg, depth)
            return LBound(k - 1) if k > depth else body
        case LAbs(b, h):
            return LAbs(linstantiate(b, arg, depth + 1), h)
        case LApp(f, a):
            return LApp(linstantiate(f, arg, depth), linstantiate(a, arg, depth))
    return body


def lopen(body: LambdaTerm, name: str) -> LambdaTerm:
    return linstantiate(body, LVar(name))


def lclose(t: LambdaTerm, name: str, depth: int = 0) -> LambdaTerm:
    match t:
        case LVar(n) if n == name:
            return LBound(depth)
        case LAbs(b, h):
            return LAbs(lclose(b, name, depth + 1), h)
        case LApp(f, a):
            return LApp(lclose(f, name, depth), lclose(a, name, depth))
    return t


def labs(name: str, body: LambdaTerm) -> LambdaTerm:
    return LAbs(lclose(body, name), name)


def subst_l(body: LambdaTerm, x: str, arg: LambdaTerm, depth: int = 0) -> LambdaTerm:
    match body:
        case LVar(n) if n == x:
            return lshift(arg, depth)
        case LAbs(b, h):
            return LAbs(subst_l(b, x, arg, depth + 1), h)
        case LApp(f, a):
            return LApp(subst_l(f, x, arg, depth), subst_l(a, x, arg, depth))
    return body


def lfree_vars(t: LambdaTerm) -> set[str]:
    match t:
        case LVar(n):
            return {n}
        case LAbs(b):
            return lfree_vars(b)
        case LApp(f, a):
            return lfree_vars(f) | lfree_vars(a)
    return set()


def lsize(t: LambdaTerm) -> int:
    match t:
        case LAbs(b):
            return 1 + lsize(b)
        case LApp(f, a):
            return 1 + lsize(f) + lsize(a)
    return 1


def alpha_eq(m: LambdaTerm, n: LambdaTerm) -> bool:
    # binder hints do not take part in equality
    return m == n


def encode(t: LambdaTerm) -> tuple[list[int], list[str], list[str]]:
    code: list[int] = []
    names: dict[str, int] = {}
    hints: dict[str, int] = {}
    stack = [t]
    while stack:
        node = stack.pop()
        match node:
            case LApp(f, a):
                code.append(_pykernel.APP)
                stack.append(a)
                stack.append(f)
            case LAbs(b, h):
                code.append(_pykernel.ABS)
                code.append(hints.setdefault(h, len(hints)))
                stack.append(b)
            case LBound(k):
                code.append(k)
            case LVar(n):
                code.append(-3 - names.setdefault(n, len(names)))
    return code, list(names), list(hints)


def decode(code: list[int], names: list[str], hints: list[str]) -> LambdaTerm:
    out: list[LambdaTerm] = []
    # build bottom-up by scanning right to left; hint slots are skipped by position
    kinds = _slot_kinds(code)
    for i in range(len(code) - 1, -1, -1):
        kind = kinds[i]
        c = code[i]
        if kind == "hint":
            continue
        if kind == "app":
            f = out.pop()
            a = out.pop()
            out.append(LApp(f, a))
        elif kind == "abs":
            out.append(LAbs(out.pop(), hints[code[i + 1]]))
        elif c >= 0:
            out.append(LBound(c))
        else:
            out.append(LVar(names[-3 - c]))
    return out[0]


def _slot_kinds(code: list[int]) -> list[str]:
    kinds = ["node"] * len(code)
    i = 0
    while i < len(code):
        if code[i] == _pykernel.APP:
            kinds[i] = "app"
        elif code[i] == _pykernel.ABS:
            kinds[i] = "abs"
            kinds[i + 1] = "hint"
            i += 1
        i += 1
    return kinds


def normalize_steps(m: LambdaTerm, mode: Relation | str, fuel: int = DEFAULT_FUEL, kernel=None) -> tuple[LambdaTerm | None, int]:
    mode = _mode(mode)
    code, names, hints = encode(m)
    result, steps = (kernel or _kernel).normalize_code(code, mode is Relation.BETAETA, fuel, MAX_CODE_LEN)
    if result is None:
        return None, steps
    return decode(result, names, hints), steps


def normalize(m: LambdaTerm, mode: Relation | str = Relation.BETA, fuel: int = DEFAULT_FUEL) -> LambdaTerm | None:
    return normalize_steps(m, mode, fuel)[0]


def _mode(mode: Relation | str) -> Relation:
    if isinstance(mode, str):
        mode = Relation.named(mode)
    if mode is Relation.SYN:
        raise ValueError("normalization needs beta or betaeta")
    return mode


def rel_check(r: Relation | str, m: LambdaTerm, n: LambdaTerm, fuel: int = DEFAULT_FUEL) -> RelVerdict:
    if isinstance(r, str):
        r = Relation.named(r)
    if alpha_eq(m, n):
        return RelVerdict.HOLDS
    if r is Relation.SYN:
        return RelVerdict.FAILS
    nm = normalize(m, r, fuel)
    if nm is None:
        return RelVerdict.UNKNOWN
    nn = normalize(n, r, fuel)
    if nn is None:
        return RelVerdict.UNKNOWN
    return RelVerdict.HOLDS if alpha_eq(nm, nn) else RelVerdict.FAILS


def _loose(t: LambdaTerm, k: int) -> bool:
    match t:
        case LBound(j):
            return j == k
        case LAbs(b, _):
            return _loose(b, k + 1)
        case LApp(f, a):
            return _loose(f, k) or _loose(a, k)
    return False


def lsuccessors(t: LambdaTerm, eta: bool = False) -> list[LambdaTerm]:
    """All one-step beta (and optionally eta) reducts."""
    out = []
    match t:
        case LApp(f, a):
            if isinstance(f, LAbs):
                out.append(linstantiate(f.body, a))
            out += [LApp(f1, a) for f1 in lsuccessors(f, eta)]
            out += [LApp(f, a1) for a1 in lsuccessors(a, eta)]
        case LAbs(b, h):
            if eta and isinstance(b, LApp) and b.arg == LBound(0) and not _loose(b.fun, 0):
                out.append(lshift(b.fun, -1))
            out += [LAbs(b1, h) for b1 in lsuccessors(b, eta)]
    return out


def common_reduct(r: Relation | str, m: LambdaTerm, n: LambdaTerm, depth: int = 8, width: int = 5000) -> LambdaTerm | None:
    """A term both sides reach within `depth` steps, or None if the bounded search finds none.

    A hit witnesses the relation even when neither side has a normal form.
    """
    eta = _mode(r) is Relation.BETAETA
    seen = [{m}, {n}]
    frontier = [{m}, {n}]
    for _ in range(depth + 1):
        hit = seen[0] & seen[1]
        if hit:
            return min(hit, key=lsize)
        for i in (0, 1):
            nxt = {s for t in frontier[i] for s in lsuccessors(t, eta)} - seen[i]
            if len(seen[i]) + len(nxt) > width:
                return None
            seen[i] |= nxt
            frontier[i] = nxt
    return None


def fresh_name(hint: str, avoid: set[str] | frozenset[str]) -> str:
    if hint not in avoid:
        return hint
    base = hint.rstrip("0123456789")
    k = 1
    while f"{base}{k}" in avoid:
        k += 1
    return f"{base}{k}"


def show_lambda(t: LambdaTerm) -> str:
    return _show(t, [], lfree_vars(t), 0)


def _show(t: LambdaTerm, scope: list[str], avoid: set[str], ctx: int) -> str:
    # ctx: 0 top, 1 function position, 2 argument position
    match t:
        case LVar(n):
            return n
        case LBound(k):
            return scope[-1 - k] if k < len(scope) else f"#{k}"
        case LAbs(b, h):
            name = fresh_name(h, avoid | set(scope))
            s = f"\\{name}. {_show(b, scope + [name], avoid, 0)}"
            return f"({s})" if ctx else s
        case LApp(f, a):
            s = f"{_show(f, scope, avoid, 1)} {_show(a, scope, avoid, 2)}"
            return f"({s})" if ctx == 2 else s
    raise TypeError(f"not a lambda term: {t!r}")
