"""Concrete syntax: tokenizer, recursive-descent parsers and printers."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .basis import Basis
from .delta import Abs, App, Bound, Coerce, DeltaTerm, Proj, SPair, UConst, Var, free_vars
from .lam import LAbs, LApp, LBound, LVar, LambdaTerm, fresh_name
from .typeexpr import OMEGA, Arrow, Atom, Inter, Omega, TypeExpr, show_type


class ParseError(ValueError):
    def __init__(self, message: str, src: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {src!r}")
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


_SYMBOLS = {
    "->": "->", "→": "->", "&": "&", "∩": "&", "(": "(", ")": ")", "<": "<", "⟨": "<",
    ">": ">", "⟩": ">", ",": ",", ".": ".", ":": ":", "\\": "\\", "λ": "\\", "^": "^",
    "[": "[", "]": "]", "ω": "omega",
}
_TOKEN = re.compile(r"\s*(?:(?P<id>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>->|[→&∩()<⟨>⟩,.:\\λ^\[\]ω]))")


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(src, pos)
        if not m:
            rest = src[pos:]
            if rest.strip():
                raise ParseError("unexpected character", src, pos + len(rest) - len(rest.lstrip()))
            break
        if m.group("id"):
            text = m.group("id")
            kind = text if text in ("omega", "pr1", "pr2") else "id"
            tokens.append(Token(kind, text, m.start("id")))
        else:
            sym = m.group("sym")
            tokens.append(Token(_SYMBOLS[sym], sym, m.start("sym")))
        pos = m.end()
    tokens.append(Token("eof", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def fail(self, message: str) -> ParseError:
        shown = self.tok.text or "end of input"
        return ParseError(f"{message}, found {shown!r}", self.src, self.tok.pos)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.fail(f"expected {kind!r}")
        t = self.tok
        self.i += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.i += 1
            return True
        return False

    def done(self) -> None:
        if self.tok.kind != "eof":
            raise self.fail("unexpected trailing input")

    # types

    def type_(self) -> TypeExpr:
        left = self.inter()
        if self.accept("->"):
            return Arrow(left, self.type_())
        return left

    def inter(self) -> TypeExpr:
        t = self.type_prim()
        while self.accept("&"):
            t = Inter(t, self.type_prim())
        return t

    def type_prim(self) -> TypeExpr:
        tok = self.tok
        if tok.kind == "omega":
            self.i += 1
            return OMEGA
        if tok.kind == "id":
            if not tok.text[0].islower():
                raise self.fail("type atoms are lowercase identifiers")
            self.i += 1
            return Atom(tok.text)
        if self.accept("("):
            t = self.type_()
            self.expect(")")
            return t
        raise self.fail("expected a type")

    # typed terms

    def term(self, scope: list[str]) -> DeltaTerm:
        if self.tok.kind == "\\":
            self.i += 1
            name = self.expect("id").text
            self.expect(":")
            annot = self.type_()
            self.expect(".")
            return Abs(annot, self.term(scope + [name]), name)
        fun = self.item(scope)
        while self.tok.kind in ("id", "(", "<", "pr1", "pr2", "\\"):
            if self.tok.kind == "\\":
                return App(fun, self.term(scope))
            fun = App(fun, self.item(scope))
        return fun

    def item(self, scope: list[str]) -> DeltaTerm:
        if self.tok.kind in ("pr1", "pr2"):
            i = 1 if self.tok.kind == "pr1" else 2
            self.i += 1
            return Proj(i, self.item(scope))
        t = self.atom(scope)
        while self.accept("^"):
            t = Coerce(t, self.type_prim())
        return t

    def atom(self, scope: list[str]) -> DeltaTerm:
        tok = self.tok
        if tok.kind == "id":
            self.i += 1
            if tok.text == "u" and self.tok.kind == "[":
                self.i += 1
                index = self.term(scope)
                self.expect("]")
                return UConst(index)
            return _resolve(tok.text, scope, Bound, Var)
        if self.accept("("):
            t = self.term(scope)
            self.expect(")")
            return t
        if self.accept("<"):
            left = self.term(scope)
            self.expect(",")
            right = self.term(scope)
            self.expect(">")
            return SPair(left, right)
        raise self.fail("expected a term")

    # pure terms

    def lterm(self, scope: list[str]) -> LambdaTerm:
        if self.accept("\\"):
            names = [self.expect("id").text]
            while self.tok.kind == "id":
                names.append(self.expect("id").text)
            self.expect(".")
            body = self.lterm(scope + names)
            for n in reversed(names):
                body = LAbs(body, n)
            return body
        fun = self.latom(scope)
        while self.tok.kind in ("id", "(", "\\"):
            if self.tok.kind == "\\":
                return LApp(fun, self.lterm(scope))
            fun = LApp(fun, self.latom(scope))
        return fun

    def latom(self, scope: list[str]) -> LambdaTerm:
        tok = self.tok
        if tok.kind == "id":
            self.i += 1
            return _resolve(tok.text, scope, LBound, LVar)
        if self.accept("("):
            t = self.lterm(scope)
            self.expect(")")
            return t
        raise self.fail("expected a lambda term")


def _resolve(name, scope, bound, free):
    for k, n in enumerate(reversed(scope)):
        if n == name:
            return bound(k)
    return free(name)


def parse_type(src: str) -> TypeExpr:
    p = _Parser(src)
    t = p.type_()
    p.done()
    return t


def parse_term(src: str) -> DeltaTerm:
    p = _Parser(src)
    t = p.term([])
    p.done()
    return t


def parse_lambda(src: str) -> LambdaTerm:
    p = _Parser(src)
    t = p.lterm([])
    p.done()
    return t


def parse_basis(src: str) -> Basis:
    items = []
    for k, chunk in enumerate(c for c in src.split(",") if c.strip()):
        name, sep, ty = chunk.partition(":")
        name = name.strip()
        if not sep or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
            raise ParseError("expected 'name:type'", src, src.find(chunk))
        items.append((name, parse_type(ty)))
    return Basis(items)


# printing

_TOP, _FUN, _ARG, _POST = 0, 1, 2, 3


def show_term(d: DeltaTerm) -> str:
    return _show(d, [], free_vars(d), _TOP)


def _type_prim(t: TypeExpr) -> str:
    s = show_type(t)
    return s if isinstance(t, (Atom, Omega)) else f"({s})"


def _show(d: DeltaTerm, scope: list[str], avoid: set[str], ctx: int) -> str:
    match d:
        case Var(n):
            return n
        case Bound(k):
            return scope[-1 - k] if k < len(scope) else f"#{k}"
        case UConst(x):
            return f"u[{_show(x, scope, avoid, _TOP)}]"
        case SPair(l, r):
            return f"<{_show(l, scope, avoid, _TOP)}, {_show(r, scope, avoid, _TOP)}>"
        case Abs(annot, body, hint):
            name = fresh_name(hint, avoid | set(scope))
            s = f"\\{name}:{show_type(annot)}. {_show(body, scope + [name], avoid, _TOP)}"
            return s if ctx == _TOP else f"({s})"
        case App(f, a):
            s = f"{_show(f, scope, avoid, _FUN)} {_show(a, scope, avoid, _ARG)}"
            return f"({s})" if ctx >= _ARG else s
        case Proj(i, x):
            inner = _show(x, scope, avoid, _FUN if isinstance(x, Proj) else _POST)
            s = f"pr{i} {inner}"
            return f"({s})" if ctx >= _ARG else s
        case Coerce(x, t):
            return f"{_show(x, scope, avoid, _POST)} ^ {_type_prim(t)}"
    raise TypeError(f"not a term: {d!r}")
