from __future__ import annotations

from typing import Iterable, Iterator

from .typeexpr import TypeExpr, show_type


class Basis:
    """Immutable ordered variable-to-type map; extension shadows an older binding."""

    __slots__ = ("_items", "_hash")

    def __init__(self, items: Iterable[tuple[str, TypeExpr]] = ()):
        seen: dict[str, TypeExpr] = {}
        for name, ty in items:
            seen.pop(name, None)
            seen[name] = ty
        self._items = tuple(seen.items())
        self._hash = None

    def extend(self, name: str, ty: TypeExpr) -> "Basis":
        return Basis(self._items + ((name, ty),))

    def lookup(self, name: str) -> TypeExpr | None:
        for n, t in reversed(self._items):
            if n == name:
                return t
        return None

    def restrict(self, names: Iterable[str]) -> "Basis":
        keep = set(names)
        return Basis((n, t) for n, t in self._items if n in keep)

    def names(self) -> list[str]:
        return [n for n, _ in self._items]

    def items(self) -> tuple[tuple[str, TypeExpr], ...]:
        return self._items

    def __contains__(self, name: object) -> bool:
        return any(n == name for n, _ in self._items)

    def __iter__(self) -> Iterator[tuple[str, TypeExpr]]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Basis) and self._items == other._items

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._items)
        return self._hash

    def __repr__(self) -> str:
        return f"Basis({list(self._items)!r})"

    def __str__(self) -> str:
        return ", ".join(f"{n}:{show_type(t)}" for n, t in self._items)


EMPTY = Basis()
