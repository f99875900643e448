"""Golden typing corpus: line format, loading and checking."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .lam import DEFAULT_FUEL
from .syntax import parse_basis, parse_term, parse_type
from .typecheck import CHAIR, SystemId, TypingError, infer
from .typeexpr import IllFormedType, show_type


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    systems: tuple[SystemId, ...]
    basis: str
    term: str
    expected: str
    note: str
    line: int = 0

    @property
    def expects_error(self) -> bool:
        return self.expected.startswith("!")


@dataclass(frozen=True)
class Outcome:
    entry: CorpusEntry
    system: SystemId
    got: str
    ok: bool


@dataclass(frozen=True)
class CorpusReport:
    outcomes: tuple[Outcome, ...]
    entries: int

    @property
    def failures(self) -> list[Outcome]:
        return [o for o in self.outcomes if not o.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self) -> str:
        lines = [
            f"{'PASS' if o.ok else 'FAIL'} {o.entry.name} [{o.system}]: "
            + (o.got if o.ok else f"expected {o.entry.expected}, got {o.got}")
            for o in self.outcomes
        ]
        passed = len(self.outcomes) - len(self.failures)
        lines.append(f"{self.entries} entries, {passed}/{len(self.outcomes)} checks passed")
        return "\n".join(lines)


def parse_systems(src: str) -> tuple[SystemId, ...]:
    picked = []
    for item in (s.strip() for s in src.split(",")):
        if item == "*":
            item = "*/*"
        theory, sep, relation = item.partition("/")
        if not sep:
            raise CorpusError(f"system {item!r} is not THEORY/RELATION")
        matches = [
            s for s in CHAIR
            if theory in ("*", s.theory.id) and relation in ("*", s.relation.value)
        ]
        if not matches:
            raise CorpusError(f"system pattern {item!r} matches nothing")
        picked += [s for s in matches if s not in picked]
    return tuple(s for s in CHAIR if s in picked)


def parse_corpus(text: str) -> list[CorpusEntry]:
    entries = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(";")]
        if len(fields) != 6:
            raise CorpusError(f"line {n}: expected 6 ';'-separated fields, found {len(fields)}")
        name, systems, basis, term, expected, note = fields
        entries.append(CorpusEntry(name, parse_systems(systems), basis, term, expected, note, n))
    names = [e.name for e in entries]
    dupes = {x for x in names if names.count(x) > 1}
    if dupes:
        raise CorpusError(f"duplicate entry names: {sorted(dupes)}")
    return entries


def shipped_corpus_text() -> str:
    return resources.files("deltacalc").joinpath("data/corpus.txt").read_text(encoding="utf-8")


def load_corpus(path: str | Path | None = None) -> list[CorpusEntry]:
    text = shipped_corpus_text() if path is None else Path(path).read_text(encoding="utf-8")
    return parse_corpus(text)


def outcome_of(entry: CorpusEntry, sys: SystemId, fuel: int = DEFAULT_FUEL) -> str:
    """The inferred type as text, or `!Code` for a rejection."""
    try:
        return show_type(infer(sys, parse_basis(entry.basis), parse_term(entry.term), fuel))
    except TypingError as e:
        return f"!{e.code}"
    except IllFormedType:
        return "!IllFormedType"


def _matches(entry: CorpusEntry, got: str) -> bool:
    if entry.expects_error or got.startswith("!"):
        return got == entry.expected
    return parse_type(got) == parse_type(entry.expected)


def run_corpus(path: str | Path | None = None, fuel: int = DEFAULT_FUEL) -> CorpusReport:
    entries = load_corpus(path)
    outcomes = []
    for e in entries:
        for sys in e.systems:
            got = outcome_of(e, sys, fuel)
            outcomes.append(Outcome(e, sys, got, _matches(e, got)))
    return CorpusReport(tuple(outcomes), len(entries))
