from __future__ import annotations

import pytest

from deltacalc.corpus import load_corpus
from deltacalc.syntax import parse_basis, parse_term
from deltacalc.typecheck import CHAIR, TypingError, infer
from deltacalc.typeexpr import IllFormedType
from termgen import generate

PER_SYSTEM = 120
SEED = 20240611


@pytest.fixture(scope="session")
def samples():
    out = []
    for sys in CHAIR:
        out += generate(sys, PER_SYSTEM, SEED)
    return out


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def typable_corpus(corpus):
    """(entry, system, basis, term, type) for every corpus check that succeeds."""
    out = []
    for e in corpus:
        b, d = parse_basis(e.basis), parse_term(e.term)
        for sys in e.systems:
            try:
                out.append((e, sys, b, d, infer(sys, b, d)))
            except (TypingError, IllFormedType):
                pass
    return out


ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"{status} criterion {n}: {title}")
