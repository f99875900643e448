import pytest

from deltacalc.corpus import CorpusError, parse_corpus, parse_systems, run_corpus
from deltacalc.typecheck import CHAIR


def test_system_patterns():
    assert parse_systems("*") == CHAIR
    assert [str(s) for s in parse_systems("*/betaeta")] == ["CDV/betaeta", "BCD/betaeta"]
    assert [str(s) for s in parse_systems("BCD/syn, CD/syn")] == ["CD/syn", "BCD/syn"]
    for bad in ("CD", "XX/syn", "CD/betaeta"):
        with pytest.raises(CorpusError):
            parse_systems(bad)


def test_format_errors():
    with pytest.raises(CorpusError):
        parse_corpus("only ; three ; fields")
    line = r"n ; * ; ; \x:a. x ; a->a ; note"
    with pytest.raises(CorpusError):
        parse_corpus(f"{line}\n{line}")


def test_shipped_corpus_passes():
    report = run_corpus()
    assert report.ok, report.render()
    assert report.entries >= 30


def test_flipped_expectation_is_reported(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("# one entry\nid ; CD/syn ; ; \\x:a. x ; a->b ; wrong on purpose\n")
    report = run_corpus(f)
    assert len(report.failures) == 1
    assert "expected a->b, got a->a" in report.render()


def test_error_expectations(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("free ; CD/*, BCD/syn ; ; x ; !UnboundVar ; no binding\n")
    report = run_corpus(f)
    assert report.ok and len(report.outcomes) == 3


def test_empty_corpus(tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("# nothing\n\n")
    report = run_corpus(f)
    assert report.ok and report.render().endswith("0 entries, 0/0 checks passed")
