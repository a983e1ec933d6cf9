"""Shared fixtures: bundled mini corpus, a full small pipeline run, and a
terminal summary that prints one PASS/FAIL line per acceptance criterion."""

from pathlib import Path

import pytest

from topikrank.cli import run_pipeline

DATA_DIR = Path(__file__).parent / "data"

_acceptance_results: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def mini_corpus_dir() -> Path:
    return DATA_DIR / "mini_corpus"


@pytest.fixture(scope="session")
def pipeline_run(tmp_path_factory, mini_corpus_dir):
    """One full pipeline run over the bundled 50-file mini corpus.

    Returns the artifact directory; file names follow the manifest below.
    """
    base = tmp_path_factory.mktemp("pipeline")
    labels = base / "labels.tsv"
    labels.write_text("0\tGood times\n1\tMixed\n2\tKitchen talk\n", encoding="utf-8")
    manifest = {
        "input_dir": str(mini_corpus_dir),
        "labels": str(labels),
        "topics": 8,
        "iterations": 60,
        "seed": 42,
        "outputs": {
            "corpus": "corpus.txt",
            "model": "model.txt",
            "doc_topics": "doc_topics.tsv",
            "networks": {"cosine": "cosine.tsv", "pearson": "pearson.tsv"},
            "scores": {"cosine": "cosine_rank.tsv", "pearson": "pearson_rank.tsv"},
            "index": "index.json",
            "clouds": {"cosine": "cloud_cosine.svg"},
            "record": "pipeline_record.json",
        },
    }
    assert run_pipeline(manifest, base) == 0
    return base


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker and marker.args:
        _acceptance_results.append((marker.args[0], report.outcome))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {status} {name}")
