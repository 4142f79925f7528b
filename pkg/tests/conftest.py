"""Shared fixtures: CLI invocation, word files, the standard smearing setup."""

from __future__ import annotations

import contextlib
import io
import json

import pytest

from modwick.cli import main
from modwick.kernels import Assignment, GaussianTest, strip_momentum_deltas
from modwick.pairings import annotated_pairing_terms
from modwick.words import word_from_pattern, word_to_json_dict

STUDY_K1 = (1.0, 0.0, 0.0)
STUDY_K2 = (1.0, 1.0, 0.0)


@pytest.fixture
def cli_run():
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""

    def run(argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(argv)
        return code, out.getvalue(), err.getvalue()

    return run


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data, indent=1), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def word_file(write_json):
    def make(pattern, pols=None, name="word.json"):
        return write_json(name, word_to_json_dict(word_from_pattern(pattern, pols)))

    return make


@pytest.fixture
def study_assignment_file(write_json):
    return write_json("assignment.json", {
        "momenta": {"k1": list(STUDY_K1), "k2": list(STUDY_K2)},
        "p": [0.0, 0.0, 0.0],
    })


@pytest.fixture(scope="session")
def study_setup():
    """Four-point study word terms, keyed by crossing tag.

    Canonicalization rewrites every phase in terms of the representative
    momentum labels k1 and k2, so the assignment only needs those two.
    """
    terms = {}
    for ann in annotated_pairing_terms(word_from_pattern("aa++")):
        tag = "crossing" if ann.crossings else "noncrossing"
        terms[tag] = strip_momentum_deltas(ann.term)
    assert set(terms) == {"crossing", "noncrossing"}
    assignment = Assignment({"k1": STUDY_K1, "k2": STUDY_K2}, (0.0, 0.0, 0.0))
    tests = {f"t{i}": GaussianTest(0.0, 1.0) for i in range(1, 5)}
    return terms, tests, assignment
