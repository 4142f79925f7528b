"""Self-check suites: coverage counts, report format, mutation sensitivity."""

from __future__ import annotations

from modwick.scalars import EXPR_ZERO
from modwick.verify import (
    CATALAN, MODES, SuiteResult, all_passed, patterns_up_to, report, run_all,
    suite_catalan_count, suite_closed_form_vs_recursion,
    suite_limit_triple_agreement, _bracket_balanced,
)
from modwick.words import word_from_pattern

import pytest


def test_patterns_up_to_counts_and_order():
    pats = list(patterns_up_to(3))
    assert len(pats) == 2 + 4 + 8
    assert pats[:6] == ["a", "+", "aa", "a+", "+a", "++"]
    assert len(list(patterns_up_to(4))) == 30


def test_bracket_balanced():
    balanced = {"a+": True, "aa+a++": True, "+a": False,
                "aa+": False, "a++a": False}
    for pattern, expect in balanced.items():
        assert _bracket_balanced(word_from_pattern(pattern)) is expect, pattern


def test_run_all_small_and_report_shape():
    results = run_all(2)
    assert len(results) == 8
    assert all_passed(results)
    text = report(results)
    assert text.startswith("suite ")
    assert text.endswith("\n")
    lines = text.rstrip("\n").split("\n")
    assert lines[-1].startswith("RESULT pass: 8 suites,")
    assert all(" ok" in line for line in lines[:-1])
    # deterministic output, same run
    assert report(results) == text


def test_run_all_rejects_bad_depth():
    with pytest.raises(ValueError):
        run_all(0)
    with pytest.raises(ValueError):
        run_all(7)


def test_modes_cover_polarization_space():
    assert MODES == ("scalar", "uniform", "cyclic")


def test_catalan_table_matches_suite():
    res = suite_catalan_count(4)
    assert res.passed()
    assert CATALAN[:4] == (1, 2, 5, 14)


def test_equivalence_suite_detects_a_corrupted_route():
    def corrupted(w):
        return EXPR_ZERO

    res = suite_closed_form_vs_recursion(2, closed=corrupted)
    assert not res.passed()
    assert res.failures
    text = report([res])
    assert "FAIL" in text
    assert "FAILURE" in text
    assert text.rstrip("\n").split("\n")[-1].startswith("RESULT fail")


def test_triple_agreement_suite_detects_a_corrupted_route():
    def corrupted(w):
        return EXPR_ZERO

    res = suite_limit_triple_agreement(2, wick=corrupted)
    assert not res.passed()


def test_suite_result_passed_flag():
    ok = SuiteResult("demo", 3, [])
    bad = SuiteResult("demo", 3, ["case x"])
    assert ok.passed() and not bad.passed()
    assert not all_passed([ok, bad])
