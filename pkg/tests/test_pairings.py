"""Pairing enumeration and the closed-form correlator terms.

The four-point terms are frozen here in full, from a hand derivation:
the weighted phase of a pair is shifted only by pairs that strictly
enclose it, and each crossing pattern contributes one separate
unweighted oscillation.
"""

from __future__ import annotations

import math

import pytest

from modwick.pairings import (
    Pairing, annotated_pairing_terms, correlator_pairing_sum, crossing_count,
    crossing_patterns, enclosing_pairs, enumerate_pairings, is_crossing,
    pairing_term, straddle_set,
)
from modwick.scalars import (
    C_ONE, ContractionPhase, Dot, Energy, MomentumDelta, PDot, PhaseArg,
    ScalarTerm, TimeComb, canonicalize, canonically_equal, term_signature,
)
from modwick.words import WordError, correlator_recursive, word_from_pattern


def weighted_phase(t_from, t_to, arg_dict):
    return ContractionPhase(TimeComb.difference(t_from, t_to),
                            PhaseArg.of(arg_dict), weighted=True)


# ---------------------------------------------------------------------------
# combinatorics

def test_enumerate_pairings_counts():
    counts = {"a+": 1, "aa++": 2, "a+a+": 1, "aaa+++": 6, "aa+a++": 4}
    for pattern, expected in counts.items():
        assert len(enumerate_pairings(word_from_pattern(pattern))) == expected
    assert enumerate_pairings(word_from_pattern("+a")) == []
    assert enumerate_pairings(word_from_pattern("aa+")) == []


def test_block_word_factorial_counts():
    for n in range(1, 6):
        w = word_from_pattern("a" * n + "+" * n)
        assert len(enumerate_pairings(w)) == math.factorial(n)


def test_pairing_sorted_and_deterministic():
    p = Pairing(((2, 3), (1, 4)))
    assert p.pairs == ((1, 4), (2, 3))
    ps = enumerate_pairings(word_from_pattern("aa++"))
    assert [q.pairs for q in ps] == [((1, 3), (2, 4)), ((1, 4), (2, 3))]


def test_crossing_predicates():
    assert is_crossing((1, 3), (2, 4))
    assert is_crossing((2, 4), (1, 3))
    assert not is_crossing((1, 4), (2, 3))
    assert not is_crossing((1, 2), (3, 4))

    nested = Pairing(((1, 6), (2, 5), (3, 4)))
    assert crossing_count(nested) == 0
    assert enclosing_pairs(nested, (3, 4)) == [(1, 6), (2, 5)]
    assert enclosing_pairs(nested, (2, 5)) == [(1, 6)]
    assert enclosing_pairs(nested, (1, 6)) == []

    twisted = Pairing(((1, 4), (2, 6), (3, 5)))
    assert crossing_count(twisted) == 2
    assert crossing_patterns(twisted) == [((1, 4), (2, 6)), ((1, 4), (3, 5))]
    # (1,4) straddles position 3 but crosses (3,5) instead of enclosing it
    assert straddle_set(twisted, (3, 5)) == [(1, 4), (2, 6)]
    assert enclosing_pairs(twisted, (3, 5)) == [(2, 6)]


# ---------------------------------------------------------------------------
# frozen four-point terms

def test_nested_four_point_term():
    w = word_from_pattern("aa++")
    term = pairing_term(w, Pairing(((1, 4), (2, 3))))
    expected = ScalarTerm(
        C_ONE, 0, -4,
        (
            weighted_phase("t1", "t4", {Energy("k1"): 1, PDot("k1"): 1}),
            weighted_phase("t2", "t3", {Energy("k2"): 1, PDot("k2"): 1,
                                        Dot("k1", "k2"): 1}),
        ),
        (MomentumDelta("k1", "k4"), MomentumDelta("k2", "k3")),
    )
    assert term == expected


def test_crossing_four_point_term():
    w = word_from_pattern("aa++")
    term = pairing_term(w, Pairing(((1, 3), (2, 4))))
    expected = ScalarTerm(
        C_ONE, 0, -4,
        (
            weighted_phase("t1", "t3", {Energy("k1"): 1, PDot("k1"): 1}),
            weighted_phase("t2", "t4", {Energy("k2"): 1, PDot("k2"): 1}),
            ContractionPhase(TimeComb.difference("t2", "t3"),
                             PhaseArg.of({Dot("k1", "k2"): 1})),
        ),
        (MomentumDelta("k1", "k3"), MomentumDelta("k2", "k4")),
    )
    assert term == expected


def test_pairing_term_polarization():
    w = word_from_pattern("aa++", pols=[1, 2, 2, 1])
    nested = pairing_term(w, Pairing(((1, 4), (2, 3))))
    assert not nested.coeff.is_zero()
    crossing = pairing_term(w, Pairing(((1, 3), (2, 4))))
    assert crossing.coeff.is_zero()


def test_pairing_term_validation():
    w = word_from_pattern("aa++")
    with pytest.raises(WordError):
        pairing_term(w, Pairing(((1, 4),)))
    with pytest.raises(WordError):
        pairing_term(w, Pairing(((3, 1), (2, 4))))


# ---------------------------------------------------------------------------
# against the recursion

def test_closed_form_matches_recursion_spot():
    for pattern in ("a+", "aa++", "a+a+", "aaa+++", "aa+a++", "a+aa++"):
        w = word_from_pattern(pattern)
        assert canonically_equal(correlator_pairing_sum(w),
                                 correlator_recursive(w)), pattern


def test_crossing_term_same_signature_different_factoring():
    """Both routes produce the crossing content, factored differently.

    The recursion carries swap phases and a shifted weighted argument;
    the closed form keeps the bare weighted phases plus one crossing
    factor.  Their merged exponents coincide, which is exactly what the
    term signature is built to detect.
    """
    w = word_from_pattern("aa++")
    delta = MomentumDelta("k1", "k3")
    rec = [t for t in canonicalize(correlator_recursive(w)).terms
           if delta in t.deltas]
    closed = [t for t in canonicalize(correlator_pairing_sum(w)).terms
              if delta in t.deltas]
    assert len(rec) == len(closed) == 1
    assert term_signature(rec[0]) == term_signature(closed[0])
    assert rec[0].phases != closed[0].phases


def test_annotated_terms_tags():
    anns = annotated_pairing_terms(word_from_pattern("aa++"))
    assert [(a.pairing.pairs, a.crossings) for a in anns] == [
        (((1, 3), (2, 4)), 1), (((1, 4), (2, 3)), 0)]

    # polarization mismatch drops a pairing from the annotated list
    polarized = annotated_pairing_terms(
        word_from_pattern("aa++", pols=[1, 2, 2, 1]))
    assert [a.pairing.pairs for a in polarized] == [((1, 4), (2, 3))]


def test_unbalanced_word_is_zero():
    assert correlator_pairing_sum(word_from_pattern("aaa+")).is_zero()
    assert correlator_pairing_sum(word_from_pattern("+a")).is_zero()
