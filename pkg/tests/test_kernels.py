"""Numeric layer: Gaussian closed forms, kernel ladders, smeared terms.

Every closed form is checked against an independent quadrature route,
and the headline ladder values are frozen as literals so a regression
in any layer shows up as a number, not just a relative drift.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate

from modwick.kernels import (
    Assignment, GaussianTest, STANDARD_GAUSSIAN, UnassignedLabelError,
    arg_value, assignment_from_json_dict, delta_kernel, delta_kernel_quadrature,
    delta_kernel_target, fit_loglog_slope, gauss_fourier, overlap, phase_value,
    strip_momentum_deltas, term_convergence, term_convergence_quadrature,
    term_value, term_value_quadrature, vanishing_kernel,
)
from modwick.pairings import annotated_pairing_terms
from modwick.scalars import (
    ContractionPhase, Dot, Energy, MomentumDelta, PDot, PhaseArg, ScalarTerm,
    TimeComb, TimeDelta,
)
from modwick.words import word_from_pattern

STD = STANDARD_GAUSSIAN
TWO_PI = 2.0 * math.pi


def rel_err(a, b):
    return abs(a - b) / max(abs(a), abs(b))


# ---------------------------------------------------------------------------
# assignments

def test_assignment_basics():
    a = Assignment({"k1": (1.0, 0.0, 0.0), "k2": (1.0, 1.0, 0.0)},
                   (0.0, 0.5, 0.0))
    assert np.allclose(a.vector("k1"), [1.0, 0.0, 0.0])
    with pytest.raises(UnassignedLabelError):
        a.vector("k9")
    with pytest.raises(ValueError):
        Assignment({"k1": (1.0, 0.0)}, (0.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        assignment_from_json_dict({"momenta": {}})
    with pytest.raises(ValueError):
        assignment_from_json_dict({"momenta": [], "p": [0, 0, 0]})


def test_phase_values():
    a = Assignment({"k1": (1.0, 1.0, 0.0), "k2": (0.0, 2.0, 0.0)},
                   (0.0, 1.0, 0.0))
    # default dispersion |k|, shifted by |k|^2 / 2
    assert phase_value(Energy("k1"), a) == pytest.approx(math.sqrt(2.0) + 1.0)
    assert phase_value(Dot("k1", "k2"), a) == pytest.approx(2.0)
    assert phase_value(PDot("k2"), a) == pytest.approx(2.0)
    arg = PhaseArg.of({Energy("k1"): 1, PDot("k2"): -2})
    assert arg_value(arg, a) == pytest.approx(math.sqrt(2.0) + 1.0 - 4.0)


def test_custom_dispersion():
    a = Assignment({"k1": (2.0, 0.0, 0.0)}, (0.0, 0.0, 0.0),
                   dispersion=lambda k: float(k @ k))
    assert phase_value(Energy("k1"), a) == pytest.approx(4.0 + 2.0)


# ---------------------------------------------------------------------------
# Gaussian closed forms against adaptive quadrature

def test_gaussian_test_shape():
    f = GaussianTest(0.3, 0.8)
    assert f(0.3) == pytest.approx(1.0)
    lo, hi = f.support()
    assert lo < 0.3 < hi
    with pytest.raises(ValueError):
        GaussianTest(0.0, 0.0)


@pytest.mark.parametrize("xi", [0.0, 1.7, -2.4])
def test_gauss_fourier_against_quadrature(xi):
    f = GaussianTest(0.3, 0.8)
    re, _ = integrate.quad(lambda t: f(t) * math.cos(xi * t), *f.support())
    im, _ = integrate.quad(lambda t: -f(t) * math.sin(xi * t), *f.support())
    assert abs(gauss_fourier(f, xi) - complex(re, im)) < 1e-10


def test_overlap_against_quadrature():
    f, g = GaussianTest(0.4, 1.0), GaussianTest(-0.2, 0.7)
    for s in (0.0, 0.9):
        direct, _ = integrate.quad(lambda t: f(t) * g(t - s), -12.0, 12.0)
        assert abs(overlap(f, g, s) - direct) < 1e-10


def test_vanishing_kernel_decays():
    f = GaussianTest(0.0, 1.0)
    lams = [1.0, 0.5, 0.25]
    vals = [abs(vanishing_kernel(2.0, f, lam)) for lam in lams]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-100  # super-polynomial decay
    with pytest.raises(ValueError):
        vanishing_kernel(0.0, f, 1.0)
    with pytest.raises(ValueError):
        vanishing_kernel(1.0, f, -1.0)


# ---------------------------------------------------------------------------
# the triply smeared kernel

def test_delta_kernel_frozen_values():
    assert delta_kernel(STD, STD, STD, 1.0).real \
        == pytest.approx(9.093041541794445, rel=1e-12)
    assert delta_kernel(STD, STD, STD, 0.5).real \
        == pytest.approx(10.966620726271618, rel=1e-12)
    assert delta_kernel_target(STD, STD, STD).real \
        == pytest.approx(2.0 * math.pi ** 1.5, rel=1e-12)


@pytest.mark.parametrize("lam", [1.0, 0.5])
def test_delta_kernel_against_quadrature(lam):
    configs = [
        (STD, STD, STD),
        (GaussianTest(0.4, 1.0), GaussianTest(0.0, 0.8), GaussianTest(0.7, 1.2)),
    ]
    for f, g, h in configs:
        closed = delta_kernel(f, g, h, lam)
        quad = delta_kernel_quadrature(f, g, h, lam)
        assert abs(closed - quad) <= 1e-8 * max(1.0, abs(closed))


def test_delta_kernel_error_ladder():
    target = delta_kernel_target(STD, STD, STD)
    lams = [0.4, 0.2, 0.1, 0.05]
    errs = [abs(delta_kernel(STD, STD, STD, lam) - target) for lam in lams]
    assert errs[0] > errs[1] > errs[2] > errs[3]
    rel = errs[2] / abs(target)
    assert rel == pytest.approx(2.4999062538947195e-05, rel=1e-9)
    assert rel <= 0.05


def test_symmetric_configuration_error_is_quartic():
    """With coinciding centers the quadratic error term cancels.

    The exact closed form is J(lam) = 2 pi^{3/2} / sqrt(1 + lam^4 / 2),
    so the error is Theta(lam^4); the fitted slope sits at 4, not 2.
    The quadratic term carries a factor h_center * (f_center - g_center)
    and needs an asymmetric configuration to show up.
    """
    lams = [0.4, 0.2, 0.1, 0.05]
    target = delta_kernel_target(STD, STD, STD)
    for lam in lams:
        exact = 2.0 * math.pi ** 1.5 / math.sqrt(1.0 + lam ** 4 / 2.0)
        assert delta_kernel(STD, STD, STD, lam).real \
            == pytest.approx(exact, rel=1e-12)
    errs = [abs(delta_kernel(STD, STD, STD, lam) - target) for lam in lams]
    assert fit_loglog_slope(lams, errs) \
        == pytest.approx(3.9957891117590023, rel=1e-9)


def test_off_center_configuration_error_is_quadratic():
    f, g, h = GaussianTest(0.4, 1.0), GaussianTest(0.0, 1.0), GaussianTest(0.7, 1.0)
    target = delta_kernel_target(f, g, h)
    lams = [0.4, 0.2, 0.1, 0.05]
    errs = [abs(delta_kernel(f, g, h, lam) - target) for lam in lams]
    slope = fit_loglog_slope(lams, errs)
    assert slope == pytest.approx(1.997172456403579, rel=1e-9)
    assert 1.7 <= slope <= 2.3


def test_fit_loglog_slope_on_synthetic_data():
    lams = [0.8, 0.4, 0.2, 0.1]
    errs = [2.5 * lam ** 3 for lam in lams]
    assert fit_loglog_slope(lams, errs) == pytest.approx(3.0, abs=1e-12)


# ---------------------------------------------------------------------------
# smeared correlator terms

def two_point_term_and_assignment():
    (ann,) = annotated_pairing_terms(word_from_pattern("a+"))
    term = strip_momentum_deltas(ann.term)
    a = Assignment({"k1": (1.0, 0.0, 0.0)}, (0.0, 0.0, 0.0))
    return term, a


def test_strip_momentum_deltas_only_touches_momenta():
    term = ScalarTerm(deltas=(
        MomentumDelta("k1", "k2"),
        TimeDelta(TimeComb.difference("t1", "t2"))))
    assert strip_momentum_deltas(term).deltas \
        == (TimeDelta(TimeComb.difference("t1", "t2")),)


def test_term_value_two_point_closed_form():
    # omega_tilde = |k| + |k|^2/2 = 3/2 at k = (1,0,0), p = 0; the two
    # transforms give 2 pi exp(-(3/2)^2) = 2 pi exp(-9/4) at lam = 1
    term, a = two_point_term_and_assignment()
    tests = {"t1": STD, "t2": STD}
    v = term_value(term, tests, a, 1.0)
    assert v == pytest.approx(TWO_PI * math.exp(-2.25), rel=1e-12)
    assert v.imag == pytest.approx(0.0, abs=1e-15)


def test_term_value_validation():
    term, a = two_point_term_and_assignment()
    with pytest.raises(UnassignedLabelError):
        term_value(term, {"t1": STD}, a, 1.0)
    with pytest.raises(UnassignedLabelError):
        term_value(term, {"t1": STD, "t2": STD},
                   Assignment({}, (0.0, 0.0, 0.0)), 1.0)
    with pytest.raises(ValueError):
        term_value(term, {"t1": STD, "t2": STD}, a, 0.0)
    (ann,) = annotated_pairing_terms(word_from_pattern("a+"))
    with pytest.raises(ValueError):
        term_value(ann.term, {"t1": STD, "t2": STD}, a, 1.0)  # deltas left


@pytest.mark.parametrize("lam", [1.0, 0.7])
def test_term_value_two_point_against_grid(lam):
    term, a = two_point_term_and_assignment()
    tests = {"t1": STD, "t2": STD}
    closed = term_value(term, tests, a, lam)
    grid = term_value_quadrature(term, tests, a, lam)
    assert rel_err(closed, grid) < 1e-10


def test_term_value_four_point_against_grid(study_setup):
    terms, tests, a = study_setup
    for tag in ("crossing", "noncrossing"):
        closed = term_value(terms[tag], tests, a, 1.0)
        grid = term_value_quadrature(terms[tag], tests, a, 1.0)
        assert rel_err(closed, grid) < 1e-9, tag
        # at smaller lam both routes agree the value is numerically gone
        assert abs(term_value(terms[tag], tests, a, 0.7)) < 1e-20


def test_term_convergence_noncrossing_is_constant(study_setup):
    terms, tests, a = study_setup
    rows = term_convergence(terms["noncrossing"], tests, a, [1.0, 0.5, 0.1])
    assert rows[0].target.real == pytest.approx(4.0 * math.pi ** 3, rel=1e-12)
    for row in rows:
        assert row.value == rows[0].target
        assert row.abs_err == 0.0


def test_term_convergence_crossing_decays(study_setup):
    """The crossing factor survives as exp(-c^2 / (2 lam^4)) with c = k1.k2."""
    terms, tests, a = study_setup
    rows = term_convergence(terms["crossing"], tests, a, [1.0, 0.5, 0.1])
    assert rows[0].target == 0.0
    assert rows[0].value.real \
        == pytest.approx(4.0 * math.pi ** 3 * math.exp(-0.5), rel=1e-12)
    assert rows[1].value.real \
        == pytest.approx(4.0 * math.pi ** 3 * math.exp(-8.0), rel=1e-12)
    assert abs(rows[2].value) < 1e-300


def test_term_convergence_against_grid(study_setup):
    terms, tests, a = study_setup
    for tag in ("crossing", "noncrossing"):
        for lam in (1.0, 0.5):
            rows = term_convergence(terms[tag], tests, a, [lam])
            grid = term_convergence_quadrature(terms[tag], tests, a, lam)
            err = abs(rows[0].value - grid)
            assert err <= 1e-10 * max(1.0, abs(rows[0].value)), (tag, lam)


def test_term_convergence_validation(study_setup):
    terms, tests, a = study_setup
    term = terms["noncrossing"]
    with pytest.raises(ValueError):
        term_convergence(term, tests, a, [1.0, -0.5])
    short = {k: v for k, v in tests.items() if k != "t4"}
    with pytest.raises(UnassignedLabelError):
        term_convergence(term, short, a, [1.0])
    with pytest.raises(UnassignedLabelError):
        term_convergence(term, tests, Assignment({}, (0.0, 0.0, 0.0)), [1.0])
    bad_weight = ScalarTerm(
        phases=(ContractionPhase(TimeComb.difference("t1", "t2"),
                                 PhaseArg.of({Energy("k1"): 1}),
                                 weighted=True),))
    with pytest.raises(ValueError):
        term_convergence(bad_weight, {"t1": STD, "t2": STD}, a, [1.0])


def test_orthogonal_momenta_turn_off_the_crossing_suppression():
    # k1.k2 = 0 makes the crossing oscillation exponent vanish, so the
    # crossing term converges to the same nonzero backbone instead
    terms = {}
    for ann in annotated_pairing_terms(word_from_pattern("aa++")):
        tag = "crossing" if ann.crossings else "noncrossing"
        terms[tag] = strip_momentum_deltas(ann.term)
    a = Assignment({"k1": (1.0, 0.0, 0.0), "k2": (0.0, 1.0, 0.0)},
                   (0.0, 0.0, 0.0))
    tests = {f"t{i}": STD for i in range(1, 5)}
    rows = term_convergence(terms["crossing"], tests, a, [1.0, 0.1])
    assert rows[0].target.real == pytest.approx(4.0 * math.pi ** 3, rel=1e-12)
    assert rows[0].abs_err == 0.0 and rows[1].abs_err == 0.0
