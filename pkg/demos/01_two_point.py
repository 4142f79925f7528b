"""Smallest nontrivial word: one annihilator against one creator.

Normal ordering a(t1,k1) a+(t2,k2) leaves a pure scalar: a single
1/lambda^2-weighted oscillation against the shifted dispersion
omega(k) + k^2/2 + k.p, times a momentum delta.  In the weak-coupling
limit that oscillation concentrates into a product of deltas.
"""

import math

from modwick import (
    Assignment, GaussianTest, correlator_recursive, correlator_wick_limit,
    strip_momentum_deltas, term_value, to_latex, word_from_pattern,
)

w = word_from_pattern("a+")
print("word: a(t1,k1) a+(t2,k2)\n")

finite = correlator_recursive(w)
print("finite-coupling vacuum expectation:")
print(" ", to_latex(finite), "\n")

limit = correlator_wick_limit(w)
print("weak-coupling limit:")
print(" ", to_latex(limit), "\n")

# smear both time legs with a unit Gaussian and put k1 = (1,0,0), p = 0;
# the closed form is 2 pi exp(-omega_tilde^2) with omega_tilde = 3/2
term = strip_momentum_deltas(finite.terms[0])
assignment = Assignment({"k1": (1.0, 0.0, 0.0)}, (0.0, 0.0, 0.0))
tests = {"t1": GaussianTest(0.0, 1.0), "t2": GaussianTest(0.0, 1.0)}
value = term_value(term, tests, assignment, 1.0)
print("smeared value at lambda = 1:  %.12f" % value.real)
print("closed form 2 pi e^{-9/4}:    %.12f" % (2.0 * math.pi * math.exp(-2.25)))
