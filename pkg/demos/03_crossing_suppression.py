"""Why only non-crossing pairings survive: a numeric look.

Smear the two four-point terms with unit Gaussians at concrete momenta
k1 = (1,0,0), k2 = (1,1,0), p = 0.  The non-crossing term's oscillation
exponents vanish on the momentum-delta support, so its smeared value is
exactly constant in lambda.  The crossing term keeps a residual factor
exp(-(k1.k2)^2 / (2 lambda^4)) and collapses super-polynomially.
"""

from modwick import (
    Assignment, GaussianTest, annotated_pairing_terms, strip_momentum_deltas,
    term_convergence, word_from_pattern,
)

terms = {}
for at in annotated_pairing_terms(word_from_pattern("aa++")):
    tag = "crossing" if at.crossings else "noncrossing"
    terms[tag] = strip_momentum_deltas(at.term)

assignment = Assignment({"k1": (1.0, 0.0, 0.0), "k2": (1.0, 1.0, 0.0)},
                        (0.0, 0.0, 0.0))
tests = {f"t{i}": GaussianTest(0.0, 1.0) for i in range(1, 5)}
lams = [1.0, 0.7, 0.5, 0.4, 0.3]

print("smeared four-point terms, |value| per lambda  (k1.k2 = 1)\n")
print("lambda     noncrossing        crossing")
for lam in lams:
    row = {}
    for tag in ("noncrossing", "crossing"):
        rows = term_convergence(terms[tag], tests, assignment, [lam])
        row[tag] = abs(rows[0].value)
    print("%6.2f   %14.9f   %14.3e" % (lam, row["noncrossing"], row["crossing"]))

target = term_convergence(terms["noncrossing"], tests, assignment, [1.0])[0].target
print("\nnoncrossing limit value: %.9f  (= 4 pi^3)" % target.real)
print("crossing limit value:    0")

# orthogonal momenta switch the suppression off: k1.k2 = 0 removes the
# crossing term's residual oscillation entirely
orth = Assignment({"k1": (1.0, 0.0, 0.0), "k2": (0.0, 1.0, 0.0)},
                  (0.0, 0.0, 0.0))
rows = term_convergence(terms["crossing"], tests, orth, [1.0, 0.1])
print("\nwith k1.k2 = 0 the crossing term stops decaying:")
for r in rows:
    print("  lambda=%.1f  |value|=%.9f" % (r.lam, abs(r.value)))
