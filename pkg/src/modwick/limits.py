"""Weak-coupling limit of correlators, by three independent routes.

In the limit the rescaled oscillation turns singular,

    (1/lambda^2) q(t - t', x)  ->  2 pi delta(t - t') delta(x),
    q(t - t', x)               ->  0  (unless the exponent cancels),

so only pairings without crossings survive: every crossing pattern
leaves behind an unweighted oscillation whose exponent stays nonzero
after the time deltas identify paired times.  The surviving algebra is
free: an annihilator meeting a creator on its right contracts to

    2 pi delta(t - t') delta(E(k) + k.p) delta(k - k')

with no swap term, and p-dependent scalars still move through creators
by the same momentum shift as at finite coupling.

Routes implemented here: a structural limit map applied to the finite
coupling closed form, the direct non-crossing closed form, and a
rewrite engine that contracts adjacent pairs in the limit algebra.
"""

from __future__ import annotations

from .pairings import Pairing, enclosing_pairs
from .scalars import (
    C_ONE, Dot, Energy, EXPR_ZERO, MomentumDelta, PDot, PhaseArg, PhaseDelta,
    PolDelta, ScalarExpr, ScalarTerm, TimeComb, TimeDelta, canonicalize,
)
from .words import Word, shift_p


def noncrossing_match(w: Word):
    """The unique non-crossing pairing of a word, or None.

    Scanning right to left, creators are stacked and every annihilator
    pops its nearest enclosing creator; any leftover on either side
    means no pairing exists at all.
    """
    stack = []
    pairs = []
    for pos in range(len(w.gens), 0, -1):
        g = w.gens[pos - 1]
        if g.dagger:
            stack.append(pos)
        else:
            if not stack:
                return None
            pairs.append((pos, stack.pop()))
    if stack:
        return None
    return Pairing(tuple(pairs))


def _limit_term(term: ScalarTerm):
    """Apply the singular-limit map to one canonicalized structural term."""
    weighted = term.weighted_phases()
    if term.lambda_power != -2 * len(weighted):
        raise ValueError(
            "term weight mismatch: lambda power "
            f"{term.lambda_power} with {len(weighted)} weighted phases"
        )

    time_map: dict = {}

    def root(t):
        while t in time_map:
            t = time_map[t]
        return t

    for ph in weighted:
        roots = sorted({root(t) for t in ph.time.labels()})
        for t in roots[1:]:
            time_map[t] = roots[0]
    time_map = {t: root(t) for t in time_map}

    # a residual oscillation with nonzero exponent kills the term
    residual: dict = {}
    for ph in term.unweighted_phases():
        time = ph.time.substituted(time_map)
        for t, ct in time.items:
            for a, ca in ph.arg.items:
                key = (t, a)
                residual[key] = residual.get(key, 0) + ct * ca
    if any(v != 0 for v in residual.values()):
        return None

    new_deltas = list(term.deltas)
    for ph in weighted:
        new_deltas.append(TimeDelta(ph.time))
        new_deltas.append(PhaseDelta(ph.arg))
    return ScalarTerm(term.coeff, term.two_pi_power + len(weighted), 0,
                      (), tuple(new_deltas))


def limit_of_pairing_sum(e: ScalarExpr) -> ScalarExpr:
    """Structural limit of a finite-coupling correlator expression.

    Every weighted phase becomes 2 pi, a time delta, and a phase delta;
    terms whose unweighted oscillations survive the induced time
    identifications are dropped.
    """
    e = canonicalize(e)
    out = []
    for term in e.terms:
        lt = _limit_term(term)
        if lt is not None:
            out.append(lt)
    if not out:
        return EXPR_ZERO
    return canonicalize(ScalarExpr(tuple(out)))


def correlator_wick_limit(w: Word) -> ScalarExpr:
    """Limit correlator built directly on the non-crossing pairing."""
    if w.annihilator_count() != w.creator_count():
        return EXPR_ZERO
    match = noncrossing_match(w)
    if match is None:
        return EXPR_ZERO
    if not w.gens:
        return canonicalize(ScalarExpr((ScalarTerm(),)))

    gens = w.gens
    deltas = []
    for m, m2 in match.pairs:
        x, y = gens[m - 1], gens[m2 - 1]
        if x.pol is not None and x.pol != y.pol:
            return EXPR_ZERO
        arg = {Energy(x.k): 1, PDot(x.k): 1}
        for a, _ in enclosing_pairs(match, (m, m2)):
            d = Dot(gens[a - 1].k, x.k)
            arg[d] = arg.get(d, 0) + 1
        deltas.append(MomentumDelta(x.k, y.k))
        deltas.append(TimeDelta(TimeComb.difference(x.t, y.t)))
        deltas.append(PhaseDelta(PhaseArg.of(arg)))

    term = ScalarTerm(C_ONE, len(match), 0, (), tuple(deltas))
    return canonicalize(ScalarExpr((term,)))


def correlator_limit_rewrite(w: Word) -> ScalarExpr:
    """Limit correlator by contracting adjacent pairs in the free algebra.

    Repeatedly contracts the leftmost annihilator-creator neighbors,
    migrating each produced p-dependent scalar to the far right through
    the remaining generators; whatever generators survive are killed by
    the vacuum.
    """
    if not w.gens:
        return canonicalize(ScalarExpr((ScalarTerm(),)))
    gens = list(w.gens)
    acc = ScalarTerm()
    while True:
        site = None
        for i in range(len(gens) - 1):
            if not gens[i].dagger and gens[i + 1].dagger:
                site = i
                break
        if site is None:
            break
        x, y = gens[site], gens[site + 1]
        deltas = [
            MomentumDelta(x.k, y.k),
            TimeDelta(TimeComb.difference(x.t, y.t)),
            PhaseDelta(PhaseArg.of({Energy(x.k): 1, PDot(x.k): 1})),
        ]
        if x.pol is not None:
            deltas.append(PolDelta(x.pol, y.pol))
        scalar = ScalarTerm(C_ONE, 1, 0, (), tuple(deltas))
        del gens[site:site + 2]
        for g in gens[site:]:
            scalar = shift_p(scalar, g, "right")
        acc = acc.times(scalar)
    if gens:
        return EXPR_ZERO
    return canonicalize(ScalarExpr((acc,)))
