"""Operator words and the normal-ordering recursion.

A word is a finite product of time- and momentum-indexed generators
a(t, k) and adag(t, k), optionally carrying polarization indices.  The
module rewrite rules are

    a(t,k) a(t',k')    = q^{-1}(t - t', k.k') adag-free swap
    a(t,k) adag(t',k') = q(t - t', k.k') adag(t',k') a(t,k)
                         + (1/lambda^2) q(t - t', E(k) + k.p) delta(k - k')
    a(t,k) f(p)        = f(p + k) a(t,k)

with E(k) the shifted dispersion.  Contraction scalars depend on the
particle momentum p, so they are moved to the far right of the remaining
word before recursing; passing a creator with momentum g adds +k.g to
every k.p atom, passing an annihilator subtracts it.  The vacuum kills
words that begin with a creator or end with an annihilator, which closes
the recursion for vacuum correlators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import (
    C_ONE, C_ZERO, ContractionPhase, Dot, Energy, EXPR_ZERO, MomentumDelta,
    PDot, PhaseArg, PhaseDelta, PolDelta, ScalarExpr, ScalarTerm, TERM_ONE,
    TimeComb, canonicalize, oscillation,
)


class WordError(ValueError):
    """Structurally invalid operator word."""


@dataclass(frozen=True)
class Generator:
    dagger: bool
    t: str
    k: str
    pol: int | None = None


def create(t: str, k: str, pol: int | None = None) -> Generator:
    return Generator(True, t, k, pol)


def annihilate(t: str, k: str, pol: int | None = None) -> Generator:
    return Generator(False, t, k, pol)


@dataclass(frozen=True)
class Word:
    gens: tuple = ()

    def __post_init__(self):
        times = [g.t for g in self.gens]
        if len(set(times)) != len(times):
            raise WordError("repeated time label in word")
        momenta = [g.k for g in self.gens]
        if len(set(momenta)) != len(momenta):
            raise WordError("repeated momentum label in word")
        pols = [g.pol for g in self.gens]
        if any(p is not None for p in pols) and any(p is None for p in pols):
            raise WordError("mixed polarized and unpolarized generators")
        for p in pols:
            if p is not None and p not in (1, 2, 3):
                raise WordError(f"polarization index out of range: {p}")

    def __len__(self) -> int:
        return len(self.gens)

    def polarized(self) -> bool:
        return bool(self.gens) and self.gens[0].pol is not None

    def annihilator_count(self) -> int:
        return sum(1 for g in self.gens if not g.dagger)

    def creator_count(self) -> int:
        return sum(1 for g in self.gens if g.dagger)


def word(*gens: Generator) -> Word:
    return Word(tuple(gens))


def adjoint(w: Word) -> Word:
    """Reverse the word and exchange creators with annihilators."""
    return Word(tuple(
        Generator(not g.dagger, g.t, g.k, g.pol) for g in reversed(w.gens)
    ))


def word_from_pattern(pattern: str, pols=None) -> Word:
    """Build a word from a pattern string, 'a' annihilator, '+' creator.

    Labels run t1.., k1.. left to right; `pols` optionally assigns
    polarization indices positionally.
    """
    gens = []
    for i, ch in enumerate(pattern):
        if ch not in "a+":
            raise WordError(f"bad pattern character {ch!r}")
        pol = None if pols is None else pols[i]
        gens.append(Generator(ch == "+", f"t{i + 1}", f"k{i + 1}", pol))
    return Word(tuple(gens))


def pattern_of(w: Word) -> str:
    return "".join("+" if g.dagger else "a" for g in w.gens)


# ---------------------------------------------------------------------------
# JSON word files

def word_to_json_dict(w: Word) -> dict:
    mode = "polarized" if w.polarized() else "scalar"
    out = []
    for g in w.gens:
        entry = {"op": "adag" if g.dagger else "a", "t": g.t, "k": g.k}
        if g.pol is not None:
            entry["pol"] = g.pol
        out.append(entry)
    return {"mode": mode, "word": out}


def word_from_json_dict(d: dict) -> Word:
    if not isinstance(d, dict) or "word" not in d:
        raise WordError("word file must be an object with a 'word' list")
    mode = d.get("mode", "scalar")
    if mode not in ("scalar", "polarized"):
        raise WordError(f"unknown mode {mode!r}")
    gens = []
    for i, entry in enumerate(d["word"]):
        if not isinstance(entry, dict):
            raise WordError(f"word entry {i} is not an object")
        op = entry.get("op")
        if op not in ("a", "adag"):
            raise WordError(f"word entry {i}: op must be 'a' or 'adag'")
        t, k = entry.get("t"), entry.get("k")
        if not isinstance(t, str) or not isinstance(k, str):
            raise WordError(f"word entry {i}: t and k must be label strings")
        pol = entry.get("pol")
        if mode == "polarized":
            if pol is None:
                raise WordError(f"word entry {i}: polarized mode needs 'pol'")
        elif pol is not None:
            raise WordError(f"word entry {i}: 'pol' given in scalar mode")
        gens.append(Generator(op == "adag", t, k, pol))
    return Word(tuple(gens))


# ---------------------------------------------------------------------------
# rewrite rules

@dataclass(frozen=True)
class WeightedWord:
    scalar: ScalarTerm
    word: Word


def _pol_factor(x: Generator, y: Generator):
    """Deltas contributed by polarization indices of a contracted pair."""
    if x.pol is None and y.pol is None:
        return ()
    return (PolDelta(x.pol, y.pol),)


def _contraction_scalar(x: Generator, y: Generator) -> ScalarTerm:
    """Scalar for contracting annihilator x against creator y, in place."""
    arg = PhaseArg.of({Energy(x.k): 1, PDot(x.k): 1})
    phase = ContractionPhase(TimeComb.difference(x.t, y.t), arg, weighted=True)
    deltas = (MomentumDelta(x.k, y.k),) + _pol_factor(x, y)
    if any(isinstance(d, PolDelta) and d.i != d.j for d in deltas):
        return ScalarTerm(C_ZERO)
    deltas = tuple(d for d in deltas if not isinstance(d, PolDelta))
    return ScalarTerm(C_ONE, 0, -2, (phase,), deltas)


def rewrite_aa(x: Generator, y: Generator) -> WeightedWord:
    """Swap two annihilators: a_x a_y = q^{-1}(t_x - t_y, k_x.k_y) a_y a_x."""
    if x.dagger or y.dagger:
        raise WordError("rewrite_aa needs two annihilators")
    phase = oscillation(x.t, y.t, PhaseArg.of({Dot(x.k, y.k): 1}), power=-1)
    return WeightedWord(ScalarTerm(C_ONE, 0, 0, (phase,), ()), word(y, x))


def rewrite_a_adag(x: Generator, y: Generator):
    """Normal-order an (annihilator, creator) pair.

    Returns the swapped weighted word and the contraction scalar; with
    unequal concrete polarizations the contraction scalar is zero.
    """
    if x.dagger or not y.dagger:
        raise WordError("rewrite_a_adag needs an annihilator then a creator")
    phase = oscillation(x.t, y.t, PhaseArg.of({Dot(x.k, y.k): 1}), power=1)
    swapped = WeightedWord(ScalarTerm(C_ONE, 0, 0, (phase,), ()), word(y, x))
    return swapped, _contraction_scalar(x, y)


def shift_p(s: ScalarTerm, g: Generator, direction: str) -> ScalarTerm:
    """Move a p-dependent scalar past one generator.

    Rightward past a creator with momentum g.k maps k.p to k.p + k.g for
    every particle-momentum atom; past an annihilator the sign flips, and
    leftward movement inverts both.
    """
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")
    sign = 1 if g.dagger else -1
    if direction == "left":
        sign = -sign
    phases = tuple(
        ContractionPhase(ph.time, ph.arg.shifted(g.k, sign), ph.weighted)
        for ph in s.phases
    )
    deltas = tuple(
        PhaseDelta(d.arg.shifted(g.k, sign)) if isinstance(d, PhaseDelta) else d
        for d in s.deltas
    )
    return ScalarTerm(s.coeff, s.two_pi_power, s.lambda_power, phases, deltas)


# ---------------------------------------------------------------------------
# expansion of a leading annihilator

def expand_leading_annihilator(w: Word) -> list:
    """Commute the leading annihilator through the tail, one term per creator.

    Term j contracts the leading annihilator with the j-th creator of the
    tail.  Its scalar collects the swap phase of every tail generator left
    of that creator, and the contraction phase itself is shifted by the
    tail generators to its right because the p-dependent scalar migrates
    to the far end of the word.  The remaining word keeps its order.
    """
    if not w.gens or w.gens[0].dagger:
        raise WordError("word must start with an annihilator")
    lead, tail = w.gens[0], w.gens[1:]
    out = []
    for j, g in enumerate(tail):
        if not g.dagger:
            continue
        scalar = _contraction_scalar(lead, g)
        if not scalar.coeff.is_zero():
            for other in tail[j + 1:]:
                scalar = shift_p(scalar, other, "right")
            for other in tail[:j]:
                power = 1 if other.dagger else -1
                swap = oscillation(lead.t, other.t,
                                   PhaseArg.of({Dot(lead.k, other.k): 1}),
                                   power=power)
                scalar = scalar.times(ScalarTerm(C_ONE, 0, 0, (swap,), ()))
        out.append(WeightedWord(scalar, Word(tail[:j] + tail[j + 1:])))
    return out


def correlator_recursive(w: Word) -> ScalarExpr:
    """Vacuum correlator by repeated expansion of the leftmost annihilator."""
    collected = []

    def descend(prefix: ScalarTerm, rest: Word):
        if not rest.gens:
            collected.append(prefix)
            return
        if rest.gens[0].dagger:
            return  # a leading creator has vanishing vacuum expectation
        for ww in expand_leading_annihilator(rest):
            if ww.scalar.coeff.is_zero():
                continue
            descend(prefix.times(ww.scalar), ww.word)

    descend(TERM_ONE, w)
    if not collected:
        return EXPR_ZERO
    return canonicalize(ScalarExpr(tuple(collected)))
