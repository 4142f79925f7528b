"""Exact scalar arithmetic for oscillation phases and delta factors.

Scalars produced by normal ordering are finite products of a rational
complex coefficient, integer powers of 2*pi and of the coupling constant
lambda, oscillating exponential factors, and distributional delta factors.
A phase factor

    q(t - t', x) = exp(-i ((t - t') / lambda^2) x)

is stored structurally as a :class:`ContractionPhase`: an integer
combination of time labels paired with an integer combination of momentum
atoms, plus a flag marking the 1/lambda^2 weight that accompanies a
contraction.  Equality of terms is decided through the merged exponent, a
sparse bilinear form over (time label, atom) pairs, so that two phase
lists multiplying to the same exponential compare equal even when they
factor differently.

Momentum atoms never evaluate here; they stay symbolic until the numeric
layer assigns concrete vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


# ---------------------------------------------------------------------------
# coefficients

@dataclass(frozen=True)
class RationalComplex:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(re, im=0) -> "RationalComplex":
        return RationalComplex(Fraction(re), Fraction(im))

    def __add__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(self.re + other.re, self.im + other.im)

    def __mul__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "RationalComplex":
        return RationalComplex(-self.re, -self.im)

    def conjugate(self) -> "RationalComplex":
        return RationalComplex(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0


C_ZERO = RationalComplex.of(0)
C_ONE = RationalComplex.of(1)


# ---------------------------------------------------------------------------
# phase atoms

@dataclass(frozen=True)
class Energy:
    """Shifted dispersion of a field mode: dispersion(k) + |k|^2 / 2."""

    k: str


@dataclass(frozen=True)
class Dot:
    """Dot product of two field momenta, stored with a <= b."""

    a: str
    b: str

    def __post_init__(self):
        if self.b < self.a:
            a, b = self.a, self.b
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)


@dataclass(frozen=True)
class PDot:
    """Dot product of a field momentum with the particle momentum p."""

    k: str


Atom = Energy | Dot | PDot


def atom_str(atom: Atom) -> str:
    """Canonical string form, used for sorting and as a stable key."""
    if isinstance(atom, Energy):
        return f"E({atom.k})"
    if isinstance(atom, Dot):
        return f"D({atom.a},{atom.b})"
    if isinstance(atom, PDot):
        return f"P({atom.k})"
    raise TypeError(f"not a phase atom: {atom!r}")


def _atom_rank(atom: Atom) -> tuple:
    if isinstance(atom, Energy):
        return (0, atom.k, "")
    if isinstance(atom, Dot):
        return (1, atom.a, atom.b)
    return (2, atom.k, "")


def _substitute_atom(atom: Atom, mapping: dict) -> Atom:
    if isinstance(atom, Energy):
        return Energy(mapping.get(atom.k, atom.k))
    if isinstance(atom, Dot):
        return Dot(mapping.get(atom.a, atom.a), mapping.get(atom.b, atom.b))
    return PDot(mapping.get(atom.k, atom.k))


# ---------------------------------------------------------------------------
# integer combinations

def _norm_time_items(acc: dict) -> tuple:
    return tuple(sorted((k, v) for k, v in acc.items() if v != 0))


def _norm_arg_items(acc: dict) -> tuple:
    items = [(a, c) for a, c in acc.items() if c != 0]
    items.sort(key=lambda it: _atom_rank(it[0]))
    return tuple(items)


@dataclass(frozen=True)
class TimeComb:
    """Integer combination of time labels, e.g. t1 - t2."""

    items: tuple = ()

    @staticmethod
    def of(mapping: dict) -> "TimeComb":
        return TimeComb(_norm_time_items(dict(mapping)))

    @staticmethod
    def difference(t_plus: str, t_minus: str) -> "TimeComb":
        # not a dict literal: equal labels must cancel, not overwrite
        acc = {t_plus: 1}
        acc[t_minus] = acc.get(t_minus, 0) - 1
        return TimeComb.of(acc)

    def as_dict(self) -> dict:
        return dict(self.items)

    def negated(self) -> "TimeComb":
        return TimeComb(tuple((t, -c) for t, c in self.items))

    def is_zero(self) -> bool:
        return not self.items

    def labels(self) -> set:
        return {t for t, _ in self.items}

    def substituted(self, mapping: dict) -> "TimeComb":
        acc: dict = {}
        for t, c in self.items:
            key = mapping.get(t, t)
            acc[key] = acc.get(key, 0) + c
        return TimeComb.of(acc)

    def key(self) -> tuple:
        return self.items


@dataclass(frozen=True)
class PhaseArg:
    """Integer combination of momentum atoms, e.g. E(k1) + P(k1) + D(k1,k2)."""

    items: tuple = ()

    @staticmethod
    def of(mapping: dict) -> "PhaseArg":
        acc: dict = {}
        for a, c in dict(mapping).items():
            acc[a] = acc.get(a, 0) + c
        return PhaseArg(_norm_arg_items(acc))

    def as_dict(self) -> dict:
        return dict(self.items)

    def plus(self, other: "PhaseArg") -> "PhaseArg":
        acc = dict(self.items)
        for a, c in other.items:
            acc[a] = acc.get(a, 0) + c
        return PhaseArg(_norm_arg_items(acc))

    def negated(self) -> "PhaseArg":
        return PhaseArg(tuple((a, -c) for a, c in self.items))

    def is_zero(self) -> bool:
        return not self.items

    def momentum_labels(self) -> set:
        out = set()
        for a, _ in self.items:
            if isinstance(a, Energy):
                out.add(a.k)
            elif isinstance(a, Dot):
                out.update((a.a, a.b))
            else:
                out.add(a.k)
        return out

    def substituted(self, mapping: dict) -> "PhaseArg":
        acc: dict = {}
        for a, c in self.items:
            sub = _substitute_atom(a, mapping)
            acc[sub] = acc.get(sub, 0) + c
        return PhaseArg(_norm_arg_items(acc))

    def shifted(self, momentum: str, sign: int) -> "PhaseArg":
        """Shift every particle-momentum atom k.p by sign * k.momentum."""
        acc: dict = dict(self.items)
        for a, c in self.items:
            if isinstance(a, PDot):
                d = Dot(a.k, momentum)
                acc[d] = acc.get(d, 0) + sign * c
        return PhaseArg(_norm_arg_items(acc))

    def key(self) -> tuple:
        return tuple((atom_str(a), c) for a, c in self.items)


# ---------------------------------------------------------------------------
# phases

@dataclass(frozen=True)
class ContractionPhase:
    """One oscillating factor q(time, arg), weighted when it carries 1/lambda^2."""

    time: TimeComb
    arg: PhaseArg
    weighted: bool = False

    def key(self) -> tuple:
        return (0 if self.weighted else 1, self.time.key(), self.arg.key())


def oscillation(t_from: str, t_to: str, arg: PhaseArg, power: int = 1,
                weighted: bool = False) -> ContractionPhase:
    """Build q(t_from - t_to, arg)^power; power -1 negates the argument."""
    if power not in (1, -1):
        raise ValueError("oscillation power must be +1 or -1")
    a = arg if power == 1 else arg.negated()
    return ContractionPhase(TimeComb.difference(t_from, t_to), a, weighted)


# ---------------------------------------------------------------------------
# delta factors

@dataclass(frozen=True)
class MomentumDelta:
    """delta(a - b) identifying two momentum labels, stored with a <= b."""

    a: str
    b: str

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"degenerate momentum delta on {self.a!r}")
        if self.b < self.a:
            a, b = self.a, self.b
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)


@dataclass(frozen=True)
class TimeDelta:
    """delta(time combination), sign-fixed so its first coefficient is positive."""

    comb: TimeComb

    def __post_init__(self):
        if self.comb.is_zero():
            raise ValueError("degenerate time delta")
        if self.comb.items[0][1] < 0:
            object.__setattr__(self, "comb", self.comb.negated())


@dataclass(frozen=True)
class PhaseDelta:
    """delta(phase argument), sign-fixed so its first coefficient is positive."""

    arg: PhaseArg

    def __post_init__(self):
        if self.arg.is_zero():
            raise ValueError("degenerate phase delta")
        if self.arg.items[0][1] < 0:
            object.__setattr__(self, "arg", self.arg.negated())


@dataclass(frozen=True)
class PolDelta:
    """Kronecker delta on two concrete polarization indices."""

    i: int
    j: int

    def __post_init__(self):
        if self.j < self.i:
            i, j = self.i, self.j
            object.__setattr__(self, "i", j)
            object.__setattr__(self, "j", i)


Delta = MomentumDelta | TimeDelta | PhaseDelta | PolDelta


def delta_key(d: Delta) -> tuple:
    if isinstance(d, MomentumDelta):
        return (0, d.a, d.b)
    if isinstance(d, TimeDelta):
        return (1, ";".join(f"{t}:{c}" for t, c in d.comb.items), "")
    if isinstance(d, PhaseDelta):
        return (2, ";".join(f"{atom_str(a)}:{c}" for a, c in d.arg.items), "")
    return (3, str(d.i), str(d.j))


# ---------------------------------------------------------------------------
# terms and expressions

@dataclass(frozen=True)
class ScalarTerm:
    coeff: RationalComplex = C_ONE
    two_pi_power: int = 0
    lambda_power: int = 0
    phases: tuple = ()
    deltas: tuple = ()

    def times(self, other: "ScalarTerm") -> "ScalarTerm":
        return ScalarTerm(
            self.coeff * other.coeff,
            self.two_pi_power + other.two_pi_power,
            self.lambda_power + other.lambda_power,
            self.phases + other.phases,
            self.deltas + other.deltas,
        )

    def scaled(self, coeff: RationalComplex) -> "ScalarTerm":
        return ScalarTerm(self.coeff * coeff, self.two_pi_power,
                          self.lambda_power, self.phases, self.deltas)

    def conjugated(self) -> "ScalarTerm":
        phases = tuple(
            ContractionPhase(ph.time, ph.arg.negated(), ph.weighted)
            for ph in self.phases
        )
        return ScalarTerm(self.coeff.conjugate(), self.two_pi_power,
                          self.lambda_power, phases, self.deltas)

    def weighted_phases(self) -> tuple:
        return tuple(ph for ph in self.phases if ph.weighted)

    def unweighted_phases(self) -> tuple:
        return tuple(ph for ph in self.phases if not ph.weighted)


TERM_ONE = ScalarTerm()


def merged_exponent(term: ScalarTerm) -> dict:
    """Sparse bilinear exponent over (time label, atom), summed over phases.

    q(t1 - t2, x) contributes +1 at (t1, x) and -1 at (t2, x); products of
    phases accumulate entrywise, so the merged exponent is the complete
    oscillation content of the term regardless of how it factors.
    """
    acc: dict = {}
    for ph in term.phases:
        for t, ct in ph.time.items:
            for a, ca in ph.arg.items:
                key = (t, a)
                acc[key] = acc.get(key, 0) + ct * ca
    return {k: v for k, v in acc.items() if v != 0}


def _merged_key(term: ScalarTerm) -> tuple:
    items = [((t, atom_str(a)), c) for (t, a), c in merged_exponent(term).items()]
    items.sort()
    return tuple(items)


def term_signature(term: ScalarTerm) -> tuple:
    """Canonical identity of a term up to its coefficient.

    Structural phase lists that multiply to the same exponential share a
    signature, which is what lets independently derived normal forms
    compare equal term by term.
    """
    dkeys = tuple(sorted(delta_key(d) for d in term.deltas))
    return (term.lambda_power, term.two_pi_power, dkeys, _merged_key(term))


def _term_sort_key(term: ScalarTerm) -> tuple:
    return (
        term_signature(term),
        tuple(ph.key() for ph in term.phases),
        (str(term.coeff.re), str(term.coeff.im)),
    )


@dataclass(frozen=True)
class ScalarExpr:
    terms: tuple = ()

    def is_zero(self) -> bool:
        return not self.terms


EXPR_ZERO = ScalarExpr(())
EXPR_ONE = ScalarExpr((TERM_ONE,))


# ---------------------------------------------------------------------------
# canonicalization

def _momentum_union(deltas) -> dict:
    """Union-find over momentum labels joined by deltas; rep = smallest label."""
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return
        lo, hi = (rx, ry) if rx < ry else (ry, rx)
        parent[hi] = lo

    for d in deltas:
        if isinstance(d, MomentumDelta):
            union(d.a, d.b)
    return {x: find(x) for x in parent}


def _canonical_deltas_and_subst(deltas):
    """Star-normalize momentum deltas and build the label substitution map."""
    reps = _momentum_union(deltas)
    classes: dict = {}
    counts: dict = {}
    for label, rep in reps.items():
        classes.setdefault(rep, set()).add(label)
    for d in deltas:
        if isinstance(d, MomentumDelta):
            rep = reps[d.a]
            counts[rep] = counts.get(rep, 0) + 1

    new_momentum = []
    for rep in sorted(classes):
        members = sorted(classes[rep])
        edges = [MomentumDelta(rep, m) for m in members[1:]]
        new_momentum.extend(edges)
        for _ in range(counts.get(rep, 0) - len(edges)):
            new_momentum.append(edges[0])

    subst = {label: rep for label, rep in reps.items() if label != rep}
    others = [d for d in deltas if not isinstance(d, MomentumDelta)]
    return new_momentum, others, subst


def _clean_phases(phases, subst) -> tuple:
    """Apply momentum substitutions, drop trivial factors, merge oscillations.

    Unweighted phases over the same (sign-fixed) time combination multiply
    into a single factor; weighted phases keep their produced shape since
    the limit map reads them structurally.
    """
    weighted = []
    merged: dict = {}
    for ph in phases:
        arg = ph.arg.substituted(subst) if subst else ph.arg
        if ph.time.is_zero() or arg.is_zero():
            continue
        if ph.weighted:
            weighted.append(ContractionPhase(ph.time, arg, True))
            continue
        time = ph.time
        if time.items[0][1] < 0:
            time = time.negated()
            arg = arg.negated()
        merged[time] = merged.get(time, PhaseArg()).plus(arg)

    unweighted = [
        ContractionPhase(time, arg, False)
        for time, arg in merged.items()
        if not arg.is_zero()
    ]
    out = weighted + unweighted
    out.sort(key=lambda ph: ph.key())
    return tuple(out)


def _canonical_term(term: ScalarTerm):
    """Return the canonical form of one term, or None if the term is zero."""
    if term.coeff.is_zero():
        return None

    deltas = []
    for d in term.deltas:
        if isinstance(d, PolDelta):
            if d.i != d.j:
                return None
            continue  # equal concrete indices multiply by one
        deltas.append(d)

    momentum, others, subst = _canonical_deltas_and_subst(deltas)
    if subst:
        others = [
            PhaseDelta(d.arg.substituted(subst)) if isinstance(d, PhaseDelta) else d
            for d in others
        ]
    all_deltas = tuple(sorted(momentum + others, key=delta_key))
    phases = _clean_phases(term.phases, subst)
    return ScalarTerm(term.coeff, term.two_pi_power, term.lambda_power,
                      phases, all_deltas)


def canonicalize(expr: ScalarExpr) -> ScalarExpr:
    """Canonical form: substitutions applied, like terms combined, sorted.

    Idempotent, and insensitive to the order in which momentum deltas were
    recorded since label identification runs through a union-find with the
    smallest label as representative.
    """
    cleaned = []
    for term in expr.terms:
        ct = _canonical_term(term)
        if ct is not None:
            cleaned.append(ct)
    cleaned.sort(key=_term_sort_key)

    combined: list = []
    for term in cleaned:
        if combined and term_signature(combined[-1]) == term_signature(term):
            prev = combined[-1]
            combined[-1] = ScalarTerm(prev.coeff + term.coeff, prev.two_pi_power,
                                      prev.lambda_power, prev.phases, prev.deltas)
        else:
            combined.append(term)

    final = tuple(t for t in combined if not t.coeff.is_zero())
    return ScalarExpr(final)


def add(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr:
    return canonicalize(ScalarExpr(a.terms + b.terms))


def multiply(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr:
    terms = tuple(ta.times(tb) for ta in a.terms for tb in b.terms)
    return canonicalize(ScalarExpr(terms))


def negate(e: ScalarExpr) -> ScalarExpr:
    return ScalarExpr(tuple(t.scaled(RationalComplex.of(-1)) for t in e.terms))


def conjugate(e: ScalarExpr) -> ScalarExpr:
    return canonicalize(ScalarExpr(tuple(t.conjugated() for t in e.terms)))


def substitute_momentum(e: ScalarExpr, frm: str, to: str) -> ScalarExpr:
    """Rename momentum label `frm` to `to` everywhere in the expression.

    Renaming a label into its delta partner would degenerate that delta to
    delta(0); that is rejected rather than silently absorbed.
    """
    mapping = {frm: to}
    out = []
    for term in e.terms:
        deltas = []
        for d in term.deltas:
            if isinstance(d, MomentumDelta):
                deltas.append(MomentumDelta(mapping.get(d.a, d.a),
                                            mapping.get(d.b, d.b)))
            elif isinstance(d, PhaseDelta):
                deltas.append(PhaseDelta(d.arg.substituted(mapping)))
            else:
                deltas.append(d)
        phases = tuple(
            ContractionPhase(ph.time, ph.arg.substituted(mapping), ph.weighted)
            for ph in term.phases
        )
        out.append(ScalarTerm(term.coeff, term.two_pi_power, term.lambda_power,
                              phases, tuple(deltas)))
    return canonicalize(ScalarExpr(tuple(out)))


def canonically_equal(a: ScalarExpr, b: ScalarExpr) -> bool:
    """Semantic equality: same canonical terms with the same coefficients."""
    ca, cb = canonicalize(a), canonicalize(b)
    sig_a = sorted((term_signature(t), str(t.coeff.re), str(t.coeff.im))
                   for t in ca.terms)
    sig_b = sorted((term_signature(t), str(t.coeff.re), str(t.coeff.im))
                   for t in cb.terms)
    return sig_a == sig_b
