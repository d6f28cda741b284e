"""Belief assignments, the mass matrix, and the conflict ledger.

Rule arithmetic runs on exact rationals: every float mass is converted once
through :func:`to_fraction`, which snaps to a denominator of at most 10**6
when that loses nothing, so that summation order can never perturb results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import MassOnEmptyError, NegativeMassError, NotNormalizedError
from .kernels import intersect_canon
from .lattice import CanonicalElement, OPEN

MASS_EPS = 1e-12
SUM_TOL = 1e-9

_SNAP = 10 ** 6


def to_fraction(x):
    """Exact rational for a mass value; decimal inputs stay small."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    exact = Fraction(x)
    snapped = exact.limit_denominator(_SNAP)
    return snapped if abs(snapped - exact) < Fraction(1, 10 ** 12) else exact


class Bba:
    """A (generalized) basic belief assignment over one model.

    Maps canonical elements to masses.  Keys may be given as expression
    strings or :class:`CanonicalElement` values; they are reduced under the
    model, merged when equivalent, and masses below ``1e-12`` are pruned.
    Construction rejects negative masses; :func:`validate_bba` additionally
    enforces normalization and the empty-mass discipline.
    """

    __slots__ = ("model", "masses")

    def __init__(self, model, masses):
        self.model = model
        merged = {}
        for key, value in (masses.items() if hasattr(masses, "items") else masses):
            if isinstance(key, str):
                elem = model.canonical(key)
            elif isinstance(key, CanonicalElement):
                elem = model.reduce(key)
            else:
                raise TypeError(f"bad mass key {key!r}")
            if not isinstance(value, Fraction):
                value = float(value)
            if value < 0:
                raise NegativeMassError(elem, value)
            if isinstance(value, float) and value < MASS_EPS:
                continue
            if isinstance(value, Fraction) and value == 0:
                continue
            merged[elem] = merged.get(elem, 0) + value
        self.masses = {k: merged[k] for k in sorted(merged)}

    def fractions(self):
        """Masses as exact rationals, keyed by element."""
        return {k: to_fraction(v) for k, v in self.masses.items()}

    def total(self):
        return sum(self.masses.values())

    def __getitem__(self, key):
        if isinstance(key, str):
            key = self.model.canonical(key)
        elif isinstance(key, CanonicalElement):
            key = self.model.reduce(key)
        return self.masses.get(key, 0.0)

    def __iter__(self):
        return iter(self.masses)

    def __len__(self):
        return len(self.masses)

    def items(self):
        return self.masses.items()

    def keys(self):
        return self.masses.keys()

    def values(self):
        return self.masses.values()

    def __eq__(self, other):
        return isinstance(other, Bba) and self.model == other.model and self.masses == other.masses

    def __repr__(self):
        inner = ", ".join(f"{k}: {float(v):.6f}" for k, v in self.masses.items())
        return f"Bba({{{inner}}})"


def validate_bba(b):
    """Check the defining invariants and return the assignment unchanged.

    Raises ``NotNormalizedError`` when masses do not sum to one within 1e-9,
    ``NegativeMassError`` on any negative mass, and ``MassOnEmptyError``
    when mass sits on an empty element (in an open world only the classical
    empty set may carry mass).
    """
    total = b.total()
    for elem, value in b.items():
        if value < 0:
            raise NegativeMassError(elem, value)
        if value > 0 and b.model.reduce(elem).empty:
            if not (b.model.world == OPEN and elem.is_classical_empty):
                raise MassOnEmptyError(elem)
    if abs(total - 1) > SUM_TOL:
        raise NotNormalizedError(float(total))
    return b


def vacuous_bba(model):
    """The vacuous assignment: full mass on the total ignorance."""
    return Bba(model, {model.frame.total_ignorance(): 1.0})


class MassMatrix:
    """An ordered stack of assignments sharing one frame and model."""

    __slots__ = ("sources", "model", "_columns")

    def __init__(self, sources):
        sources = tuple(sources)
        if not sources:
            raise ValueError("a mass matrix needs at least one source")
        model = sources[0].model
        for s in sources[1:]:
            if s.model != model:
                raise ValueError("all sources must share one frame and model")
        self.sources = sources
        self.model = model
        self._columns = None

    @property
    def s(self):
        return len(self.sources)

    def __len__(self):
        return len(self.sources)

    def __getitem__(self, i):
        return self.sources[i]

    def __add__(self, other):
        return MassMatrix(self.sources + other.sources)

    def fractions(self):
        return tuple(src.fractions() for src in self.sources)

    def column_sums(self, model=None):
        """Per-element sums of the source masses, keyed under ``model``.

        Keys are re-reduced when a different model is supplied (dynamic
        fusion), merging columns that the new constraints identify.
        """
        if model is None or model == self.model:
            if self._columns is None:
                self._columns = self._column_sums(self.model)
            return self._columns
        return self._column_sums(model)

    def _column_sums(self, model):
        cols = {}
        for src in self.sources:
            for elem, mass in src.fractions().items():
                key = model.reduce(elem)
                cols[key] = cols.get(key, Fraction(0)) + mass
        return {k: cols[k] for k in sorted(cols)}


def column_sum(matrix, element, model=None):
    """Sum of the masses the sources commit to one element."""
    model = model or matrix.model
    return float(matrix.column_sums(model).get(model.reduce(element), Fraction(0)))


@dataclass(frozen=True)
class ConflictTerm:
    """One product of focal elements with an empty combined intersection."""

    factors: tuple  # one (element, mass fraction) per source
    product: Fraction
    intersection: CanonicalElement  # free canonical form, empty under the model

    def sort_key(self):
        return tuple(f[0].clauses for f in self.factors)


@dataclass(frozen=True)
class ConflictLedger:
    """Total conflict broken down by product terms and partial conflicts."""

    terms: tuple
    partials: dict  # free-canonical empty intersection -> summed mass
    k: Fraction
    involved: frozenset  # elements involved in the conflict

    def partial(self, element):
        return self.partials.get(element, Fraction(0))


def conflict_ledger(matrix, model=None):
    """Enumerate every source tuple whose intersection is empty.

    An element is involved in the conflict when it occurs as a factor of
    some conflict term and does not include the intersection of the
    remaining factors of that term.
    """
    model = model or matrix.model
    if matrix.s < 2:
        raise ValueError("conflict needs at least two sources")
    frame = model.frame
    focal = [sorted(src.fractions().items()) for src in matrix.sources]
    terms = []
    involved = set()
    for combo in itertools.product(*focal):
        clauses = combo[0][0].clauses
        product = combo[0][1]
        for elem, mass in combo[1:]:
            clauses = intersect_canon(clauses, elem.clauses)
            product *= mass
        if product == 0:
            continue
        inter = frame.element(clauses)
        if not model.reduce(inter).empty:
            continue
        inter = frame.element(clauses, empty=True)
        terms.append(ConflictTerm(tuple(combo), product, inter))
        for i, (elem, _) in enumerate(combo):
            if model.reduce(elem).empty:
                continue
            rest = None
            for j, (other, _) in enumerate(combo):
                if j != i:
                    rest = other.clauses if rest is None else intersect_canon(rest, other.clauses)
            if not elem.contains(frame.element(rest)):
                involved.add(elem)
    terms.sort(key=ConflictTerm.sort_key)
    partials = {}
    for t in terms:
        partials[t.intersection] = partials.get(t.intersection, Fraction(0)) + t.product
    partials = {k: partials[k] for k in sorted(partials)}
    k_total = sum((t.product for t in terms), Fraction(0))
    return ConflictLedger(tuple(terms), partials, k_total, frozenset(involved))
