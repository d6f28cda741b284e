"""Conjunctive and disjunctive consensus, the first stage of every rule.

The conjunctive combination is folded pairwise on the free lattice, keeping
every empty-intersection entry as a distinct canonical element.  Rules then
view the result under a model, which merges equivalent non-empty entries
and leaves the partial-conflict breakdown untouched.
"""

from __future__ import annotations

from fractions import Fraction

from .bba import Bba, ConflictLedger, conflict_ledger
from .kernels import intersect_canon, union_canon


def _fold(acc, source_fracs, combine):
    out = {}
    for ca, va in acc.items():
        for cb, vb in source_fracs.items():
            key = combine(ca, cb.clauses)
            prev = out.get(key)
            out[key] = va * vb if prev is None else prev + va * vb
    return out


class RawConjunctive:
    """Conjunctive consensus on the free lattice, with its conflict ledger.

    ``masses`` maps free-canonical clause tuples wrapped as elements to
    exact rational masses; empty-intersection entries are included, so the
    total is one.  ``reduced()`` gives the model view: merged non-empty
    masses, the per-element partial conflicts, and the total conflict.
    """

    __slots__ = ("matrix", "model", "masses", "_ledger", "_reduced")

    def __init__(self, matrix, model, masses):
        self.matrix = matrix
        self.model = model
        self.masses = masses
        self._ledger = None
        self._reduced = None

    def ledger(self) -> ConflictLedger:
        if self._ledger is None:
            self._ledger = conflict_ledger(self.matrix, self.model)
        return self._ledger

    def reduced(self):
        """Return ``(nonempty, conflicts, k)`` under the model."""
        if self._reduced is None:
            nonempty, conflicts = {}, {}
            for elem, mass in self.masses.items():
                red = self.model.reduce(elem)
                if red.empty:
                    key = self.model.frame.element(elem.clauses, empty=True)
                    conflicts[key] = conflicts.get(key, Fraction(0)) + mass
                else:
                    nonempty[red] = nonempty.get(red, Fraction(0)) + mass
            k = sum(conflicts.values(), Fraction(0))
            self._reduced = (
                {e: nonempty[e] for e in sorted(nonempty)},
                {e: conflicts[e] for e in sorted(conflicts)},
                k,
            )
        return self._reduced

    def total(self):
        return sum(self.masses.values(), Fraction(0))


def conjunctive(matrix, model=None) -> RawConjunctive:
    """Conjunctive consensus of all sources.

    Folds pairwise over canonical intermediate results, which is exact
    because intersection on the free lattice is associative.  Under a free
    model nothing is empty and the result is itself a proper assignment.
    """
    model = model or matrix.model
    frame = model.frame
    fracs = matrix.fractions()
    acc = {elem.clauses: mass for elem, mass in fracs[0].items()}
    for src in fracs[1:]:
        acc = _fold(acc, src, intersect_canon)
    masses = {frame.element(c): v for c, v in acc.items()}
    return RawConjunctive(matrix, model, {k: masses[k] for k in sorted(masses)})


def disjunctive(matrix, model=None) -> Bba:
    """Disjunctive consensus of all sources.

    The core of the result is the union of the sources' cores; the empty
    set never receives mass.
    """
    model = model or matrix.model
    frame = model.frame
    fracs = matrix.fractions()
    acc = {elem.clauses: mass for elem, mass in fracs[0].items()}
    for src in fracs[1:]:
        acc = _fold(acc, src, union_canon)
    out = {}
    for clauses, mass in acc.items():
        key = model.reduce(frame.element(clauses))
        out[key] = out.get(key, Fraction(0)) + mass
    return Bba(model, {k: float(v) for k, v in out.items()})
