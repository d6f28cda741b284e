"""Classic combination rules built on the conjunctive consensus.

Dempster normalizes the conflict away, Smets parks it on the empty set,
Yager moves it to the total ignorance, Dubois-Prade moves each partial
conflict to the union of its factors, the hybrid DSm rule routes it through
integrity constraints, and the weighted-operator family (including both
flavors of weighted averaging) reallocates it by per-element coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from ._transfer import add, fallback_chain, u_of
from .bba import Bba, to_fraction
from .errors import NotNormalizedError, TotalConflictError
from .kernels import union_canon
from .rules_core import conjunctive

_K_ONE_TOL = Fraction(1, 10 ** 12)


def _finish(model, out):
    return Bba(model, {k: float(v) for k, v in out.items()})


def dempster(matrix, model=None, diag=None) -> Bba:
    """Dempster's rule: conjunctive consensus scaled by 1/(1-k).

    Raises :class:`TotalConflictError` when the degree of conflict reaches
    one, where the normalization is undefined.
    """
    model = model or matrix.model
    nonempty, _, k = conjunctive(matrix, model).reduced()
    if 1 - k <= _K_ONE_TOL:
        raise TotalConflictError(float(k))
    out = {elem: mass / (1 - k) for elem, mass in nonempty.items()}
    return _finish(model, out)


def smets(matrix, model=None, diag=None) -> Bba:
    """Smets' rule: unnormalized conjunctive consensus, conflict on ∅."""
    model = model or matrix.model
    nonempty, _, k = conjunctive(matrix, model).reduced()
    out = dict(nonempty)
    add(out, model.frame.empty_element(), k)
    return _finish(model, out)


def yager(matrix, model=None, diag=None) -> Bba:
    """Yager's rule: the whole conflict reinforces the total ignorance."""
    model = model or matrix.model
    nonempty, _, k = conjunctive(matrix, model).reduced()
    out = dict(nonempty)
    if k:
        fallback_chain(model, out, "total-conflict", k,
                       [("total-ignorance", model.frame.total_ignorance())], diag)
    return _finish(model, out)


def _dp_pair(model, left, right):
    """One Dubois-Prade pass over two mass mappings (clauses -> fraction)."""
    frame = model.frame
    out = {}
    for ca, va in left.items():
        ea = frame.element(ca)
        for cb, vb in right.items():
            inter = model.element_intersection(ea, frame.element(cb))
            if not inter.empty:
                add(out, inter.clauses, va * vb)
            else:
                union = model.reduce(frame.element(union_canon(ca, cb)))
                if union.empty:
                    union = model.total_ignorance()
                add(out, union.clauses, va * vb)
    return out


def dubois_prade(matrix, model=None, diag=None) -> Bba:
    """Dubois-Prade's rule: conflicting products move to their factor union.

    Defined pairwise; more sources are folded left to right, which makes
    the result order-dependent (the rule is not associative).
    """
    model = model or matrix.model
    fracs = matrix.fractions()
    acc = {e.clauses: m for e, m in fracs[0].items()}
    for src in fracs[1:]:
        acc = _dp_pair(model, acc, {e.clauses: m for e, m in src.items()})
    if matrix.s > 2 and diag is not None:
        diag.notes.append("pairwise fold in source order; not associative")
        diag.order = tuple(range(1, matrix.s + 1))
    out = {}
    for clauses, mass in acc.items():
        key = model.reduce(model.frame.element(clauses))
        add(out, key, mass)
    return _finish(model, out)


def dsm_hybrid(matrix, model=None, diag=None) -> Bba:
    """The hybrid DSm rule under an arbitrary model.

    Non-empty intersections keep their conjunctive mass.  A product whose
    factors are all empty goes to the union of their disjunctive forms (or
    to the total ignorance when that union is empty).  Any other empty
    intersection goes to the disjunctive form of its canonical conflict.
    When everything collapses, full mass lands on ∅ (or θ0 when the closure
    hypothesis is enabled), signalling that the problem has no solution.
    """
    model = model or matrix.model
    frame = model.frame
    raw = conjunctive(matrix, model)
    nonempty, _, k = raw.reduced()
    out = dict(nonempty)
    if k:
        for term in raw.ledger().terms:
            factors = [e for e, _ in term.factors]
            if all(model.reduce(e).empty for e in factors):
                stages = [("disjunctive-form", u_of(model, factors)),
                          ("total-ignorance", frame.total_ignorance())]
            else:
                stages = [("disjunctive-form", u_of(model, [term.intersection])),
                          ("total-ignorance", frame.total_ignorance())]
            fallback_chain(model, out, term.intersection, term.product, stages, diag)
    if diag is not None and out.get(frame.empty_element()):
        diag.notes.append("degenerate problem: all elements empty")
    return _finish(model, out)


def weighted_operator(matrix, weights, model=None, diag=None) -> Bba:
    """The general weighted operator: m(X) = m12(X) + w(X) * k.

    ``weights`` maps elements (the classical empty set included) to
    coefficients in [0, 1] summing to one.
    """
    model = model or matrix.model
    wnorm = {}
    for key, value in weights.items():
        elem = model.canonical(key) if isinstance(key, str) else model.reduce(key)
        wnorm[elem] = wnorm.get(elem, Fraction(0)) + to_fraction(value)
    total = sum(wnorm.values(), Fraction(0))
    if abs(total - 1) > Fraction(1, 10 ** 9):
        raise NotNormalizedError(float(total))
    nonempty, _, k = conjunctive(matrix, model).reduced()
    out = dict(nonempty)
    for elem, w in wnorm.items():
        add(out, elem, w * k)
    return _finish(model, out)


STATIC = "static"
DYNAMIC = "dynamic"


def wao(matrix, mode=STATIC, model=None, diag=None) -> Bba:
    """Weighted average operator, static or dynamic.

    Static weighting uses the per-element average of the source masses; the
    share aimed at elements that have meanwhile become empty is simply lost,
    so the result can sum below one.  That deficit is reported through the
    diagnostics, never silently renormalized.  The dynamic variant rescales
    the coefficients over non-empty elements and then matches the first
    proportional-conflict rule.
    """
    model = model or matrix.model
    nonempty, _, k = conjunctive(matrix, model).reduced()
    cols = {e: c for e, c in matrix.column_sums(model).items()
            if not model.reduce(e).empty and c > 0}
    out = dict(nonempty)
    if k:
        if mode == STATIC:
            denom = Fraction(matrix.s)
        elif mode == DYNAMIC:
            denom = sum(cols.values(), Fraction(0))
            if denom == 0:
                fallback_chain(model, out, "total-conflict", k,
                               [("disjunctive-form", u_of(model, list(matrix.column_sums(model))))],
                               diag)
                return _finish(model, out)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        for elem, c in cols.items():
            share = k * c / denom
            add(out, elem, share)
            if diag is not None:
                diag.record("total-conflict", elem, share, denom)
    total = sum(out.values(), Fraction(0))
    if diag is not None and total != 1:
        diag.sum_deficit = float(1 - total)
    return _finish(model, out)
