"""Proportional conflict redistribution rules PCR1 through PCR5.

All five start from the conjunctive consensus and differ in how finely they
split the conflicting mass and which weights drive the split: the total
conflict over all columns (PCR1), over the columns involved in the conflict
(PCR2), each partial conflict over its components' columns (PCR3) or their
conjunctive masses (PCR4), and finally each individual product term over
the masses composing it (PCR5).  Every rule shares one degenerate-case
chain: proportional weights, then column sums, then the disjunctive form,
then the total ignorance, then θ0 or ∅.

Arithmetic is exact rational throughout, which makes the results
independent of source order and lets the convergence behaviour of PCR5 be
checked symbolically.
"""

from __future__ import annotations

from fractions import Fraction

from ._transfer import add, fallback_chain, proportional, u_of
from .bba import Bba, MassMatrix
from .diagnostics import PcrDiagnostics  # noqa: F401  (re-exported)
from .kernels import intersect_canon
from .rules_core import conjunctive


def _finish(model, out, exact=False):
    if exact:
        return {k: out[k] for k in sorted(out)}
    return Bba(model, {k: float(v) for k, v in out.items()})


def _ignorance_stages(model, elements):
    return [("disjunctive-form", u_of(model, elements)),
            ("total-ignorance", model.frame.total_ignorance())]


def pcr1(matrix, model=None, diag=None) -> Bba:
    """PCR1: total conflict over all non-empty columns.

    The simplest proportionalization; it works in every degenerate case but
    a totally ignorant source shifts the result.
    """
    model = model or matrix.model
    nonempty, _, k = conjunctive(matrix, model).reduced()
    out = dict(nonempty)
    if k:
        cols = [(e, c) for e, c in matrix.column_sums(model).items()
                if not e.empty and not model.reduce(e).empty and c > 0]
        if cols:
            proportional(out, "total-conflict", k, cols, diag)
        else:
            fallback_chain(model, out, "total-conflict", k,
                           [("disjunctive-form", u_of(model, list(matrix.column_sums(model))))],
                           diag)
    return _finish(model, out)


def pcr2(matrix, model=None, diag=None) -> Bba:
    """PCR2: total conflict over the columns involved in the conflict."""
    model = model or matrix.model
    raw = conjunctive(matrix, model)
    nonempty, _, k = raw.reduced()
    out = dict(nonempty)
    if k:
        columns = matrix.column_sums(model)
        involved = sorted(raw.ledger().involved)
        reduced = dict.fromkeys(model.reduce(e) for e in involved)
        cols = [(e, columns.get(e, Fraction(0))) for e in reduced]
        cols = [(e, c) for e, c in cols if not e.empty and c > 0]
        if cols:
            proportional(out, "total-conflict", k, cols, diag)
        else:
            fallback_chain(model, out, "total-conflict", k,
                           [("disjunctive-form", u_of(model, involved))], diag)
    return _finish(model, out)


def _components(model, conflict):
    """Distinct reduced clause elements of a conflict, in clause order.

    Under dynamic constraints two clauses can collapse to one element;
    counting it twice would skew the proportional split.
    """
    return list(dict.fromkeys(
        model.reduce(model.frame.element((c,))) for c in conflict.clauses))


def _split_partial(model, out, conflict, mass, weighted, components, diag):
    """Common tail of PCR3/PCR4: weights, then columns, then ignorances."""
    if weighted:
        proportional(out, conflict, mass, weighted, diag)
    else:
        fallback_chain(model, out, conflict, mass,
                       _ignorance_stages(model, components), diag)


def pcr3(matrix, model=None, diag=None) -> Bba:
    """PCR3: each partial conflict over its components' column sums."""
    model = model or matrix.model
    nonempty, conflicts, _ = conjunctive(matrix, model).reduced()
    out = dict(nonempty)
    columns = matrix.column_sums(model)
    for conflict, mass in conflicts.items():
        comps = _components(model, conflict)
        weighted = [(e, columns[e]) for e in comps if not e.empty and columns.get(e)]
        _split_partial(model, out, conflict, mass, weighted, comps, diag)
    return _finish(model, out)


def pcr4(matrix, model=None, diag=None) -> Bba:
    """PCR4: each partial conflict over its components' conjunctive masses.

    As soon as one component has zero conjunctive mass the whole split falls
    back to column sums, then to the partial ignorance of the components.
    """
    model = model or matrix.model
    nonempty, conflicts, _ = conjunctive(matrix, model).reduced()
    out = dict(nonempty)
    columns = matrix.column_sums(model)
    for conflict, mass in conflicts.items():
        comps = _components(model, conflict)
        live = [e for e in comps if not e.empty]
        if live and all(nonempty.get(e) for e in live) and len(live) == len(comps):
            weighted = [(e, nonempty[e]) for e in live]
        else:
            weighted = [(e, columns[e]) for e in live if columns.get(e)]
            if weighted and diag is not None:
                diag.fallback(conflict, "column-sums", None, mass)
        _split_partial(model, out, conflict, mass, weighted, comps, diag)
    return _finish(model, out)


# --- PCR5 ------------------------------------------------------------------


def _term_destinations(model, factor_groups, conflict_clauses):
    """Destinations of one conflicting product.

    ``factor_groups`` maps each distinct factor element to the product of
    the masses it received in the term.  A factor deserves a share when it
    is non-empty under the model and at least one of its clauses survives
    in the canonical form of the conflict; factors whose clauses are all
    absorbed (total or partial ignorances covering the rest of the term)
    contributed nothing to the emptiness and receive nothing.
    """
    zset = set(conflict_clauses)
    dests = []
    for elem, weight in factor_groups.items():
        if model.reduce(elem).empty:
            continue
        if any(c in zset for c in elem.clauses):
            dests.append((elem, weight))
    return dests


def _transfer_term(model, out, factors, product, conflict, diag):
    groups = {}
    for elem, mass in factors:
        groups[elem] = groups.get(elem, Fraction(1)) * mass
    dests = _term_destinations(model, groups, conflict.clauses)
    if dests:
        proportional(out, factors, product, dests, diag)
    else:
        fallback_chain(model, out, factors, product,
                       _ignorance_stages(model, [e for e, _ in factors]), diag)


def pcr5_pair(m1, m2, model=None, diag=None, exact=False):
    """Exact two-source PCR5.

    Every conflicting product m1(X)m2(Y) is split between X and Y
    proportionally to m1(X) and m2(Y); fractions with a zero denominator
    never arise because only positive products conflict.  With ``exact``
    the result keeps its rational masses instead of becoming a ``Bba``.
    """
    model = model or m1.model
    frame = model.frame
    out = {}
    for ex, vx in m1.fractions().items():
        for ey, vy in m2.fractions().items():
            inter = frame.element(intersect_canon(ex.clauses, ey.clauses))
            red = model.reduce(inter)
            if not red.empty:
                add(out, red, vx * vy)
            else:
                conflict = frame.element(inter.clauses, empty=True)
                _transfer_term(model, out, ((ex, vx), (ey, vy)), vx * vy, conflict, diag)
    return _finish(model, out, exact)


def pcr5_multi(matrix, model=None, diag=None) -> Bba:
    """General PCR5 by full product-term enumeration.

    Each non-zero conflicting product is redistributed within itself: the
    factors pointing at one element pool their masses multiplicatively and
    the term splits over those pooled weights.  For two sources this
    reproduces :func:`pcr5_pair` exactly.
    """
    model = model or matrix.model
    raw = conjunctive(matrix, model)
    nonempty, _, _ = raw.reduced()
    out = dict(nonempty)
    for term in raw.ledger().terms:
        _transfer_term(model, out, term.factors, term.product, term.intersection, diag)
    return _finish(model, out)


def pcr5_approximate(matrix, model=None, order=None, diag=None) -> Bba:
    """Order-dependent PCR5 approximation for three or more sources.

    The first s-1 sources are combined conjunctively (conflict entries kept
    as lattice elements) and the stored result is then combined with the
    last source using the two-source PCR5 logic.  The order used is
    reported through the diagnostics; two sources delegate to the exact
    pair rule.
    """
    model = model or matrix.model
    frame = model.frame
    if order is None:
        order = tuple(range(1, matrix.s + 1))
    else:
        order = tuple(order)
        if sorted(order) != list(range(1, matrix.s + 1)):
            raise ValueError(f"order {order!r} is not a permutation of 1..{matrix.s}")
    if diag is not None:
        diag.order = order
    sources = [matrix.sources[i - 1] for i in order]
    if matrix.s == 2:
        return pcr5_pair(sources[0], sources[1], model, diag)
    head = conjunctive(MassMatrix(sources[:-1]), model)
    last = sources[-1].fractions()
    out = {}
    for ex, vx in head.masses.items():
        for ey, vy in last.items():
            inter = frame.element(intersect_canon(ex.clauses, ey.clauses))
            red = model.reduce(inter)
            if not red.empty:
                add(out, red, vx * vy)
            else:
                conflict = frame.element(inter.clauses, empty=True)
                _transfer_term(model, out, ((ex, vx), (ey, vy)), vx * vy, conflict, diag)
    return _finish(model, out)
