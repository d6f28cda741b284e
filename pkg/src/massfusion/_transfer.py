"""Shared helpers for redistributing conflicting mass."""

from __future__ import annotations

from fractions import Fraction


def u_of(model, elements):
    """Disjunctive form of a group of elements: one clause of all their labels."""
    mask = 0
    for e in elements:
        mask |= e.labels_mask()
    if mask == 0:
        return model.frame.empty_element()
    return model.reduce(model.frame.element((mask,)))


def terminal_element(model):
    """Where mass goes when every fallback is empty: θ0 if enabled, else ∅."""
    if model.theta0_enabled:
        return model.frame.theta0(), "theta0"
    return model.frame.empty_element(), "empty-set"


def add(out, element, amount):
    if amount:
        out[element] = out.get(element, Fraction(0)) + amount


def proportional(out, source, mass, weighted, diag=None):
    """Split ``mass`` over ``weighted`` = [(element, weight), ...] by weight."""
    constant = sum(w for _, w in weighted)
    for elem, w in weighted:
        share = mass * w / constant
        add(out, elem, share)
        if diag is not None:
            diag.record(source, elem, share, constant)


def fallback_chain(model, out, source, mass, stages, diag=None):
    """Send ``mass`` to the first non-empty stage, else to θ0 or ∅.

    ``stages`` is a list of (name, element) candidates tried in order.
    """
    for name, elem in stages:
        if elem is not None and not model.reduce(elem).empty:
            add(out, model.reduce(elem), mass)
            if diag is not None:
                diag.fallback(source, name, model.reduce(elem), mass)
            return
    elem, name = terminal_element(model)
    add(out, elem, mass)
    if diag is not None:
        diag.fallback(source, name, elem, mass)
