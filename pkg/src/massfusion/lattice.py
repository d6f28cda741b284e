"""Frames, canonical lattice elements, and emptiness under a model.

Elements of the power set or hyper-power set are kept in a unique reduced
conjunctive normal form: an antichain of clauses, each clause a bitmask of
frame labels.  Two expressions denote the same lattice element exactly when
they normalize to the same clause tuple.  A model (free / Shafer / hybrid
with explicit constraints) decides which elements are empty and can rewrite
an element to its simplest equivalent form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, ExprSyntaxError, UnknownLabelError
from .kernels import absorb_masks, intersect_canon, union_canon

MAX_POWERSET_LABELS = 16
MAX_HYPER_LABELS = 6

_FORBIDDEN_IN_LABEL = set("|&() \t\r\n")


class Frame:
    """An ordered frame of discernment: distinct hypothesis labels."""

    __slots__ = ("labels", "n", "full_mask", "_index")

    def __init__(self, labels):
        labels = tuple(labels)
        if not labels:
            raise CapacityError("frame must contain at least one hypothesis")
        if len(set(labels)) != len(labels):
            raise CapacityError("frame labels must be distinct")
        if len(labels) > MAX_POWERSET_LABELS:
            raise CapacityError(
                f"frame has {len(labels)} labels, maximum is {MAX_POWERSET_LABELS}"
            )
        for lab in labels:
            if not lab or any(ch in _FORBIDDEN_IN_LABEL for ch in lab):
                raise CapacityError(f"invalid label {lab!r}")
        self.labels = labels
        self.n = len(labels)
        self.full_mask = (1 << self.n) - 1
        self._index = {lab: i for i, lab in enumerate(labels)}

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(label) from None

    def element(self, clauses, empty=False):
        """Wrap a canonical clause tuple without re-normalizing it."""
        return CanonicalElement(self, tuple(clauses), empty)

    def singleton(self, label):
        return self.element((1 << self.index(label),))

    def total_ignorance(self):
        return self.element((self.full_mask,))

    def empty_element(self):
        return self.element((0,), empty=True)

    def theta0(self):
        """Closure hypothesis standing for any missing alternatives."""
        return self.element((), empty=False)

    def mask_str(self, mask):
        return "|".join(lab for i, lab in enumerate(self.labels) if mask >> i & 1)

    def __repr__(self):
        return f"Frame({list(self.labels)!r})"

    def __eq__(self, other):
        return isinstance(other, Frame) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)


class CanonicalElement:
    """A lattice element in reduced conjunctive normal form.

    ``clauses`` is a sorted tuple of label bitmasks forming an antichain;
    the element is the intersection of its clauses, each clause the union of
    its labels.  ``empty`` records whether the element is empty under the
    model that produced it.  Equality, ordering and hashing are structural
    on the clause tuple only, so the same element compares equal whether or
    not a model has flagged it.
    """

    __slots__ = ("frame", "clauses", "empty", "_hash")

    def __init__(self, frame, clauses, empty=False):
        self.frame = frame
        self.clauses = clauses
        self.empty = empty
        self._hash = hash(clauses)

    @property
    def is_theta0(self):
        return self.clauses == ()

    @property
    def is_classical_empty(self):
        return self.clauses == (0,)

    def labels_mask(self):
        """Union of all labels occurring in the element (its disjunctive form)."""
        m = 0
        for c in self.clauses:
            m |= c
        return m

    def contains(self, other):
        """Free-lattice containment: does this element include ``other``?

        For reduced conjunctive normal forms, X includes Y exactly when every
        clause of X has some clause of Y as a subset.
        """
        return all(any(f & ~e == 0 for f in other.clauses) for e in self.clauses)

    def __eq__(self, other):
        return isinstance(other, CanonicalElement) and self.clauses == other.clauses

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.clauses < other.clauses

    def __le__(self, other):
        return self.clauses <= other.clauses

    def __str__(self):
        if self.is_theta0:
            return "θ0"
        if self.is_classical_empty:
            return "∅"
        parts = []
        for c in self.clauses:
            s = self.frame.mask_str(c)
            if len(self.clauses) > 1 and "|" in s:
                s = f"({s})"
            parts.append(s)
        return "&".join(parts)

    def __repr__(self):
        flag = ", empty" if self.empty else ""
        return f"<{self}{flag}>"


# --- set expressions -------------------------------------------------------


@dataclass(frozen=True)
class Label:
    name: str


@dataclass(frozen=True)
class UnionOf:
    left: "SetExpr"
    right: "SetExpr"


@dataclass(frozen=True)
class InterOf:
    left: "SetExpr"
    right: "SetExpr"


SetExpr = Label | UnionOf | InterOf


def parse_expr(text, frame):
    """Parse a set expression over the frame's labels.

    Grammar: ``expr := term ('|' term)*``, ``term := atom ('&' atom)*``,
    ``atom := label | '(' expr ')'``.  Intersection binds tighter than
    union; whitespace is ignored.
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr():
        node = term()
        while peek() == "|":
            take()
            node = UnionOf(node, term())
        return node

    def term():
        node = atom()
        while peek() == "&":
            take()
            node = InterOf(node, atom())
        return node

    def atom():
        kind, value, off = take() if pos < len(tokens) else (None, None, len(text))
        if kind == "label":
            if value not in frame._index:
                raise UnknownLabelError(value, off)
            return Label(value)
        if kind == "(":
            node = expr()
            if peek() != ")":
                raise ExprSyntaxError("expected ')'", tokens[pos][2] if pos < len(tokens) else len(text))
            take()
            return node
        raise ExprSyntaxError("expected a label or '('", off)

    if not tokens:
        raise ExprSyntaxError("empty expression", 0)
    node = expr()
    if pos != len(tokens):
        raise ExprSyntaxError(f"unexpected {tokens[pos][1]!r}", tokens[pos][2])
    return node


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "|&()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "|&()":
                j += 1
            tokens.append(("label", text[i:j], i))
            i = j
    return tokens


def free_clauses(expr, frame):
    """Reduce a parse tree to its canonical clause tuple on the free lattice."""
    if isinstance(expr, Label):
        return (1 << frame.index(expr.name),)
    if isinstance(expr, InterOf):
        return intersect_canon(free_clauses(expr.left, frame), free_clauses(expr.right, frame))
    if isinstance(expr, UnionOf):
        return union_canon(free_clauses(expr.left, frame), free_clauses(expr.right, frame))
    raise TypeError(f"not a set expression: {expr!r}")


def expr_labels_mask(expr, frame):
    if isinstance(expr, Label):
        return 1 << frame.index(expr.name)
    return expr_labels_mask(expr.left, frame) | expr_labels_mask(expr.right, frame)


def disjunctive_form(expr, frame):
    """The union of all singletons occurring in the expression.

    Rewrites both connectives to union, so the result is always a single
    clause collecting every label mentioned.
    """
    if isinstance(expr, str):
        expr = parse_expr(expr, frame)
    return frame.element((expr_labels_mask(expr, frame),))


# --- models ---------------------------------------------------------------

FREE = "free"
SHAFER = "shafer"
HYBRID = "hybrid"

CLOSED = "closed"
OPEN = "open"


class Model:
    """A frame plus integrity constraints deciding which elements are empty.

    ``shafer`` makes all distinct singletons pairwise exclusive (power-set
    work); ``free`` imposes no constraints; ``hybrid`` takes an explicit set
    of elements forced to be empty, with the consequences propagated to
    everything they cover.  Free and hybrid models work on the hyper-power
    set and are capped at six labels; Shafer models allow sixteen.
    """

    __slots__ = (
        "frame", "kind", "constraints", "world", "theta0_enabled",
        "_alive", "_reduce_cache", "_cellmask_cache",
    )

    def __init__(self, frame, kind=SHAFER, constraints=(), world=CLOSED, theta0=False):
        if kind not in (FREE, SHAFER, HYBRID):
            raise ValueError(f"unknown model kind {kind!r}")
        if world not in (CLOSED, OPEN):
            raise ValueError(f"unknown world flag {world!r}")
        self.frame = frame
        self.kind = kind
        self.world = world
        self.theta0_enabled = bool(theta0)
        self._reduce_cache = {}
        self._cellmask_cache = {}
        if kind == SHAFER:
            if constraints:
                raise ValueError("a Shafer model takes no extra constraints")
            self.constraints = ()
            self._alive = None
        else:
            if frame.n > MAX_HYPER_LABELS:
                raise CapacityError(
                    f"hyper-power-set models are limited to {MAX_HYPER_LABELS} labels"
                )
            canon = []
            for c in constraints:
                canon.append(self._free_element(c))
            if kind == FREE and canon:
                raise ValueError("a free model takes no constraints")
            self.constraints = tuple(sorted(canon))
            killed = 0
            for e in self.constraints:
                killed |= self._cellmask(e.clauses)
            n_cells = (1 << ((1 << frame.n) - 1)) - 1
            self._alive = n_cells & ~killed

    def _free_element(self, spec):
        if isinstance(spec, CanonicalElement):
            return spec
        if isinstance(spec, str):
            spec = parse_expr(spec, self.frame)
        return self.frame.element(free_clauses(spec, self.frame))

    def canonical(self, spec):
        """Parse/normalize ``spec`` and reduce it under this model."""
        return self.reduce(self._free_element(spec))

    def reduce(self, element):
        """Simplest model-equivalent form of an element, empty flag set.

        Non-empty elements are rewritten to the canonical representative of
        their equivalence class under the constraints (for a Shafer model:
        the common part of all clauses).  Empty elements keep their free
        canonical form so distinct partial conflicts stay distinguishable.
        """
        key = element.clauses
        hit = self._reduce_cache.get(key)
        if hit is not None:
            return hit
        out = self._reduce_clauses(key)
        self._reduce_cache[key] = out
        return out

    def _reduce_clauses(self, clauses):
        frame = self.frame
        if clauses == ():
            return frame.theta0()
        if clauses == (0,):
            return frame.empty_element()
        if self.kind == FREE:
            return frame.element(clauses)
        if self.kind == SHAFER:
            inter = frame.full_mask
            for c in clauses:
                inter &= c
            if inter:
                return frame.element((inter,))
            return frame.element(clauses, empty=True)
        cells = self._cellmask(clauses) & self._alive
        if not cells:
            return frame.element(clauses, empty=True)
        return frame.element(self._prime_clauses(cells))

    def _cellmask(self, clauses):
        """Bitmask over the 2^n - 1 minimal regions covered by the element."""
        hit = self._cellmask_cache.get(clauses)
        if hit is not None:
            return hit
        n_labels = self.frame.n
        mask = 0
        for cell in range(1, 1 << n_labels):
            for c in clauses:
                if not cell & c:
                    break
            else:
                mask |= 1 << (cell - 1)
        self._cellmask_cache[clauses] = mask
        return mask

    def _prime_clauses(self, cellmask):
        cells = [i + 1 for i in range((1 << self.frame.n) - 1) if cellmask >> i & 1]
        minimal = [s for s in cells if not any(t != s and t & ~s == 0 for t in cells)]
        full = self.frame.full_mask
        hitting = [c for c in range(1, full + 1) if all(s & c for s in minimal)]
        return absorb_masks(hitting)

    def is_empty(self, element):
        return self.reduce(element).empty

    def element_union(self, a, b):
        return self.reduce(self.frame.element(union_canon(a.clauses, b.clauses)))

    def element_intersection(self, a, b):
        return self.reduce(self.frame.element(intersect_canon(a.clauses, b.clauses)))

    def total_ignorance(self):
        return self.reduce(self.frame.total_ignorance())

    def __eq__(self, other):
        return (
            isinstance(other, Model)
            and self.frame == other.frame
            and self.kind == other.kind
            and self.constraints == other.constraints
            and self.world == other.world
            and self.theta0_enabled == other.theta0_enabled
        )

    def __hash__(self):
        return hash((self.frame, self.kind, self.constraints, self.world, self.theta0_enabled))

    def __repr__(self):
        extra = f", constraints={[str(c) for c in self.constraints]}" if self.constraints else ""
        return f"Model({self.frame!r}, {self.kind!r}{extra}, world={self.world!r})"


def shafer_as_hybrid(frame, world=CLOSED, theta0=False):
    """The Shafer model spelled as explicit pairwise exclusivity constraints."""
    constraints = []
    for i in range(frame.n):
        for j in range(i + 1, frame.n):
            constraints.append(frame.element(absorb_masks([1 << i, 1 << j])))
    return Model(frame, HYBRID, constraints, world=world, theta0=theta0)


def canonical_form(expr, model):
    """Canonical form of an expression (or its text) under a model."""
    if isinstance(expr, str):
        expr = parse_expr(expr, model.frame)
    return model.reduce(model.frame.element(free_clauses(expr, model.frame)))


def is_empty(element, model):
    """True when the element is empty under the model's constraints."""
    return model.is_empty(element)
