"""Exception types raised by the fusion engine."""


class BeliefFusionError(Exception):
    """Base class for all errors raised by this package."""


class ExprSyntaxError(BeliefFusionError):
    """Malformed set expression. Carries the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownLabelError(BeliefFusionError):
    """An expression referenced a label that is not in the frame."""

    def __init__(self, label, offset=None):
        at = f" (at offset {offset})" if offset is not None else ""
        super().__init__(f"unknown label {label!r}{at}")
        self.label = label
        self.offset = offset


class CapacityError(BeliefFusionError):
    """Frame too large for the requested lattice mode."""


class NotNormalizedError(BeliefFusionError):
    """Masses do not sum to one."""

    def __init__(self, total):
        super().__init__(f"masses sum to {total!r}, expected 1")
        self.total = total


class NegativeMassError(BeliefFusionError):
    """A mass value is negative."""

    def __init__(self, element, value):
        super().__init__(f"negative mass {value!r} on {element}")
        self.element = element
        self.value = value


class MassOnEmptyError(BeliefFusionError):
    """Positive mass sits on an element that is empty under the model."""

    def __init__(self, element):
        super().__init__(f"mass on empty element {element}")
        self.element = element


class TotalConflictError(BeliefFusionError):
    """Dempster's rule is undefined: the sources are in total conflict."""

    def __init__(self, k):
        super().__init__(f"total conflict k={k!r}, normalization impossible")
        self.k = k


class ScenarioError(BeliefFusionError):
    """A scenario file failed to parse or validate."""
