"""Exception types shared across the package."""

from __future__ import annotations


class IgLabError(Exception):
    """Base class for every error raised by this package."""


class NonAssociative(IgLabError):
    """A multiplication table failed the associativity sweep."""

    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        a, b, c = triple
        super().__init__(f"table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")


class SanityViolation(IgLabError):
    """An abstract biorder description breaks one of the basic structural rules."""

    def __init__(self, message: str, pair: tuple | None = None):
        self.pair = pair
        super().__init__(message if pair is None else f"{message} (offending pair: {pair})")


class OrderOverflow(IgLabError):
    """A constructed group would exceed the configured max_group_order."""


class CapExceeded(IgLabError):
    """A capped search ran out of budget before reaching a definite verdict.

    This is the honest three-valued outcome: the question was not decided
    either way at the configured caps.
    """

    def __init__(self, message: str, caps=None):
        self.caps = caps
        super().__init__(message if caps is None else f"{message} [caps: {caps}]")


class GroupNotFiniteWithinCap(IgLabError):
    """Maximal-subgroup enumeration did not close under the configured caps.

    Carries whatever partial model data was assembled before the blow-up.
    """

    def __init__(self, message: str, caps=None, partial=None):
        self.caps = caps
        self.partial = partial
        super().__init__(message if caps is None else f"{message} [caps: {caps}]")


class NotInThisDClass(IgLabError):
    """A word does not represent a regular element of the model's D-class."""


class NotSubgroup(IgLabError):
    """Quotient was requested for subgroups that do not nest."""


class NotNormal(IgLabError):
    """Quotient was requested by a non-normal subgroup."""

    def __init__(self, message: str, witness: int | None = None):
        self.witness = witness
        super().__init__(message)


class FingerprintMismatch(IgLabError):
    """Two triple chains were combined despite having different fingerprints."""


class MissingAutomaton(IgLabError):
    """A contact automaton needed by the coset propagation was not supplied."""


class NormalityViolation(IgLabError):
    """Internal consistency failure: the trivial-start propagation value is not
    normal inside the full-start value.  This should be impossible; exit code 2."""
