"""
Exception hierarchy for the persistence Quillen-McCord toolkit.

All errors derive from ValueError so callers that only care about "bad
input" can catch a single builtin, while the CLI can map specific classes
to exit codes and diagnostics.
"""

from typing import Optional


class PersistenceQMError(ValueError):
    """Base error carrying optional index/element context."""

    def __init__(
        self,
        message: str,
        *,
        index: Optional[int] = None,
        element: Optional[str] = None,
    ):
        self.index = index
        self.element = element
        context = []
        if index is not None:
            context.append(f"index {index}")
        if element is not None:
            context.append(f"element {element!r}")
        if context:
            message = f"{message} ({', '.join(context)})"
        super().__init__(message)


# Poset construction
class DuplicateElement(PersistenceQMError):
    pass


class UnknownElement(PersistenceQMError):
    pass


class CycleDetected(PersistenceQMError):
    """Closure of the given relation is not antisymmetric."""

    def __init__(self, cycle, **kwargs):
        self.cycle = list(cycle)
        super().__init__(
            "relation contains a cycle: " + " <= ".join(self.cycle), **kwargs
        )


class NonMonotoneMap(PersistenceQMError):
    pass


class NonMonotoneStep(NonMonotoneMap):
    pass


# Persistence diagrams
class ArityMismatch(PersistenceQMError):
    pass


class NotAFiltration(PersistenceQMError):
    pass


class TargetNotFiltration(NotAFiltration):
    pass


class NotAPersistencePoint(PersistenceQMError):
    pass


class NonCommutingSquare(PersistenceQMError):
    pass


# Simplicial complexes
class UnknownVertex(PersistenceQMError):
    pass


class DomainMismatch(PersistenceQMError):
    pass


class NonSimplicialMap(PersistenceQMError):
    pass


# Algebra
class NotPrime(PersistenceQMError):
    pass


class NegativeMultiplicity(PersistenceQMError):
    pass


class CapExceeded(PersistenceQMError):
    pass


# Reduction
class ShapeMismatch(PersistenceQMError):
    pass


class EmptyFiber(PersistenceQMError):
    pass


class FiberMismatch(PersistenceQMError):
    """Removal bookkeeping disagrees with the fiber it should reproduce."""


# Harness
class SizeCapExceeded(PersistenceQMError):
    pass


class ParseError(PersistenceQMError):
    pass


class InstanceValidationError(PersistenceQMError):
    pass
