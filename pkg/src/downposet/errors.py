"""Exception hierarchy shared by all modules."""


class DownPosetError(Exception):
    """Base class for every error raised by this package."""


class UnknownElementError(DownPosetError, KeyError):
    def __init__(self, element, context=None):
        self.element = element
        msg = f"unknown element {element!r}"
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)

    def __str__(self):
        return self.args[0]


class DuplicateElementError(DownPosetError, ValueError):
    pass


class CycleError(DownPosetError, ValueError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cycle detected: " + " -> ".join(self.cycle))


class NotAPosetError(DownPosetError, ValueError):
    """A relation failed reflexivity, antisymmetry or transitivity."""

    def __init__(self, law, witness):
        self.law = law
        self.witness = tuple(witness)
        super().__init__(f"relation is not {law}: witness {self.witness}")


class MapError(DownPosetError, ValueError):
    """An endomap is not total or mentions foreign elements."""


class NotADownFunctionError(DownPosetError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"map is not a down-function: {report.violations[:3]}")


class CapExceededError(DownPosetError, RuntimeError):
    def __init__(self, cap, progress, what="maps"):
        self.cap = cap
        self.progress = progress
        super().__init__(f"cap of {cap} {what} exceeded (reached {progress})")


class SizeBoundError(DownPosetError, ValueError):
    pass


class NotALatticeError(DownPosetError, ValueError):
    """Raised when an operation needs a top element or a binary meet that is missing."""

    def __init__(self, message, witness=()):
        self.witness = tuple(witness)
        super().__init__(message)


class PreconditionError(DownPosetError, ValueError):
    pass


class ActionError(DownPosetError, ValueError):
    """Malformed or non-closed semilattice/action/set-model data."""

    def __init__(self, message, witness=()):
        self.witness = tuple(witness)
        super().__init__(message)


class DocumentError(DownPosetError, ValueError):
    """A JSON input document does not follow the expected schema."""
