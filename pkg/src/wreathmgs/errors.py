"""Exception hierarchy shared by all modules."""


class WreathMGSError(Exception):
    pass


class DegreeMismatch(WreathMGSError, ValueError):
    pass


class GroupMismatch(WreathMGSError, ValueError):
    pass


class NotInvariant(WreathMGSError, ValueError):
    pass


class ResourceError(WreathMGSError, RuntimeError):
    """Base for cap-exceeded conditions (CLI exit code 3)."""


class GroupTooLarge(ResourceError):
    pass


class DegreeOverflow(ResourceError):
    pass


class DegreeTooLarge(ResourceError):
    pass


class NotSatisfied(WreathMGSError):
    """The group fails condition PS; ``criterion`` names the blocking check."""

    def __init__(self, criterion, reason):
        super().__init__(f"{criterion}: {reason}")
        self.criterion = criterion
        self.reason = reason


class SteeringNotFound(WreathMGSError):
    def __init__(self, reason, diagnostics=None):
        super().__init__(reason)
        self.reason = reason
        self.diagnostics = diagnostics or {}


class InvalidData(WreathMGSError, ValueError):
    pass


class NotExpressible(WreathMGSError):
    pass


class ReplayMismatch(WreathMGSError, AssertionError):
    """A replayed product disagrees with its closed form."""

    def __init__(self, label, computed, expected):
        super().__init__(f"{label}: computed {computed}, expected {expected}")
        self.label = label
        self.computed = computed
        self.expected = expected


class AlphabetMismatch(WreathMGSError, ValueError):
    pass


class LetterOutOfRange(WreathMGSError, ValueError):
    pass


class ShapeMismatch(WreathMGSError, ValueError):
    pass
