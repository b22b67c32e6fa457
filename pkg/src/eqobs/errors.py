"""Exception types shared by all modules."""


class EqobsError(ValueError):
    """Base class for every input or validation problem raised by eqobs."""


class GroupError(EqobsError):
    """Malformed permutation, inconsistent degrees or bad group description."""


class BoundExceeded(EqobsError):
    """A configured enumeration bound (group order, subgroup search) was hit."""


class GroupMismatch(EqobsError):
    """Burnside elements of different groups were combined."""


class ValidationError(EqobsError):
    """Raised with the full list of failed invariants."""

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(self.issues) if self.issues else "invalid data")
