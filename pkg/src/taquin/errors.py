"""Exception types shared across the package."""


class PosetError(ValueError):
    """Malformed poset, partition, labeling or permutation."""


class GuardError(RuntimeError):
    """An exhaustive computation was asked for beyond its configured size limit."""


class NotDCompleteError(ValueError):
    """Hook lengths were requested for a poset that is not d-complete."""
