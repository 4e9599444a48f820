class CapacityError(RuntimeError):
    """A computation would exceed a configured resource limit."""


class FalsificationError(AssertionError):
    """A computed object contradicts a proved statement it is checked against."""
