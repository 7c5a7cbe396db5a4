"""Exception hierarchy shared by every module."""


class BicrossError(Exception):
    pass


class ConfigurationError(BicrossError):
    """Inconsistent setup: mismatched truncation orders, missing tables, absent counits."""


class InputError(BicrossError, ValueError):
    """Malformed user input: unknown generators, bad syntax, unsolved relations."""


class NotInvertible(BicrossError, ArithmeticError):
    def __init__(self, message, index=0):
        super().__init__(message)
        self.index = index


class NotASquareRoot(BicrossError, ArithmeticError):
    pass


class ResourceError(BicrossError):
    """Rewriting exceeded its step budget. ``partial`` holds the state reached so far."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
