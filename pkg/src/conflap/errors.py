"""Exception types shared across the package."""


class ConflapError(Exception):
    pass


class ContextMismatch(ConflapError, ValueError):
    """Operands live in different variable or radical contexts."""


class PoleError(ConflapError, ZeroDivisionError):
    """Division by zero or evaluation at a pole."""


class LimitExceeded(ConflapError, RuntimeError):
    """An operator grew past the configured monomial cap."""


class ParseError(ConflapError, ValueError):
    def __init__(self, message, text, pos):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")
