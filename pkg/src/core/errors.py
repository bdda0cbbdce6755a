class SgsizeError(ValueError):
    """Base class for every input or precondition problem raised by the toolkit."""


class SizeLimitError(SgsizeError):
    pass


class NotAStackError(SgsizeError):
    pass


class NotAFilterError(SgsizeError):
    pass


class PreconditionError(SgsizeError):
    pass


class TableFormatError(SgsizeError):
    pass


class FormatError(SgsizeError):
    pass


class HorizonError(SgsizeError):
    pass
