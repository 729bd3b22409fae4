"""Exception hierarchy. Every domain error carries its class name to the CLI."""


class CaeError(Exception):
    """Base class for domain errors."""


class InvalidPoint(CaeError):
    pass


class InvalidArc(CaeError):
    pass


class NoExtension(CaeError):
    pass


class NoMorphism(CaeError):
    pass


class NotConnected(CaeError):
    pass


class NotAGenerator(CaeError):
    pass


class OutOfRange(CaeError):
    pass


class InvalidPartition(CaeError):
    pass


class CapExceeded(CaeError):
    pass


class ParseError(CaeError):
    pass
