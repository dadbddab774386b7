"""Exception types raised across qftforge."""


class QftForgeError(Exception):
    """Base class for all library errors."""


class SizeError(QftForgeError, ValueError):
    """A qubit count or matrix size is outside the supported range."""


class QubitIndexError(QftForgeError, IndexError):
    """A qubit or basis index is out of range or duplicated."""


class ArgumentError(QftForgeError, ValueError):
    """An argument has an invalid value (shots, digits, formats, widths)."""


class UnsupportedError(QftForgeError, ValueError):
    """The request is well formed but outside what the builders encode."""
