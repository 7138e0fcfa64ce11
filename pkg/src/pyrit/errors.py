"""Exception types raised by the codec and the shard container."""


class PyritError(Exception):
    pass


class ZeroInverse(PyritError, ZeroDivisionError):
    pass


class Singular(PyritError):
    pass


class TooManySymbols(PyritError, ValueError):
    pass


class NotInIdeal(PyritError):
    """A ring element failed the parity check of the field ideal."""


class BufferShape(PyritError, ValueError):
    pass


class TransformMismatch(PyritError):
    pass


class InsufficientShards(PyritError):
    pass


class HeaderError(PyritError):
    """Truncated or malformed shard header."""


class HeaderMismatch(HeaderError):
    pass


class ChecksumError(HeaderError):
    pass


class CorruptShard(PyritError):
    """Shard payload length disagrees with its header."""
