"""
Module for library exceptions

Every error derives from FedRdmaError and from the builtin that fits it best,
so callers may catch either one.
"""


class FedRdmaError(Exception):
    """ Root of all fedrdma-sim errors """


class InvalidConfigError(FedRdmaError, ValueError):
    """ A configuration object violates its invariants """


class ConfigParseError(FedRdmaError, ValueError):
    """
    A scenario file cannot be parsed or validated.

    Attributes:
        key (str): Dotted path of the offending key, if any
    """

    def __init__(self, message, key=None):
        if key is not None:
            message = f"{key}: {message}"
        super(ConfigParseError, self).__init__(message)
        self.key = key


class InvalidHeaderError(FedRdmaError, ValueError):
    """ Bytes do not hold a valid chunk header """


class TooShortError(InvalidHeaderError):
    pass


class InvalidMagicError(InvalidHeaderError):
    pass


class InvalidVersionError(InvalidHeaderError):
    pass


class InconsistentFieldsError(InvalidHeaderError):
    pass


class ZeroChunkSizeError(FedRdmaError, ValueError):
    pass


class ReassemblyError(FedRdmaError, ValueError):
    """ A chunk set cannot be merged back into a blob """


class MissingChunkError(ReassemblyError):
    def __init__(self, seq):
        super(MissingChunkError, self).__init__(f"chunk {seq} is missing")
        self.seq = seq


class DuplicateSeqError(ReassemblyError):
    pass


class CrcMismatchError(ReassemblyError):
    pass


class TotalMismatchError(ReassemblyError):
    pass


class CapacityTooSmallError(FedRdmaError, ValueError):
    pass


class OutOfBoundsError(FedRdmaError, IndexError):
    pass


class UnregisteredRegionError(FedRdmaError, RuntimeError):
    pass


class RegionTooSmallError(FedRdmaError, ValueError):
    pass


class ProtocolViolationError(FedRdmaError, RuntimeError):
    pass


class UnknownRankError(FedRdmaError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class NoFeasibleChunkError(FedRdmaError, RuntimeError):
    pass
