"""Exception hierarchy shared by the library and the command line."""


class WLatticeError(Exception):
    """Base class for every domain error raised by wlattice."""


class ConfigurationError(WLatticeError):
    """Unknown clodum name, bad option combination or malformed config."""


class UnsupportedOperationError(WLatticeError):
    """Operation not defined for the given clodum or system."""


class DimensionError(WLatticeError, ValueError):
    pass


class ClodumMismatchError(WLatticeError, ValueError):
    pass


class CarrierError(WLatticeError, ValueError):
    """A scalar lies outside the carrier set of its clodum."""


class ParseError(WLatticeError):
    """Malformed input file.

    The message always names the file, the line and the expected carrier so
    that the command line can print it verbatim.
    """

    def __init__(self, path, line, message, carrier=None):
        self.path = str(path)
        self.line = line
        self.carrier = carrier
        where = f"{self.path}:{line}" if line is not None else self.path
        text = f"{where}: {message}"
        if carrier is not None:
            text += f" (expected carrier {carrier})"
        super().__init__(text)
