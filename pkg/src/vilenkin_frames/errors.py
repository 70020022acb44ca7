"""Exception hierarchy shared by every module."""


class VilenkinError(Exception):
    """Base class for all library errors."""


class DimensionError(VilenkinError, ValueError):
    """Operands belong to different windows, sides or shapes."""


class WindowOverflowError(VilenkinError, ValueError):
    """A value does not fit inside the configured digit window."""


class TruncationError(VilenkinError, ValueError):
    """A digit shift would drop information; enlarge the window."""


class DegenerateGeneratorError(VilenkinError, ValueError):
    """The generator is (numerically) the zero function."""


class NonHermitianError(VilenkinError, ValueError):
    pass


class SchemaError(VilenkinError, ValueError):
    """Input file does not follow the documented JSON schema."""
