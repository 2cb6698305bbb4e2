"""Exception hierarchy shared by the library and the CLI."""


class StecError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ValidationError(StecError, ValueError):
    """Malformed input: bad schema, invalid sample, bad config."""


class BoundsError(ValidationError, IndexError):
    """A frame index outside ``[0, N)``."""


class DegenerateVideoError(ValidationError):
    """A video too short for the requested computation (N < 2)."""


class SampleTooSmallError(ValidationError):
    """Fewer than two frames where at least two are required."""


class FrameIOError(StecError, OSError):
    """A manifest or frame file that cannot be read or decoded."""

    exit_code = 2
