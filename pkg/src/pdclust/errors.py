"""Exception hierarchy shared across the package.

Every error raised by pdclust derives from :class:`PdclustError`, so callers
can catch one type at a pipeline boundary. The CLI maps subclasses onto exit
codes (usage / data / numerical).
"""


class PdclustError(Exception):
    """Base class for all pdclust errors."""


# --- numerical -------------------------------------------------------------

class ZeroMatrixError(PdclustError):
    """Every column equals the mean: the centered matrix is zero and no
    trend direction exists."""


class NotConvergedError(PdclustError):
    """The singular-triplet iteration hit its iteration cap before meeting
    the residual tolerance."""


class DegenerateVectorError(PdclustError):
    """All entries of the projection vector are equal; neither the sign rule
    nor the gap rule can produce two nonempty sides."""


# --- partitioning / driver --------------------------------------------------

class WindowEmptyError(PdclustError):
    """The fringe tolerance excludes every candidate split position."""


class NothingSplittableError(PdclustError):
    """Every leaf is a singleton, has zero scatter, or is marked
    unsplittable."""


class InvalidKError(PdclustError):
    """Requested cluster count outside 1..n."""


# --- weighting ---------------------------------------------------------------

class EmptyColumnError(PdclustError):
    """A column holds no positive entry, so its maximum (or norm) is
    undefined for the requested transform."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"column {index} has no positive entry")


class EmptyRowError(PdclustError):
    """A row holds no positive entry, so its document frequency is zero."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"row {index} has no positive entry")


# --- evaluation ---------------------------------------------------------------

class LengthMismatchError(PdclustError):
    """Paired vectors (assignments vs labels) differ in length."""


class UnknownIdError(PdclustError):
    """An observation id in one file has no counterpart in the other."""


# --- io -----------------------------------------------------------------------

class FileUnreadableError(PdclustError):
    """Input file missing or not readable."""


class RaggedRowsError(PdclustError):
    """CSV rows do not all have the same number of fields."""


class NonNumericCellError(PdclustError):
    """A data cell could not be parsed as a number (or was missing under the
    reject policy). Carries 1-based file coordinates."""

    def __init__(self, row, col, message=None):
        self.row = row
        self.col = col
        super().__init__(message or f"non-numeric cell at row {row}, column {col}")


class BadHeaderError(PdclustError):
    """MatrixMarket banner is not 'matrix coordinate real general'."""


class IndexOutOfRangeError(PdclustError):
    """MatrixMarket entry index outside the declared dimensions."""


class OutDirUnwritableError(PdclustError):
    """Output directory cannot be created or written."""
