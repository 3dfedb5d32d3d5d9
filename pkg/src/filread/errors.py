"""Exception hierarchy shared by all filread modules."""


class FilreadError(Exception):
    """Base class for every error raised by this package."""


class EmptyInput(FilreadError, ValueError):
    """An operation that needs at least one element got none."""


class EmptyDocument(FilreadError, ValueError):
    """A document-level operation got a document with no sentences."""


class EmptyDataset(FilreadError, ValueError):
    """A dataset-level operation got zero rows."""


class DimensionMismatch(FilreadError, ValueError):
    """Row length does not match the expected feature count."""


class SingleClassDataset(FilreadError, ValueError):
    """Training needs at least two classes present in the labels."""


class TooFewRows(FilreadError, ValueError):
    """Fewer rows than cross-validation folds."""


class EmptyMatrix(FilreadError, ValueError):
    """A confusion matrix with zero total count."""


class EmptyClassRow(FilreadError, ValueError):
    """A confusion-matrix row (actual class) with zero count."""


class EmptyLevel(FilreadError, ValueError):
    """A readability level with no documents in the corpus."""


class UnnormalizedProbabilities(FilreadError, ValueError):
    """A probability vector that does not sum to 1 within tolerance."""


class MalformedItem(FilreadError, ValueError):
    """A `word|TAG` item that cannot be parsed.

    Carries the 1-based line number and 0-based item index of the
    offending item so corpus problems can be located.
    """

    def __init__(self, message: str, line: int, item: int):
        super().__init__(f"line {line}, item {item}: {message}")
        self.line = line
        self.item = item


class MalformedMapping(FilreadError, ValueError):
    """A tagset-mapping config line that cannot be parsed."""


class MissingFile(FilreadError, OSError):
    """A manifest entry points at a file that does not exist."""


class MalformedManifestRow(FilreadError, ValueError):
    """A corpus manifest row with a bad path, level, or format."""


class MalformedFeaturesRow(FilreadError, ValueError):
    """A features CSV row with the wrong shape or unparseable cells."""


class InvalidParams(FilreadError, ValueError):
    """Hyperparameters or generator parameters outside their valid ranges."""


class MalformedModelFile(FilreadError, ValueError):
    """A model file that is not valid JSON or lacks required fields."""


class CrossValidationError(FilreadError, RuntimeError):
    """Training failed inside cross-validation.

    Carries the 0-based fold index; the original error is chained as
    ``__cause__``.
    """

    def __init__(self, message: str, fold: int):
        super().__init__(f"fold {fold}: {message}")
        self.fold = fold
