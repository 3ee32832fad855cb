"""Exception hierarchy shared across the package."""


class PavetwinError(Exception):
    """Base class for all pavetwin errors."""


class DataError(PavetwinError):
    """Problems with input data files or their contents."""


class MissingFile(DataError):
    pass


class SchemaError(DataError):
    """Header or column count does not match the declared CSV schema."""


class ParseError(DataError):
    def __init__(self, path, row, column, message):
        super().__init__(f"{path}: row {row}, column '{column}': {message}")
        self.path = path
        self.row = row
        self.column = column


class MissingTarget(DataError):
    def __init__(self, segment_id):
        super().__init__(f"segment {segment_id} has no distress record")
        self.segment_id = segment_id


class AllMissing(DataError):
    def __init__(self, column):
        super().__init__(f"column '{column}' has no non-missing values")
        self.column = column


class ConfigError(PavetwinError):
    pass


class ShapeError(PavetwinError):
    pass


class DimensionError(ShapeError):
    pass


class EmptyInput(ShapeError):
    pass


class NonFinite(PavetwinError):
    """A numerical update produced NaN or Inf."""


class NotFitted(PavetwinError):
    pass


class UnknownCategory(PavetwinError):
    def __init__(self, category):
        super().__init__(f"category {category!r} was not seen during fit")
        self.category = category


class ZeroVariance(PavetwinError):
    pass


class UnknownSegment(PavetwinError):
    def __init__(self, segment_id):
        super().__init__(f"unknown segment id {segment_id}")
        self.segment_id = segment_id


class ModelMissing(PavetwinError):
    pass


class HorizonMismatch(PavetwinError):
    pass


class SchemaVersionError(PavetwinError):
    pass


class CorruptCheckpoint(PavetwinError):
    pass
