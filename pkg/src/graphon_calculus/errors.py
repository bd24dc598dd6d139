class GraphonError(ValueError):
    """Base class for domain errors raised by this package."""


class SelfLoopError(GraphonError):
    pass


class MatrixValidationError(GraphonError):
    pass


class NotClassFunctionError(GraphonError):
    pass


class BasisError(GraphonError):
    pass
