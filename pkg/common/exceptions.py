class CRToolError(Exception):
    """Base class for every error raised by the toolkit."""


class JetDegreeError(CRToolError, ValueError):
    pass


class JetDomainError(CRToolError, ValueError):
    pass


class SurfaceDomainError(CRToolError, ValueError):
    pass


class PreconditionError(CRToolError, ValueError):
    pass


class ComputationError(CRToolError, ArithmeticError):
    """A numerical step failed on valid input; the CLI exits with status 1."""


class ProjectionError(ComputationError):
    pass


class SamplingError(ComputationError):
    pass
