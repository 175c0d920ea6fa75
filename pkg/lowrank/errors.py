class LowrankError(Exception):
    """Base class for failures raised by this package."""


class SvdConvergenceError(LowrankError):
    """Jacobi sweeps did not orthogonalize the columns within the sweep cap."""

    def __init__(self, sweeps: int, residual: float):
        super().__init__(
            f"SVD did not converge after {sweeps} sweeps"
            f" (largest off-diagonal ratio {residual:.3e})"
        )
        self.sweeps = sweeps
        self.residual = residual


class SamplingError(LowrankError):
    """A sampled index set broke a structural invariant of the plan."""


class VerificationError(LowrankError):
    """An optimality or self-test check failed."""


class MatrixFormatError(LowrankError):
    """Input file could not be parsed as a matrix."""

    def __init__(
        self,
        message: str,
        *,
        path: str | None = None,
        line: int | None = None,
        offset: int | None = None,
    ):
        where = []
        if path:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte offset {offset}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.path = path
        self.line = line
        self.offset = offset
