"""Custom exceptions for the dilation toolkit."""

from __future__ import annotations

from typing import Any


class DilationError(Exception):
    """Base exception for dilation toolkit errors."""

    def __init__(self, message: str, check: str = "unknown") -> None:
        """Initialize error.

        Args:
            message: Error message
            check: Name of the check or construction that failed
        """
        self.check = check
        self.detail = message
        super().__init__(f"[{check}] {message}")

    def to_record(self) -> dict[str, Any]:
        """Serialisable form used in verification reports."""
        return {"type": type(self).__name__, "check": self.check, "message": self.detail}


class ShapeMismatchError(DilationError):
    """Raised when coefficient vectors, matrices or block arrays disagree in shape."""

    def __init__(self, message: str, check: str = "shape") -> None:
        super().__init__(message, check=check)


class IndeterminateSignError(DilationError):
    """Raised when a real-factor sign cannot be decided at the configured precision."""

    def __init__(self, factor: int, coeffs: tuple[int, ...], interval: tuple[float, float]) -> None:
        """Initialize error.

        Args:
            factor: Index of the factor whose value straddles zero
            coeffs: Integer coefficients of the offending factor component
            interval: Enclosure of the value as (low, high)
        """
        self.factor = factor
        self.coeffs = coeffs
        self.interval = interval
        message = (
            f"sign of factor {factor} with coefficients {list(coeffs)} is undecidable: "
            f"value lies in [{interval[0]:.3e}, {interval[1]:.3e}]"
        )
        super().__init__(message, check="sign")


class NotInMonoidError(DilationError):
    """Raised when a cone element is not a nonnegative combination of declared generators."""

    def __init__(self, coeffs: tuple[tuple[int, ...], ...]) -> None:
        """Initialize error.

        Args:
            coeffs: Per-factor coefficient vectors of the offending element
        """
        self.coeffs = coeffs
        super().__init__(
            f"element {[list(c) for c in coeffs]} lies in the cone but outside the generated monoid",
            check="monoid",
        )


class NormExceededError(DilationError):
    """Raised when a generator matrix is not a contraction."""

    def __init__(self, norm: float, limit: float, witness: str) -> None:
        """Initialize error.

        Args:
            norm: Spectral norm of the offending generator
            limit: Allowed norm (1 + tolerance)
            witness: Label of the generator
        """
        self.norm = norm
        self.limit = limit
        self.witness = witness
        super().__init__(
            f"generator {witness} has norm {norm:.6g} > {limit:.6g}", check="contraction"
        )


class NonCommutingError(DilationError):
    """Raised when generators of one factor fail to commute."""

    def __init__(self, defect: float, witness: str, check: str = "commutation") -> None:
        self.defect = defect
        self.witness = witness
        super().__init__(f"commutator defect {defect:.3e} at {witness}", check=check)


class NonCommutingEntriesError(DilationError):
    """Raised when entries of A do not commute with entries of B in a Schur lift."""

    def __init__(self, defect: float, witness: str) -> None:
        self.defect = defect
        self.witness = witness
        super().__init__(
            f"entries fail to commute (defect {defect:.3e} at {witness})", check="schur_lift"
        )


class NotHermitianError(DilationError):
    """Raised when a positivity check is asked of a non-Hermitian matrix."""

    def __init__(self, defect: float, limit: float) -> None:
        self.defect = defect
        self.limit = limit
        super().__init__(
            f"asymmetry defect {defect:.3e} exceeds {limit:.3e}", check="hermitian"
        )


class GramNotPSDError(DilationError):
    """Raised when the dilation Gram form has an eigenvalue below the floor."""

    def __init__(self, min_eigenvalue: float, floor: float) -> None:
        self.min_eigenvalue = min_eigenvalue
        self.floor = floor
        super().__init__(
            f"Gram form minimum eigenvalue {min_eigenvalue:.3e} below {floor:.3e}",
            check="gram",
        )


class CapExceededError(DilationError):
    """Raised when a construction would exceed a configured size cap."""

    def __init__(self, what: str, size: int, cap: int) -> None:
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what} size {size} exceeds cap {cap}", check="cap")


class SupportError(DilationError):
    """Raised when a support set cannot carry the requested construction."""

    def __init__(self, message: str) -> None:
        super().__init__(message, check="support")


class SamplerExhaustedError(DilationError):
    """Raised when the norm sampler cannot produce covariant samples."""

    def __init__(self, message: str) -> None:
        super().__init__(message, check="sampler")


class ScenarioError(DilationError):
    """Raised when a scenario file is unreadable or fails schema validation."""

    def __init__(self, message: str) -> None:
        super().__init__(message, check="scenario")
