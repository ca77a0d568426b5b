from __future__ import annotations

from typing import Any

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INVALID = 2


class CRGeometryError(Exception):
    code = "cr_geometry_error"

    def __init__(self, message: str, exit_code: int = EXIT_INVALID, details: Any = None):
        super().__init__(message)
        self.exit_code = exit_code
        self.details = details


# ------------------------
# algebra_core
# ------------------------


class AntisymmetryViolation(CRGeometryError):
    code = "antisymmetry_violation"


class JacobiViolation(CRGeometryError):
    code = "jacobi_violation"


class RepMismatch(CRGeometryError):
    code = "rep_mismatch"


class NoRepresentation(CRGeometryError):
    code = "no_representation"


# ------------------------
# cr_line / coframe_engine
# ------------------------


class ZeroLine(CRGeometryError):
    code = "zero_line"


class NotRegular(CRGeometryError):
    code = "not_regular"


class SingularFrame(CRGeometryError):
    code = "singular_frame"


class DegenerateContact(CRGeometryError):
    code = "degenerate_contact"


class Str2Violation(CRGeometryError):
    code = "str2_violation"


class ResidualTooLarge(CRGeometryError):
    code = "residual_too_large"


class GaugeMismatch(CRGeometryError):
    code = "gauge_mismatch"


# ------------------------
# group_atlas / realization
# ------------------------


class UnknownTag(CRGeometryError):
    code = "unknown_tag"


class SingularParameter(CRGeometryError):
    code = "singular_parameter"


class RealRoots(CRGeometryError):
    code = "real_roots"


class NotSameHalfPlane(CRGeometryError):
    code = "not_same_half_plane"


class ClassificationMismatch(CRGeometryError):
    code = "classification_mismatch"


class NotAHomomorphism(CRGeometryError):
    code = "not_a_homomorphism"


class ChartUndefined(CRGeometryError):
    code = "chart_undefined"


# ------------------------
# cli / files
# ------------------------


class InvalidRequest(CRGeometryError):
    code = "invalid_request"


class FormatError(CRGeometryError):
    code = "format_error"


def build_error_payload(
    *,
    code: str,
    message: str,
    details: Any = None,
) -> dict[str, Any]:
    payload = {
        "code": str(code).strip() or "unknown_error",
        "message": str(message).strip() or "Unknown error.",
        "details": details if details is not None else {},
    }
    # Older report readers look for "error".
    payload["error"] = payload["message"]
    return payload


def error_payload_for(exc: BaseException) -> dict[str, Any]:
    if isinstance(exc, CRGeometryError):
        return build_error_payload(code=exc.code, message=str(exc), details=exc.details)
    return build_error_payload(
        code="internal_error",
        message=f"{type(exc).__name__}: {exc}",
    )
