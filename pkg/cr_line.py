"""Complex lines [L] in the complexified algebra and the regularity trichotomy."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from algebra_core import LieAlgebra3, Vector3C, as_vector, bracket
from cr_config import DEFAULT_TOLERANCES, ToleranceConfig
from cr_errors import NotRegular, ZeroLine
from cr_formats import encode_array, encode_real_array, parse_line_literal

logger = logging.getLogger(__name__)

# Coordinates below this fraction of the norm do not fix the phase.
PHASE_PIVOT_FLOOR = 1e-12


class Regularity(str, Enum):
    REAL = "Real"
    DEGENERATE = "Degenerate"
    REGULAR = "Regular"


def normalize_projective(values: Any) -> tuple[np.ndarray, complex]:
    """Unit-norm representative with the first nonzero coordinate real positive.

    Returns (representative, scale) with values == scale * representative.
    """
    vec = np.asarray(values, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(vec)):
        raise ZeroLine("Line representative has non-finite entries.")
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise ZeroLine("The zero vector does not define a line.")
    unit = vec / norm
    pivot = next(idx for idx, entry in enumerate(unit) if abs(entry) > PHASE_PIVOT_FLOOR)
    phase = unit[pivot] / abs(unit[pivot])
    representative = unit / phase
    representative[pivot] = complex(abs(representative[pivot]), 0.0)
    return representative, complex(norm * phase)


def chordal_distance(first: Any, second: Any) -> float:
    """Fubini-Study chordal distance between the lines of two unit vectors."""
    first = np.asarray(first, dtype=complex)
    second = np.asarray(second, dtype=complex)
    # Norm of the orthogonal part; 1 - |<u,v>|^2 cancels below 1e-8.
    return float(np.linalg.norm(second - np.vdot(first, second) * first))


@dataclass(frozen=True, eq=False)
class ComplexLine:
    representative: Vector3C
    scale: complex = 1.0 + 0.0j

    @classmethod
    def from_vector(cls, values: Any) -> "ComplexLine":
        representative, scale = normalize_projective(as_vector_or_zero(values))
        representative.setflags(write=False)
        return cls(representative=representative, scale=scale)

    @classmethod
    def from_literal(cls, values: Any) -> "ComplexLine":
        return cls.from_vector(parse_line_literal(values))

    @property
    def vector(self) -> Vector3C:
        """The representative as it was supplied (before normalization)."""
        return self.scale * self.representative

    @property
    def L1(self) -> np.ndarray:
        return self.vector.real

    @property
    def L2(self) -> np.ndarray:
        return self.vector.imag

    def conjugate(self) -> "ComplexLine":
        return ComplexLine.from_vector(np.conj(self.vector))

    def scaled(self, factor: complex) -> "ComplexLine":
        return ComplexLine.from_vector(complex(factor) * self.vector)

    def chordal_distance(self, other: "ComplexLine") -> float:
        return chordal_distance(self.representative, other.representative)

    def is_projectively_equal(
        self,
        other: "ComplexLine",
        *,
        tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
    ) -> bool:
        return self.chordal_distance(other) < tolerances.projective_tol

    def to_payload(self) -> dict[str, Any]:
        return {
            "representative": encode_array(self.representative),
            "vector": encode_array(self.vector),
        }


def as_vector_or_zero(values: Any) -> Vector3C:
    vec = as_vector(values)
    if not np.any(vec):
        raise ZeroLine("The zero vector does not define a line.")
    return vec


@dataclass(frozen=True)
class RegularityReport:
    verdict: Regularity
    determinant: float
    plane_margin: float
    transversal_margin: float
    borderline: bool
    bracket_vector: np.ndarray

    @property
    def is_regular(self) -> bool:
        return self.verdict is Regularity.REGULAR

    def to_payload(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "determinant": self.determinant,
            "regularity_margin": abs(self.determinant),
            "plane_margin": self.plane_margin,
            "transversal_margin": self.transversal_margin,
            "borderline": self.borderline,
        }


@dataclass(frozen=True)
class ContactFrame:
    L1: np.ndarray
    L2: np.ndarray
    j_matrix: np.ndarray
    bracket_vector: np.ndarray
    plane_normal: np.ndarray
    j_residual: float

    def to_payload(self) -> dict[str, Any]:
        return {
            "L1": encode_real_array(self.L1),
            "L2": encode_real_array(self.L2),
            "j_matrix": encode_real_array(self.j_matrix),
            "bracket_vector": encode_real_array(self.bracket_vector),
            "plane_normal": encode_real_array(self.plane_normal),
            "j_residual": self.j_residual,
        }


def _near_threshold(ratio: float, threshold: float, factor: float) -> bool:
    return threshold / factor < ratio < threshold * factor


def classify_line(
    alg: LieAlgebra3,
    line: ComplexLine,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> RegularityReport:
    rep = line.representative
    L1, L2 = rep.real, rep.imag
    threshold = tolerances.rank_rel_tol
    factor = tolerances.borderline_factor

    plane_sv = np.linalg.svd(np.column_stack([L1, L2]), compute_uv=False)
    plane_margin = float(plane_sv[1] / plane_sv[0])
    transversal = bracket(alg, L1, L2).real

    if plane_margin < threshold:
        verdict = Regularity.REAL
        transversal_margin = 0.0
        determinant = 0.0
        borderline = _near_threshold(plane_margin, threshold, factor)
    else:
        frame = np.column_stack([L1, L2, transversal])
        frame_sv = np.linalg.svd(frame, compute_uv=False)
        transversal_margin = float(frame_sv[2] / frame_sv[0])
        determinant = float(np.linalg.det(frame))
        verdict = Regularity.DEGENERATE if transversal_margin < threshold else Regularity.REGULAR
        borderline = _near_threshold(plane_margin, threshold, factor) or _near_threshold(
            transversal_margin, threshold, factor
        )

    if borderline:
        logger.warning(
            "Borderline regularity decision %s (plane margin %.3e, transversal margin %.3e)",
            verdict.value,
            plane_margin,
            transversal_margin,
        )
    return RegularityReport(
        verdict=verdict,
        determinant=determinant,
        plane_margin=plane_margin,
        transversal_margin=transversal_margin,
        borderline=borderline,
        bracket_vector=transversal,
    )


def require_regular(
    alg: LieAlgebra3,
    line: ComplexLine,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> RegularityReport:
    report = classify_line(alg, line, tolerances=tolerances)
    if not report.is_regular:
        raise NotRegular(
            f"Line is {report.verdict.value}, not Regular.",
            details=report.to_payload(),
        )
    return report


def contact_frame(
    alg: LieAlgebra3,
    line: ComplexLine,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ContactFrame:
    require_regular(alg, line, tolerances=tolerances)
    L1, L2 = line.L1, line.L2
    # V = span{L} is the -i eigenspace of J, so J L1 = L2 and J L2 = -L1.
    j_matrix = np.array([[0.0, -1.0], [1.0, 0.0]])
    j_residual = float(np.max(np.abs(j_matrix @ j_matrix + np.eye(2))))
    normal = np.cross(L1, L2)
    return ContactFrame(
        L1=L1,
        L2=L2,
        j_matrix=j_matrix,
        bracket_vector=bracket(alg, L1, L2).real,
        plane_normal=normal / np.linalg.norm(normal),
        j_residual=j_residual,
    )
