"""Left-invariant exterior calculus, well-adapted coframes and Cartan data.

Forms are complex row-covectors against the dual basis of the algebra. A
2-form is stored as the antisymmetric matrix of its values on basis pairs,
and d of a left-invariant 1-form is dw(X, Y) = -w([X, Y]).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Sequence

import numpy as np

from algebra_core import LieAlgebra3, as_vector, bracket, construct_algebra
from cr_config import DEFAULT_TOLERANCES, ToleranceConfig
from cr_errors import (
    DegenerateContact,
    GaugeMismatch,
    InvalidRequest,
    NotRegular,
    ResidualTooLarge,
    SingularFrame,
    Str2Violation,
)
from cr_formats import encode_array, encode_complex
from cr_line import ComplexLine, Regularity, classify_line

logger = logging.getLogger(__name__)

Coform = np.ndarray

# Frames whose covector matrix is worse conditioned than this are rejected.
MAX_FRAME_CONDITION = 1e12


def as_coform(values: Any) -> Coform:
    return as_vector(values)


# ------------------------
# Exterior calculus
# ------------------------


def wedge(alpha: Any, beta: Any) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    return np.outer(alpha, beta) - np.outer(beta, alpha)


def d_form(alg: LieAlgebra3, omega: Any) -> np.ndarray:
    return -np.einsum("k,kij->ij", as_coform(omega), alg.structure)


def _dual_vectors(frame: Sequence[Any]) -> np.ndarray:
    matrix = np.vstack([as_coform(item) for item in frame])
    if matrix.shape != (3, 3):
        raise SingularFrame("A frame needs exactly three covectors.")
    condition = np.linalg.cond(matrix)
    if not np.isfinite(condition) or condition > MAX_FRAME_CONDITION:
        raise SingularFrame(
            f"Frame covectors are not a basis (condition number {condition:.3e}).",
            details={"condition": float(condition) if np.isfinite(condition) else None},
        )
    return np.linalg.inv(matrix)


def frame_coefficients(two_form: np.ndarray, frame: Sequence[Any]) -> np.ndarray:
    """Coefficients of a 2-form against f1^f2, f1^f3, f2^f3."""
    duals = _dual_vectors(frame)
    values = duals.T @ np.asarray(two_form, dtype=complex) @ duals
    return np.array([values[0, 1], values[0, 2], values[1, 2]])


def d_coefficients(alg: LieAlgebra3, omega: Any, frame: Sequence[Any]) -> np.ndarray:
    return frame_coefficients(d_form(alg, omega), frame)


# ------------------------
# Types
# ------------------------


@dataclass(frozen=True)
class GaugeRecord:
    s: float = 1.0
    lam: float = 1.0
    mu: complex = 0.0j
    k: float = 1.0
    w: complex = 0.0j
    rho: float = 0.0
    u: float = 1.0

    def to_payload(self) -> dict[str, Any]:
        return {
            "s": float(self.s) + 0.0,
            "lambda": float(self.lam) + 0.0,
            "mu": encode_complex(self.mu),
            "k": float(self.k) + 0.0,
            "w": encode_complex(self.w),
            "rho": float(self.rho) + 0.0,
            "u": float(self.u) + 0.0,
        }


def _triple_scale(a: complex, b: complex, c: complex) -> float:
    return 1.0 + abs(a) ** 2 + abs(b) + abs(c)


def str2_residuals(a: complex, b: complex, c: complex) -> tuple[float, float]:
    return abs(np.conj(a) * c - a * b), abs(b + np.conj(b))


@dataclass(frozen=True)
class StructureTriple:
    a: complex
    b: complex
    c: complex
    gauge: GaugeRecord = field(default_factory=GaugeRecord)
    tolerance: float = DEFAULT_TOLERANCES.residual_tol

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "c", complex(self.c))
        mixed, imaginary = str2_residuals(self.a, self.b, self.c)
        scale = _triple_scale(self.a, self.b, self.c) ** 2
        if mixed > self.tolerance * scale or imaginary > self.tolerance * scale:
            raise Str2Violation(
                "Triple violates conj(a) c = a b or b + conj(b) = 0 "
                f"(residuals {mixed:.3e}, {imaginary:.3e}).",
                details={"mixed": mixed, "imaginary": imaginary},
            )

    @property
    def values(self) -> tuple[complex, complex, complex]:
        return self.a, self.b, self.c

    def to_payload(self) -> dict[str, Any]:
        return {
            "a": encode_complex(self.a),
            "b": encode_complex(self.b),
            "c": encode_complex(self.c),
        }


@dataclass(frozen=True)
class AdaptedCoframe:
    theta: np.ndarray
    theta1: Coform
    transversal: np.ndarray


@dataclass(frozen=True)
class CoframeData:
    algebra: LieAlgebra3
    phi: Coform
    phi1: Coform
    triple: StructureTriple
    well_adapted_residual: float

    @property
    def frame(self) -> tuple[Coform, Coform, Coform]:
        return self.phi, self.phi1, np.conj(self.phi1)

    def to_payload(self) -> dict[str, Any]:
        return {
            "phi": encode_array(self.phi),
            "phi1": encode_array(self.phi1),
            "triple": self.triple.to_payload(),
            "gauge": self.triple.gauge.to_payload(),
            "well_adapted_residual": self.well_adapted_residual,
        }


# ------------------------
# Coframes
# ------------------------


def adapted_coframe(
    alg: LieAlgebra3,
    line: ComplexLine,
    *,
    allow_degenerate: bool = False,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> AdaptedCoframe:
    """Adapted coframe with theta([L1, L2]) = 1 and theta1([L1, L2]) = 0.

    theta1 is the first row of the inverse of the vector frame (conj L, L, T),
    theta the last one. With that normalization dtheta(conj L, L) = -2i.
    """
    report = classify_line(alg, line, tolerances=tolerances)
    if report.verdict is Regularity.REAL or (
        report.verdict is Regularity.DEGENERATE and not allow_degenerate
    ):
        raise NotRegular(
            f"Line is {report.verdict.value}, not Regular.",
            details=report.to_payload(),
        )

    L = line.vector
    L1, L2 = L.real, L.imag
    if report.is_regular:
        transversal = bracket(alg, L1, L2).real
    else:
        # [L1, L2] lies in the plane; any transversal will do for the negative control.
        transversal = np.cross(L1, L2)

    vectors = np.column_stack([np.conj(L), L, transversal.astype(complex)])
    if np.linalg.cond(vectors) > MAX_FRAME_CONDITION:
        raise SingularFrame("Vector frame (conj L, L, T) is singular.")
    covectors = np.linalg.inv(vectors)

    theta = covectors[2]
    drift = float(np.max(np.abs(theta.imag)))
    if drift > tolerances.exact_tol * max(1.0, float(np.max(np.abs(theta)))):
        logger.warning("Contact form picked up an imaginary part %.3e", drift)
    return AdaptedCoframe(theta=theta.real, theta1=covectors[0], transversal=transversal)


def structure_triple(
    alg: LieAlgebra3,
    phi: Any,
    phi1: Any,
    *,
    gauge: GaugeRecord | None = None,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> CoframeData:
    """Read (a, b, c) off d(phi1) for a well-adapted coframe (phi, phi1)."""
    phi = as_coform(phi)
    phi1 = as_coform(phi1)
    frame = (phi, phi1, np.conj(phi1))

    d_phi = d_coefficients(alg, phi, frame)
    well_adapted_residual = float(max(abs(d_phi[0]), abs(d_phi[1]), abs(d_phi[2] - 1j)))

    b, c, a = d_coefficients(alg, phi1, frame)
    scale = _triple_scale(a, b, c)
    if well_adapted_residual > tolerances.residual_tol * scale:
        raise ResidualTooLarge(
            f"Coframe is not well adapted (residual {well_adapted_residual:.3e}).",
            details={"residual": well_adapted_residual},
        )

    triple = StructureTriple(
        a=a,
        b=b,
        c=c,
        gauge=gauge or GaugeRecord(),
        tolerance=tolerances.residual_tol,
    )
    return CoframeData(
        algebra=alg,
        phi=phi,
        phi1=phi1,
        triple=triple,
        well_adapted_residual=well_adapted_residual,
    )


def well_adapt(
    alg: LieAlgebra3,
    theta: Any,
    theta1: Any,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> CoframeData:
    theta = as_coform(theta)
    theta1 = as_coform(theta1)
    frame = (theta, theta1, np.conj(theta1))

    # dtheta = i k theta1^conj(theta1) + w theta^theta1 + conj(w) theta^conj(theta1)
    w, w_conj, ik = d_coefficients(alg, theta, frame)
    k_complex = ik / 1j
    if abs(k_complex) <= tolerances.residual_tol * max(1.0, abs(w)):
        raise DegenerateContact(
            "Levi coefficient vanishes: L and conj(L) span a subalgebra.",
            details={"k": encode_complex(k_complex), "w": encode_complex(w)},
        )
    reality = max(abs(k_complex.imag), abs(w_conj - np.conj(w)))
    if reality > tolerances.residual_tol * max(1.0, abs(k_complex), abs(w)):
        raise ResidualTooLarge(f"dtheta is not real (defect {reality:.3e}).")

    k = float(k_complex.real)
    s = 1.0 if k > 0 else -1.0
    lam = float(np.sqrt(abs(k)))
    mu = -1j * np.conj(w) / k
    phi = s * theta
    phi1 = lam * (theta1 + mu * theta)

    gauge = GaugeRecord(s=s, lam=lam, mu=complex(mu), k=k, w=complex(w))
    logger.debug("well_adapt: k=%.6g w=%s s=%+.0f lambda=%.6g", k, w, s, lam)
    data = structure_triple(alg, phi, phi1, gauge=gauge, tolerances=tolerances)
    if data.well_adapted_residual > tolerances.exact_tol * max(1.0, abs(k), abs(w)):
        logger.warning("Well-adaptation residual %.3e above exact tolerance", data.well_adapted_residual)
    return data


def line_coframe(
    alg: LieAlgebra3,
    line: ComplexLine,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> CoframeData:
    adapted = adapted_coframe(alg, line, tolerances=tolerances)
    return well_adapt(alg, adapted.theta, adapted.theta1, tolerances=tolerances)


def triple_model_algebra(
    triple: StructureTriple,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> tuple[LieAlgebra3, Coform, Coform]:
    """Lie algebra whose dual basis (phi, Re phi1, Im phi1) has the given structure triple."""
    a, b, c = triple.values
    phi = np.array([1.0, 0.0, 0.0], dtype=complex)
    phi1 = np.array([0.0, 1.0, 1.0j])
    phi1_bar = np.conj(phi1)

    d_phi = 1j * wedge(phi1, phi1_bar)
    d_phi1 = a * wedge(phi1, phi1_bar) + b * wedge(phi, phi1) + c * wedge(phi, phi1_bar)
    differentials = (d_phi.real, d_phi1.real, d_phi1.imag)
    structure = -np.array(differentials)
    alg = construct_algebra(structure, ("T", "X", "Y"), name="triple-model", tolerances=tolerances)
    return alg, phi, phi1


# ------------------------
# Cartan data
# ------------------------


def closed_form_cartan(a: complex, b: complex, c: complex) -> dict[str, complex]:
    abs_a2 = abs(a) ** 2
    return {
        "A2": 1j * abs_a2 / 2 + 3 * b / 4,
        "B2": np.conj(a),
        "C2": -a,
        "A3": 4j * a * b / 3,
        "B3": 1j * abs_a2 / 2 - b / 4,
        "C3": -c,
        "A4": abs_a2**2 / 4 + abs(b) ** 2 / 16 + (19 / 12) * 1j * b * abs_a2 - abs(c) ** 2,
        "B4": 2 * np.conj(a) * b / 3,
        "C4": 2 * a * np.conj(b) / 3,
        "r": 1j * c * (abs_a2 / 3 + 3j * b / 2),
        "s": np.conj(a) * (3 * abs(b) ** 2 + (2j / 3) * abs_a2 * b),
    }


@dataclass(frozen=True)
class CartanData:
    A2: complex
    B2: complex
    C2: complex
    A3: complex
    B3: complex
    C3: complex
    A4: complex
    B4: complex
    C4: complex
    r: complex
    s: complex
    residual_norms: tuple[float, float, float, float, float]
    global_fifth_residual: float
    fifth_equation_gap: float
    tolerance: float

    def to_payload(self) -> dict[str, Any]:
        names = ("A2", "B2", "C2", "A3", "B3", "C3", "A4", "B4", "C4")
        return {
            "coefficients": {name: encode_complex(getattr(self, name)) for name in names},
            "r": encode_complex(self.r),
            "s": encode_complex(self.s),
            "residuals": list(self.residual_norms),
            "global_fifth_residual": self.global_fifth_residual,
            "fifth_equation_gap": self.fifth_equation_gap,
            "tolerance": self.tolerance,
        }


def _residual_norm(two_form: np.ndarray, frame: Sequence[Any]) -> float:
    return float(np.max(np.abs(frame_coefficients(two_form, frame))))


def cartan_data(
    triple: StructureTriple,
    *,
    realization: CoframeData | None = None,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> CartanData:
    """Closed-form connection and curvature, checked against the structure equations.

    Each side of the five local structure equations is built independently
    from d of left-invariant forms, on `realization` when given, otherwise on
    the model algebra of the triple.
    """
    a, b, c = triple.values
    coeffs = closed_form_cartan(a, b, c)

    if realization is None:
        alg, phi, phi1 = triple_model_algebra(triple, tolerances=tolerances)
    else:
        alg, phi, phi1 = realization.algebra, realization.phi, realization.phi1
    phi1_bar = np.conj(phi1)
    frame = (phi, phi1, phi1_bar)

    def combo(j: int) -> np.ndarray:
        return coeffs[f"A{j}"] * phi + coeffs[f"B{j}"] * phi1 + coeffs[f"C{j}"] * phi1_bar

    phi2, phi3, phi4 = combo(2), combo(3), combo(4)
    phi2_bar, phi3_bar = np.conj(phi2), np.conj(phi3)
    r, s = coeffs["r"], coeffs["s"]

    lhs = [d_form(alg, form) for form in (phi, phi1, phi2, phi3, phi4)]
    rhs = [
        1j * wedge(phi1, phi1_bar) - wedge(phi, phi2 + phi2_bar),
        -wedge(phi1, phi2) - wedge(phi, phi3),
        2j * wedge(phi1, phi3_bar) + 1j * wedge(phi1_bar, phi3) - wedge(phi, phi4),
        -wedge(phi1, phi4) - wedge(phi2_bar, phi3) - r * wedge(phi, phi1_bar),
        1j * wedge(phi3, phi3_bar) + wedge(s * phi1 + np.conj(s) * phi1_bar, phi),
    ]
    residuals = tuple(_residual_norm(left - right, frame) for left, right in zip(lhs, rhs))

    # The global form of the last equation carries -(phi2 + conj(phi2))^phi4.
    gap_form = wedge(phi2 + phi2_bar, phi4)
    global_fifth = _residual_norm(lhs[4] - (rhs[4] - gap_form), frame)
    gap = _residual_norm(gap_form, frame)

    scale = _triple_scale(a, b, c) ** 2
    limit = tolerances.residual_tol * scale
    failures = {
        f"equation_{index + 1}": value for index, value in enumerate(residuals) if value > limit
    }
    if gap > limit:
        failures["fifth_equation_gap"] = gap
    shape_defects = {
        "A2_real_part": abs(coeffs["A2"].real),
        "A4_imag_part": abs(complex(coeffs["A4"]).imag),
        "C2_plus_conj_B2": abs(coeffs["C2"] + np.conj(coeffs["B2"])),
        "C4_minus_conj_B4": abs(coeffs["C4"] - np.conj(coeffs["B4"])),
    }
    failures.update({name: value for name, value in shape_defects.items() if value > limit})
    if failures:
        raise ResidualTooLarge(
            "Closed-form Cartan data does not satisfy the structure equations.",
            details={"failures": failures, "limit": limit},
        )

    logger.debug("cartan_data residuals %s gap %.2e", residuals, gap)
    return CartanData(
        A2=complex(coeffs["A2"]),
        B2=complex(coeffs["B2"]),
        C2=complex(coeffs["C2"]),
        A3=complex(coeffs["A3"]),
        B3=complex(coeffs["B3"]),
        C3=complex(coeffs["C3"]),
        A4=complex(coeffs["A4"]),
        B4=complex(coeffs["B4"]),
        C4=complex(coeffs["C4"]),
        r=complex(r),
        s=complex(s),
        residual_norms=residuals,  # type: ignore[arg-type]
        global_fifth_residual=global_fifth,
        fifth_equation_gap=gap,
        tolerance=limit,
    )


# ------------------------
# Sphericity and gauge
# ------------------------


class Sphericity(str, Enum):
    SPHERICAL = "Spherical"
    ASPHERICAL = "Aspherical"


@dataclass(frozen=True)
class SphericityVerdict:
    sigma: complex
    verdict: Sphericity
    threshold: float
    r: complex

    @property
    def spherical(self) -> bool:
        return self.verdict is Sphericity.SPHERICAL

    def to_payload(self) -> dict[str, Any]:
        return {
            "sigma": encode_complex(self.sigma),
            "spherical": self.spherical,
            "verdict": self.verdict.value,
            "threshold": self.threshold,
        }


def sigma_value(a: complex, b: complex, c: complex) -> complex:
    return complex(c * (2 * abs(a) ** 2 + 9j * b))


def sphericity(
    triple: StructureTriple,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> SphericityVerdict:
    a, b, c = triple.values
    sigma = sigma_value(a, b, c)
    scale = _triple_scale(a, b, c)
    threshold = tolerances.sphericity_rel_tol * scale

    r = complex(closed_form_cartan(a, b, c)["r"])
    # r = (ic/6)(2|a|^2 + 9ib) = (i/6) sigma
    identity_defect = abs(r - 1j * sigma / 6)
    if identity_defect > tolerances.exact_tol * scale * scale:
        raise ResidualTooLarge(
            f"r and sigma disagree (defect {identity_defect:.3e}).",
            details={"defect": identity_defect},
        )

    verdict = Sphericity.SPHERICAL if abs(sigma) < threshold else Sphericity.ASPHERICAL
    return SphericityVerdict(sigma=sigma, verdict=verdict, threshold=threshold, r=r)


def gauge_transform(triple: StructureTriple, rho: float, u: float) -> StructureTriple:
    if not u > 0:
        raise InvalidRequest(f"Gauge scale u must be positive, got {u}.")
    phase = np.exp(1j * rho)
    gauge = replace(triple.gauge, rho=triple.gauge.rho + rho, u=triple.gauge.u * u)
    return StructureTriple(
        a=phase * triple.a / u,
        b=triple.b / u**2,
        c=phase**2 * triple.c / u**2,
        gauge=gauge,
        tolerance=triple.tolerance,
    )


def gauge_coframe(
    data: CoframeData,
    rho: float,
    u: float,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> CoframeData:
    """Apply phi -> u^2 phi, phi1 -> u e^{i rho} phi1 and recompute the triple."""
    if not u > 0:
        raise InvalidRequest(f"Gauge scale u must be positive, got {u}.")
    gauge = replace(data.triple.gauge, rho=data.triple.gauge.rho + rho, u=data.triple.gauge.u * u)
    return structure_triple(
        data.algebra,
        u * u * data.phi,
        u * np.exp(1j * rho) * data.phi1,
        gauge=gauge,
        tolerances=tolerances,
    )


def match_gauge(
    triple: StructureTriple,
    target: StructureTriple,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> tuple[float, float]:
    """Return (rho, u) with gauge_transform(triple, rho, u) == target."""
    floor = tolerances.residual_tol
    a, b, c = triple.values
    ta, tb, tc = target.values

    if abs(b) > floor and abs(tb) > floor:
        u_squared = b / tb
        if abs(u_squared.imag) > tolerances.orbit_tol * abs(u_squared) or u_squared.real <= 0:
            raise GaugeMismatch(f"b and target b differ by a non-positive factor {u_squared}.")
        u = float(np.sqrt(u_squared.real))
    elif abs(c) > floor and abs(tc) > floor:
        u = float(np.sqrt(abs(c) / abs(tc)))
    elif abs(a) > floor and abs(ta) > floor:
        u = abs(a) / abs(ta)
    else:
        u = 1.0

    if abs(a) > floor and abs(ta) > floor:
        rho = float(np.angle(ta * u / a))
    elif abs(c) > floor and abs(tc) > floor:
        rho = float(np.angle(tc * u * u / c)) / 2
    else:
        rho = 0.0

    moved = gauge_transform(triple, rho, u)
    defect = max(abs(moved.a - ta), abs(moved.b - tb), abs(moved.c - tc))
    if defect > tolerances.orbit_tol * _triple_scale(ta, tb, tc):
        raise GaugeMismatch(
            f"Triples are not gauge equivalent (defect {defect:.3e}).",
            details={"defect": defect, "rho": rho, "u": u},
        )
    return rho, u


def invariants_payload(
    data: CoframeData,
    cartan: CartanData,
    verdict: SphericityVerdict,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> dict[str, Any]:
    return {
        "triple": data.triple.to_payload(),
        "r": encode_complex(cartan.r),
        "s": encode_complex(cartan.s),
        "sigma": encode_complex(verdict.sigma),
        "spherical": verdict.spherical,
        "residuals": list(cartan.residual_norms),
        "gauge": data.triple.gauge.to_payload(),
        "well_adapted_residual": data.well_adapted_residual,
        "tolerance": tolerances.as_dict(),
    }
