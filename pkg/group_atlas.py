"""Built-in groups sl2r, su2, heis, e2: canonical families and the classification maps."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Sequence

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq

from algebra_core import LieAlgebra3, construct_algebra, group_exp, rep_coordinates, rep_matrix
from coframe_engine import line_coframe, sphericity
from cr_config import DEFAULT_TOLERANCES, ToleranceConfig
from cr_errors import (
    ClassificationMismatch,
    NotSameHalfPlane,
    RealRoots,
    SingularParameter,
    UnknownTag,
    ZeroLine,
)
from cr_formats import encode_array, encode_complex
from cr_line import ComplexLine, Regularity, chordal_distance, normalize_projective, require_regular

logger = logging.getLogger(__name__)

TAGS = ("sl2r", "su2", "heis", "e2")

SL2_SPHERICAL_T = (-3.0 + 2.0 * math.sqrt(2.0), 1.0)
# Canonical t closer than this to a spherical value cannot contradict the coframe verdict.
DECISIVE_MARGIN = 1e-4


def _unit(row: int, col: int, size: int) -> np.ndarray:
    mat = np.zeros((size, size), dtype=complex)
    mat[row, col] = 1.0
    return mat


def _structure(brackets: dict[tuple[int, int], dict[int, float]]) -> list[dict[str, Any]]:
    return [
        {"i": i, "j": j, "k": k, "v": v}
        for (i, j), components in brackets.items()
        for k, v in components.items()
    ]


@lru_cache(maxsize=None)
def builtin_algebra(tag: str) -> LieAlgebra3:
    if tag == "sl2r":
        # [A,B]=2B, [A,C]=-2C, [B,C]=A with A=diag(1,-1), B=E12, C=E21.
        rep = (np.diag([1.0, -1.0]).astype(complex), _unit(0, 1, 2), _unit(1, 0, 2))
        brackets = {(0, 1): {1: 2.0}, (0, 2): {2: -2.0}, (1, 2): {0: 1.0}}
    elif tag == "su2":
        # [A,B]=2C, [B,C]=2A, [C,A]=2B.
        rep = (
            np.array([[1j, 0], [0, -1j]]),
            np.array([[0, 1], [-1, 0]], dtype=complex),
            np.array([[0, 1j], [1j, 0]]),
        )
        brackets = {(0, 1): {2: 2.0}, (1, 2): {0: 2.0}, (0, 2): {1: -2.0}}
    elif tag == "heis":
        rep = (_unit(0, 1, 3), _unit(1, 2, 3), _unit(0, 2, 3))
        brackets = {(0, 1): {2: 1.0}}
    elif tag == "e2":
        # A, B translations, C rotation: [A,C]=-B, [B,C]=A.
        rep = (_unit(0, 2, 3), _unit(1, 2, 3), _unit(1, 0, 3) - _unit(0, 1, 3))
        brackets = {(0, 2): {1: -1.0}, (1, 2): {0: 1.0}}
    else:
        raise UnknownTag(f"Unknown group tag {tag!r}; expected one of {', '.join(TAGS)}.")
    return construct_algebra(_structure(brackets), matrix_rep=rep, name=tag)


def canonical_line(tag: str, t: float = 0.0) -> ComplexLine:
    t = float(t)
    if tag == "sl2r":
        if t == 0.0 or t == -1.0:
            raise SingularParameter(f"sl2r family is singular at t={t}.")
        return ComplexLine.from_vector([1j * (1 + t) / 2, t, 1.0])
    if tag == "su2":
        if t == 0.0:
            raise SingularParameter("su2 family is singular at t=0.")
        # [[0, t-1], [t+1, 0]] = -B - itC
        return ComplexLine.from_vector([0.0, -1.0, -1j * t])
    if tag == "heis":
        return ComplexLine.from_vector([1.0, 1j, 0.0])
    if tag == "e2":
        return ComplexLine.from_vector([1.0, 0.0, 1j])
    raise UnknownTag(f"Unknown group tag {tag!r}; expected one of {', '.join(TAGS)}.")


# ------------------------
# Root pairs and distances
# ------------------------


@dataclass(frozen=True)
class RootPair:
    first: np.ndarray
    second: np.ndarray
    double: bool

    def affine(self) -> list[complex | None]:
        out: list[complex | None] = []
        for point in (self.first, self.second):
            out.append(None if abs(point[1]) < 1e-14 else complex(point[0] / point[1]))
        return out

    def to_payload(self) -> dict[str, Any]:
        return {
            "homogeneous": [encode_array(self.first), encode_array(self.second)],
            "affine": [None if z is None else encode_complex(z) for z in self.affine()],
            "double": self.double,
        }


def _sort_key(point: np.ndarray) -> tuple[int, float, float]:
    if abs(point[1]) < 1e-14:
        return (1, 0.0, 0.0)
    z = point[0] / point[1]
    return (0, round(float(z.real), 12), round(float(z.imag), 12))


def sl2_entries(line: ComplexLine, alg: LieAlgebra3 | None = None) -> np.ndarray:
    """(a, b, c) with L = [[a, b], [c, -a]] in sl2(C)."""
    vec = line.representative
    if alg is None or alg.rep_size != 2:
        return vec
    mat = rep_matrix(alg, vec)
    return np.array([mat[0, 0], mat[0, 1], mat[1, 0]])


def root_pair(
    line: ComplexLine,
    alg: LieAlgebra3 | None = None,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> RootPair:
    """Homogeneous zeros [z : w] of c z^2 - 2 a z w - b w^2."""
    a, b, c = sl2_entries(line, alg)
    if abs(a) == 0 and abs(b) == 0 and abs(c) == 0:
        raise ZeroLine("The zero matrix has no root pair.")
    discriminant = a * a + b * c
    if abs(discriminant) <= tolerances.exact_tol:
        # Rounding-level discriminants are double roots.
        discriminant = 0.0
    root = np.sqrt(discriminant)

    points = []
    for sign in (1.0, -1.0):
        # [a + s*root : c] and [-b : a - s*root] are the same point; keep the larger one.
        first = np.array([a + sign * root, c])
        second = np.array([-b, a - sign * root])
        chosen = first if np.linalg.norm(first) >= np.linalg.norm(second) else second
        points.append(normalize_projective(chosen)[0])

    points.sort(key=_sort_key)
    chordal = chordal_distance(points[0], points[1])
    return RootPair(first=points[0], second=points[1], double=chordal <= tolerances.projective_tol)


def poincare_distance(
    z: complex,
    w: complex,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> float:
    z, w = complex(z), complex(w)
    band = tolerances.half_plane_band
    if abs(z.imag) <= band or abs(w.imag) <= band or z.imag * w.imag < 0:
        raise NotSameHalfPlane(f"{z} and {w} are not in the same open half-plane.")
    # arccosh(1 + |z-w|^2 / (2 Im z Im w)), written to stay accurate near 0.
    near = abs(z - w)
    far = abs(z - np.conj(w))
    return float(math.log((far + near) / (far - near)))


def _poincare_ratio(z: complex, w: complex) -> float:
    """exp(-d(z, w)) for z, w in the same half-plane."""
    near = abs(z - w)
    far = abs(z - np.conj(w))
    return float((far - near) / (far + near))


def moebius(g: Any, z: complex) -> complex:
    g = np.asarray(g)
    return complex((g[0, 0] * z + g[0, 1]) / (g[1, 0] * z + g[1, 1]))


def stereographic_inverse(point: Any) -> np.ndarray:
    """Unit vector of a point of CP^1: z -> (2z, 1 - |z|^2) / (1 + |z|^2), infinity -> south pole."""
    arr = np.asarray(point, dtype=complex).reshape(-1)
    if arr.shape == (1,):
        arr = np.array([arr[0], 1.0])
    p, q = arr
    cross = p * np.conj(q)
    norm = abs(p) ** 2 + abs(q) ** 2
    return np.array([2 * cross.real, 2 * cross.imag, abs(q) ** 2 - abs(p) ** 2]) / norm


def spherical_distance(p: Any, q: Any) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return float(math.atan2(np.linalg.norm(np.cross(p, q)), float(np.dot(p, q))))


# ------------------------
# Classification
# ------------------------


class GeometricType(str, Enum):
    ELLIPTIC = "Elliptic"
    HYPERBOLIC = "Hyperbolic"
    UNIQUE = "Unique"


@dataclass(frozen=True)
class ClassificationReport:
    regularity: Regularity
    group: str | None
    type: GeometricType | None
    root_pair: RootPair | None
    distance_invariant: float | None
    canonical_t: float | None
    spherical: bool
    sigma: complex
    tolerance: float

    def to_payload(self) -> dict[str, Any]:
        return {
            "regularity": self.regularity.value,
            "group": self.group,
            "type": None if self.type is None else self.type.value,
            "root_pair": None if self.root_pair is None else self.root_pair.to_payload(),
            "distance_invariant": self.distance_invariant,
            "canonical_t": self.canonical_t,
            "spherical": self.spherical,
            "sigma": encode_complex(self.sigma),
            "tolerance": self.tolerance,
        }


def _classify_sl2(pair: RootPair, tolerances: ToleranceConfig) -> tuple[GeometricType, float, float]:
    z, w = pair.affine()
    band = tolerances.half_plane_band
    if z is None or w is None or abs(z.imag) <= band or abs(w.imag) <= band:
        raise RealRoots("A regular sl2r line cannot have real roots.", details=pair.to_payload())
    if z.imag * w.imag > 0:
        distance = poincare_distance(z, w, tolerances=tolerances)
        return GeometricType.ELLIPTIC, distance, _poincare_ratio(z, w)
    reflected = complex(np.conj(w))
    if abs(z - reflected) <= band:
        raise RealRoots("Conjugate root pair is the degenerate case.", details=pair.to_payload())
    distance = poincare_distance(z, reflected, tolerances=tolerances)
    return GeometricType.HYPERBOLIC, distance, -_poincare_ratio(z, reflected)


def _classify_su2(pair: RootPair) -> tuple[float, float]:
    distance = spherical_distance(stereographic_inverse(pair.first), stereographic_inverse(pair.second))
    half_cos = math.cos(distance / 2)
    if half_cos <= 0:
        raise SingularParameter("Antipodal roots correspond to a real line.")
    return distance, 1.0 / half_cos


def _predicted_margin(tag: str, canonical_t: float | None) -> float | None:
    if tag == "sl2r" and canonical_t is not None:
        return min(abs(canonical_t - value) for value in SL2_SPHERICAL_T)
    if tag == "su2" and canonical_t is not None:
        return abs(canonical_t - 1.0)
    if tag == "heis":
        return 0.0
    if tag == "e2":
        return math.inf
    return None


def classify(
    tag: str | None,
    alg: LieAlgebra3,
    line: ComplexLine,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ClassificationReport:
    report = require_regular(alg, line, tolerances=tolerances)
    verdict = sphericity(line_coframe(alg, line, tolerances=tolerances).triple, tolerances=tolerances)

    geometric_type: GeometricType | None = None
    pair: RootPair | None = None
    distance: float | None = None
    canonical_t: float | None = None

    if tag == "sl2r":
        pair = root_pair(line, alg, tolerances=tolerances)
        geometric_type, distance, canonical_t = _classify_sl2(pair, tolerances)
    elif tag == "su2":
        pair = root_pair(line, alg, tolerances=tolerances)
        distance, canonical_t = _classify_su2(pair)
        geometric_type = GeometricType.ELLIPTIC
    elif tag in ("heis", "e2"):
        geometric_type = GeometricType.UNIQUE
        distance = 0.0
    elif tag is not None:
        raise UnknownTag(f"Unknown group tag {tag!r}.")

    margin = _predicted_margin(tag or "", canonical_t)
    if margin is not None:
        predicted = margin < DECISIVE_MARGIN
        if predicted != verdict.spherical:
            decisive = (verdict.spherical and margin > DECISIVE_MARGIN) or (
                not verdict.spherical and margin < tolerances.exact_tol
            )
            if decisive:
                raise ClassificationMismatch(
                    f"Coframe says spherical={verdict.spherical} but canonical_t={canonical_t}.",
                    details={"margin": margin, "sigma": encode_complex(verdict.sigma)},
                )
            logger.warning(
                "Sphericity near a threshold: coframe %s, canonical_t %s", verdict.verdict.value, canonical_t
            )

    return ClassificationReport(
        regularity=report.verdict,
        group=tag,
        type=geometric_type,
        root_pair=pair,
        distance_invariant=distance,
        canonical_t=canonical_t,
        spherical=verdict.spherical,
        sigma=verdict.sigma,
        tolerance=verdict.threshold,
    )


# ------------------------
# Automorphisms
# ------------------------


def _adjoint_action(alg: LieAlgebra3, g: np.ndarray) -> np.ndarray:
    inverse = np.linalg.inv(g)
    columns = [rep_coordinates(alg, g @ rep @ inverse) for rep in alg.matrix_rep or ()]
    return np.column_stack(columns).real


def random_automorphism(tag: str, alg: LieAlgebra3, rng: np.random.Generator) -> np.ndarray:
    """Real 3x3 matrix acting on coordinate columns by an automorphism of the algebra."""
    if tag == "sl2r":
        generator = rng.normal(size=3)
        generator *= rng.uniform(0.0, 1.0) / np.linalg.norm(generator)
        action = _adjoint_action(alg, expm(rep_matrix(alg, generator)))
        if rng.random() < 0.5:
            # Ad diag(1, -1): outer for SL2R, z -> -z on roots.
            action = np.diag([1.0, -1.0, -1.0]) @ action
        return action
    if tag == "su2":
        generator = rng.normal(size=3)
        return _adjoint_action(alg, group_exp(alg, generator))
    if tag == "heis":
        while True:
            block = rng.normal(size=(2, 2))
            if abs(np.linalg.det(block)) > 0.2:
                break
        action = np.zeros((3, 3))
        action[:2, :2] = block
        action[2, :2] = rng.normal(size=2)
        action[2, 2] = np.linalg.det(block)
        return action
    if tag == "e2":
        p, q = rng.normal(size=2)
        epsilon = 1.0 if rng.random() < 0.5 else -1.0
        block = np.array([[p, -q], [q, p]]) if epsilon > 0 else np.array([[p, q], [q, -p]])
        shift = rng.normal(size=2)
        action = np.zeros((3, 3))
        action[:2, :2] = block
        # -epsilon * J w with J(x, y) = (-y, x)
        action[:2, 2] = -epsilon * np.array([-shift[1], shift[0]])
        action[2, 2] = epsilon
        return action
    raise UnknownTag(f"Unknown group tag {tag!r}.")


def apply_automorphism(action: Any, line: ComplexLine) -> ComplexLine:
    return ComplexLine.from_vector(np.asarray(action, dtype=complex) @ line.vector)


def legal_parameter_sample(tag: str, rng: np.random.Generator) -> float:
    if tag == "sl2r":
        magnitude = rng.uniform(0.01, 0.99)
        return float(magnitude if rng.random() < 0.5 else -magnitude)
    if tag == "su2":
        return float(rng.uniform(1.0, 20.0))
    if tag in ("heis", "e2"):
        return 0.0
    raise UnknownTag(f"Unknown group tag {tag!r}.")


# ------------------------
# Spherical parameters
# ------------------------

DEFAULT_SCAN = {
    "sl2r": ((-1.0 + 1e-3, -1e-3), (1e-3, 1.05)),
    "su2": ((0.95, 20.0),),
}
SCAN_REFERENCE_T = {"sl2r": 0.5, "su2": 2.0}
DERIVATIVE_STEP = 1e-5


def family_sigma(
    tag: str,
    t: float,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> complex:
    """Sphericity scalar of the canonical line in the gauge fixed by its representative."""
    alg = builtin_algebra(tag)
    data = line_coframe(alg, canonical_line(tag, t), tolerances=tolerances)
    return sphericity(data.triple, tolerances=tolerances).sigma


def _in_canonical_range(tag: str, t: float, slack: float) -> bool:
    if tag == "sl2r":
        return (-1.0 < t < -slack) or (slack < t <= 1.0 + slack)
    if tag == "su2":
        return 1.0 - slack <= t
    return True


def spherical_parameters(
    tag: str,
    intervals: Sequence[tuple[float, float]] | None = None,
    *,
    grid: int = 601,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> list[float]:
    """Zeros of sigma along the canonical family, located to about 1e-11."""
    if tag not in SCAN_REFERENCE_T:
        raise UnknownTag(f"No one-parameter family for {tag!r}.")
    reference = family_sigma(tag, SCAN_REFERENCE_T[tag], tolerances=tolerances)

    def projected(t: float) -> float:
        value = family_sigma(tag, t, tolerances=tolerances)
        return float((value * np.conj(reference)).real / abs(reference))

    def slope(t: float) -> float:
        return (projected(t + DERIVATIVE_STEP) - projected(t - DERIVATIVE_STEP)) / (2 * DERIVATIVE_STEP)

    roots: list[float] = []
    for low, high in intervals or DEFAULT_SCAN[tag]:
        ts = np.linspace(low, high, grid)
        values = np.array([projected(t) for t in ts])
        peak = float(np.max(np.abs(values)))
        for i in range(len(ts) - 1):
            if values[i] == 0.0:
                roots.append(float(ts[i]))
            elif values[i] * values[i + 1] < 0:
                roots.append(float(brentq(projected, ts[i], ts[i + 1], xtol=1e-13)))
        # Even-order zeros touch without crossing; refine them on the derivative.
        for i in range(1, len(ts) - 1):
            here = abs(values[i])
            if here <= abs(values[i - 1]) and here <= abs(values[i + 1]) and here < 1e-3 * peak:
                if values[i - 1] * values[i + 1] < 0:
                    continue
                low_slope, high_slope = slope(ts[i - 1]), slope(ts[i + 1])
                if low_slope * high_slope >= 0:
                    continue
                candidate = float(brentq(slope, ts[i - 1], ts[i + 1], xtol=1e-13))
                if abs(projected(candidate)) < tolerances.sphericity_rel_tol * max(1.0, peak):
                    roots.append(candidate)

    slack = 1e-9
    found = sorted(t for t in roots if _in_canonical_range(tag, t, slack))
    merged: list[float] = []
    for t in found:
        if not merged or abs(t - merged[-1]) > 1e-7:
            merged.append(t)
    logger.debug("spherical_parameters(%s) -> %s", tag, merged)
    return merged
