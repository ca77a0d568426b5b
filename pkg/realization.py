"""Concrete realizations: CR maps, adjoint orbits in P(g_C), model quadrics, the Heisenberg embedding."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
from scipy.linalg import expm, null_space

from algebra_core import LieAlgebra3, adjoint_matrix, group_exp, rep_coordinates, rep_matrix
from cr_config import DEFAULT_TOLERANCES, ToleranceConfig
from cr_errors import (
    ChartUndefined,
    InvalidRequest,
    NoRepresentation,
    NotAHomomorphism,
    UnknownTag,
)
from cr_formats import encode_array, encode_complex
from cr_line import ComplexLine, chordal_distance, normalize_projective, require_regular

logger = logging.getLogger(__name__)

MODELS = ("sl2_elliptic_spherical", "heis", "e2", "su2_sphere")
ORBIT_RADIUS = 3.0
CHART_FLOOR = 1e-12

# The hermitian form |Z2|^2 + i(Z3 conj(Z1) - Z1 conj(Z3)) as v^H H v.
HEISENBERG_FORM = np.array([[0, 0, 1j], [0, 1, 0], [-1j, 0, 0]])


@dataclass(frozen=True)
class OrbitSample:
    params: list[list[float]]
    points: np.ndarray
    chart: list[tuple[complex, complex] | None]
    model: str | None
    invariant_mu: float | None
    mu_spread: float | None
    residual_max: float
    residual_mean: float

    @property
    def samples(self) -> int:
        return len(self.params)

    def to_payload(self, *, include_points: bool = False) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "model": self.model,
            "samples": self.samples,
            "mu": self.invariant_mu,
            "mu_spread": self.mu_spread,
            "max_residual": self.residual_max,
            "mean_residual": self.residual_mean,
        }
        if include_points:
            payload["points"] = encode_array(self.points)
        return payload


# ------------------------
# CR-map criterion
# ------------------------


def homomorphism_residual(alg: LieAlgebra3, rep_action: Sequence[Any]) -> float:
    mats = [np.asarray(mat, dtype=complex) for mat in rep_action]
    if len(mats) != 3:
        raise InvalidRequest("rep_action needs one matrix per basis vector.")
    worst = 0.0
    for i, j in itertools.combinations(range(3), 2):
        commutator = mats[i] @ mats[j] - mats[j] @ mats[i]
        expected = sum(alg.structure[k, i, j] * mats[k] for k in range(3))
        worst = max(worst, float(np.max(np.abs(commutator - expected))))
    return worst


def cr_map_residual(
    alg: LieAlgebra3,
    line: ComplexLine,
    rep_action: Sequence[Any],
    u: Any,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> float:
    """||rho'(L) u|| / ||u||; zero certifies that g -> rho(g) u is a CR map."""
    defect = homomorphism_residual(alg, rep_action)
    if defect > tolerances.residual_tol:
        raise NotAHomomorphism(
            f"rep_action does not respect the brackets (defect {defect:.3e}).",
            details={"defect": defect},
        )
    vec = np.asarray(u, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise InvalidRequest("The vector u must be nonzero.")
    L = line.representative
    image = sum(L[k] * np.asarray(rep_action[k], dtype=complex) for k in range(3)) @ vec
    return float(np.linalg.norm(image) / norm)


def kernel_vector(matrix: Any) -> np.ndarray:
    basis = null_space(np.asarray(matrix, dtype=complex))
    if basis.shape[1] == 0:
        raise InvalidRequest("Matrix has trivial kernel.")
    return normalize_projective(basis[:, 0])[0]


# ------------------------
# Adjoint orbits
# ------------------------


def _sample_generators(rng: np.random.Generator, samples: int) -> list[np.ndarray]:
    out = []
    for _ in range(samples):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        out.append(direction * ORBIT_RADIUS * rng.uniform(0.0, 1.0) ** (1 / 3))
    return out


def orbit_mu(tag: str | None, matrix: np.ndarray, tolerances: ToleranceConfig) -> float | None:
    if tag not in ("sl2r", "su2"):
        return None
    square = abs(np.trace(matrix @ matrix))
    if square <= tolerances.exact_tol * max(1.0, float(np.linalg.norm(matrix)) ** 2):
        return None
    # Real forms: conjugation is entrywise on sl2R, conjugate transpose on su2.
    partner = np.conj(matrix) if tag == "sl2r" else matrix.conj().T
    return float(np.trace(matrix @ partner).real / square)


def _chart(point: np.ndarray) -> tuple[complex, complex] | None:
    if abs(point[2]) < CHART_FLOOR:
        return None
    return complex(point[0] / point[2]), complex(point[1] / point[2])


def _orbit_residual(tag: str | None, point: np.ndarray, base: np.ndarray) -> float:
    if tag == "heis":
        # Ad_g only moves the central component, so the (A : B) ratio is fixed.
        if abs(point[0]) < CHART_FLOOR:
            raise ChartUndefined("Heisenberg orbit point has vanishing A-coordinate.")
        return float(abs(point[1] / point[0] - base[1] / base[0]))
    if tag == "e2":
        return quadric_residual("e2", point)
    return 0.0


def _structure_residual(
    alg: LieAlgebra3, generator: np.ndarray, point: np.ndarray, base: np.ndarray
) -> float:
    """Distance from the represented orbit point to exp(ad X) L computed from the brackets alone."""
    expected = expm(adjoint_matrix(alg, generator)) @ base
    return chordal_distance(point, normalize_projective(expected)[0])


def adjoint_orbit_sample(
    alg: LieAlgebra3,
    line: ComplexLine,
    params: Sequence[Any] | None = None,
    *,
    seed: int = 42,
    samples: int = 100,
    tag: str | None = None,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> OrbitSample:
    """Points [Ad_g L] for g = exp(X), X drawn from the ball of radius 3 unless given.

    Only an explicit group tag selects a model orbit equation; untagged algebras are
    checked against exp(ad X) built from their structure constants.
    """
    if not alg.has_rep:
        raise NoRepresentation(f"Algebra {alg.name or '<anonymous>'} has no matrix representation.")
    require_regular(alg, line, tolerances=tolerances)
    if params is None:
        if samples < 1:
            raise InvalidRequest("samples must be at least 1.")
        generators = _sample_generators(np.random.default_rng(seed), samples)
    else:
        generators = [np.asarray(item, dtype=float).reshape(3) for item in params]

    base_matrix = rep_matrix(alg, line.representative)
    base_mu = orbit_mu(tag, base_matrix, tolerances)
    points, charts, mus, residuals = [], [], [], []
    for generator in generators:
        g = group_exp(alg, generator)
        moved = g @ base_matrix @ np.linalg.inv(g)
        point = normalize_projective(rep_coordinates(alg, moved, tolerances=tolerances))[0]
        points.append(point)
        charts.append(_chart(point))
        mus.append(orbit_mu(tag, rep_matrix(alg, point), tolerances))
        if tag is None:
            residual = _structure_residual(alg, generator, point, line.representative)
        else:
            residual = _orbit_residual(tag, point, line.representative)
        if base_mu is not None and mus[-1] is not None:
            residual = max(residual, abs(mus[-1] - base_mu) / max(1.0, base_mu))
        residuals.append(residual)

    mu_spread = None
    if base_mu is not None and all(mu is not None for mu in mus):
        values = np.array(mus, dtype=float)
        mu_spread = float((values.max() - values.min()) / max(1.0, abs(base_mu)))

    logger.debug("Orbit sample %s: %d points, mu=%s spread=%s", tag, len(points), base_mu, mu_spread)
    return OrbitSample(
        params=[generator.tolist() for generator in generators],
        points=np.array(points),
        chart=charts,
        model=tag if tag in MODELS else None,
        invariant_mu=base_mu,
        mu_spread=mu_spread,
        residual_max=float(max(residuals)),
        residual_mean=float(np.mean(residuals)),
    )


def local_injectivity_margin(
    alg: LieAlgebra3,
    line: ComplexLine,
    *,
    radius: float = 0.05,
    samples: int = 24,
    seed: int = 42,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> float:
    """Smallest ratio of projective distance to parameter distance over nearby pairs."""
    rng = np.random.default_rng(seed)
    generators = [item * radius / ORBIT_RADIUS for item in _sample_generators(rng, samples)]
    orbit = adjoint_orbit_sample(alg, line, generators, tolerances=tolerances)
    margin = np.inf
    for i, j in itertools.combinations(range(samples), 2):
        step = float(np.linalg.norm(generators[i] - generators[j]))
        if step == 0.0:
            continue
        margin = min(margin, chordal_distance(orbit.points[i], orbit.points[j]) / step)
    return float(margin)


# ------------------------
# Model quadrics
# ------------------------


def _pair(point: Any) -> np.ndarray:
    arr = np.asarray(point, dtype=complex).reshape(-1)
    if arr.shape != (2,):
        raise InvalidRequest(f"Expected an affine pair, got shape {arr.shape}.")
    return arr


def heisenberg_display(vector: Any) -> tuple[complex, complex]:
    """(Z1 : Z2 : Z3) -> (-2 Z1/Z3, Z2/Z3), the chart where Im z1 = |z2|^2."""
    Z = np.asarray(vector, dtype=complex).reshape(-1)
    if abs(Z[2]) < CHART_FLOOR:
        raise ChartUndefined("Heisenberg chart needs Z3 != 0.")
    return complex(-2 * Z[0] / Z[2]), complex(Z[1] / Z[2])


def quadric_residual(model: str, point: Any) -> float:
    arr = np.asarray(point, dtype=complex).reshape(-1)
    if model == "sl2_elliptic_spherical":
        z1, z2 = _pair(arr)
        return float(abs((z1 * np.conj(z2)).imag - 1.0))
    if model == "su2_sphere":
        z1, z2 = _pair(arr)
        return float(abs(abs(z1) ** 2 + abs(z2) ** 2 - 1.0))
    if model == "heis":
        z1, z2 = heisenberg_display(arr) if arr.shape == (3,) else _pair(arr)
        return float(abs(z1.imag - abs(z2) ** 2))
    if model == "e2":
        if arr.shape == (3,):
            if abs(arr[2]) < CHART_FLOOR:
                raise ChartUndefined("e2 chart z = (a/c, b/c) needs c != 0.")
            arr = arr[:2] / arr[2]
        z1, z2 = _pair(arr)
        return float(abs(z1.imag**2 + z2.imag**2 - 1.0))
    raise UnknownTag(f"Unknown model {model!r}; expected one of {', '.join(MODELS)}.")


def fit_e2_quadric(sample: OrbitSample) -> dict[str, Any]:
    """Compare the Im and Re circle equations on e2 orbit points in the chart (a/c, b/c)."""
    charts = [item for item in sample.chart if item is not None]
    if not charts:
        raise ChartUndefined("No e2 orbit point lies in the chart c != 0.")
    im_form = max(abs(z1.imag**2 + z2.imag**2 - 1.0) for z1, z2 in charts)
    re_form = max(abs(z1.real**2 + z2.real**2 - 1.0) for z1, z2 in charts)
    fitted = "im" if im_form <= re_form else "re"
    if fitted == "im" and re_form > DEFAULT_TOLERANCES.orbit_tol:
        logger.warning(
            "e2 orbit satisfies [Im z1]^2 + [Im z2]^2 = 1, not the Re form (Re defect %.3e)", re_form
        )
    return {"fitted": fitted, "im_form_max": float(im_form), "re_form_max": float(re_form)}


def _sl2_group_sample(rng: np.random.Generator) -> np.ndarray:
    generator = rng.normal(size=3)
    generator *= ORBIT_RADIUS * rng.uniform(0.0, 1.0) / np.linalg.norm(generator)
    a, b, c = generator
    return expm(np.array([[a, b], [c, -a]]))


def _su2_group_sample(rng: np.random.Generator) -> np.ndarray:
    a, b, c = rng.normal(size=3)
    return expm(np.array([[1j * a, b + 1j * c], [-b + 1j * c, -1j * a]]))


def _vector_orbit(model: str, group_elements: list[np.ndarray], base: np.ndarray) -> OrbitSample:
    points = [g @ base for g in group_elements]
    residuals = [quadric_residual(model, point) for point in points]
    return OrbitSample(
        params=[np.asarray(g).reshape(-1).tolist() for g in group_elements],
        points=np.array(points),
        chart=[(complex(p[0]), complex(p[1])) for p in points],
        model=model,
        invariant_mu=None,
        mu_spread=None,
        residual_max=float(max(residuals)),
        residual_mean=float(np.mean(residuals)),
    )


def spherical_elliptic_orbit(*, samples: int = 100, seed: int = 42) -> OrbitSample:
    """SL2R-orbit of v = (i, 1), the CR-map vector of the t = 1 sl2r structure."""
    rng = np.random.default_rng(seed)
    elements = [np.eye(2)] + [_sl2_group_sample(rng) for _ in range(samples - 1)]
    return _vector_orbit("sl2_elliptic_spherical", elements, np.array([1j, 1.0]))


def su2_sphere_orbit(u: Any = None, *, samples: int = 100, seed: int = 42) -> OrbitSample:
    """SU2-orbit of the kernel vector of the t = 1 su2 line, on the unit sphere of C^2."""
    if u is None:
        from group_atlas import builtin_algebra, canonical_line

        u = kernel_vector(rep_matrix(builtin_algebra("su2"), canonical_line("su2", 1.0).vector))
        logger.info("su2 t=1 line annihilates %s (second coordinate axis)", np.round(u, 12))
    base = np.asarray(u, dtype=complex).reshape(-1)
    base = base / np.linalg.norm(base)
    rng = np.random.default_rng(seed)
    elements = [np.eye(2, dtype=complex)] + [_su2_group_sample(rng) for _ in range(samples - 1)]
    return _vector_orbit("su2_sphere", elements, base)


# ------------------------
# Heisenberg
# ------------------------


@dataclass(frozen=True)
class HeisenbergPoint:
    chart: tuple[complex, complex]
    homogeneous: np.ndarray
    form_value: float
    display: tuple[complex, complex]
    law_coordinates: tuple[complex, complex]

    def to_payload(self) -> dict[str, Any]:
        return {
            "chart": [encode_complex(value) for value in self.chart],
            "form_value": self.form_value,
            "display": [encode_complex(value) for value in self.display],
            "law_coordinates": [encode_complex(value) for value in self.law_coordinates],
        }


def heisenberg_product(g: Sequence[float], h: Sequence[float]) -> tuple[float, float, float]:
    x, y, z = g
    u, v, w = h
    return x + u, y + v, z + w + x * v


def heisenberg_rep(x: float, y: float, z: float) -> np.ndarray:
    return np.array(
        [
            [1.0, -y - 1j * x, 2 * z - x * y - 0.5j * (x * x + y * y)],
            [0.0, 1.0, x + 1j * y],
            [0.0, 0.0, 1.0],
        ]
    )


def heisenberg_rep_derivative(a: complex, b: complex, c: complex) -> np.ndarray:
    return np.array(
        [
            [0.0, -b - 1j * a, 2 * c],
            [0.0, 0.0, a + 1j * b],
            [0.0, 0.0, 0.0],
        ],
        dtype=complex,
    )


def heisenberg_rep_action() -> list[np.ndarray]:
    return [heisenberg_rep_derivative(*row) for row in np.eye(3)]


def hermitian_form_residual(vector: Any) -> float:
    Z = np.asarray(vector, dtype=complex).reshape(-1)
    return float(np.vdot(Z, HEISENBERG_FORM @ Z).real)


def heisenberg_group_law(z: Sequence[complex], w: Sequence[complex]) -> tuple[complex, complex]:
    """(z1 + w1, z2 + w2 + 2i z1 conj(w1))."""
    return complex(z[0] + w[0]), complex(z[1] + w[1] + 2j * z[0] * np.conj(w[0]))


def heisenberg_embedding(x: float, y: float, z: float) -> HeisenbergPoint:
    """[rho(x, y, z) e3] on the null cone of the hermitian form.

    law_coordinates are (Z2, -2 Z1); they satisfy
    group_law(P(h), P(g)) == P(g h), so the law composes in reverse order.
    """
    column = heisenberg_rep(x, y, z)[:, 2]
    chart = (complex(column[0]), complex(column[1]))
    display = heisenberg_display(column)
    return HeisenbergPoint(
        chart=chart,
        homogeneous=column,
        form_value=hermitian_form_residual(column),
        display=display,
        law_coordinates=(chart[1], -2 * chart[0]),
    )
