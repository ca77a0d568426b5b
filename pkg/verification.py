"""The verification battery: every acceptance criterion and worked example as a named check."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from algebra_core import (
    adjoint_matrix,
    bracket,
    construct_algebra,
    group_exp,
    killing_form,
    killing_matrix,
    rep_matrix,
)
from coframe_engine import (
    StructureTriple,
    adapted_coframe,
    cartan_data,
    d_coefficients,
    gauge_coframe,
    gauge_transform,
    line_coframe,
    match_gauge,
    sphericity,
    well_adapt,
)
from cr_config import CRSettings
from cr_errors import CRGeometryError, DegenerateContact, JacobiViolation
from cr_line import ComplexLine, Regularity, classify_line, contact_frame
from group_atlas import (
    SL2_SPHERICAL_T,
    apply_automorphism,
    builtin_algebra,
    canonical_line,
    classify,
    family_sigma,
    legal_parameter_sample,
    poincare_distance,
    random_automorphism,
    root_pair,
    spherical_parameters,
)
from realization import (
    adjoint_orbit_sample,
    cr_map_residual,
    fit_e2_quadric,
    heisenberg_embedding,
    heisenberg_group_law,
    heisenberg_product,
    heisenberg_rep,
    heisenberg_rep_action,
    HEISENBERG_FORM,
    kernel_vector,
    local_injectivity_margin,
    quadric_residual,
    spherical_elliptic_orbit,
    su2_sphere_orbit,
)

logger = logging.getLogger(__name__)

EXACT = 1e-12
ROOT_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def to_payload(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "value": self.value,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


def _measured(name: str, value: float, tolerance: float, detail: str = "") -> CheckResult:
    value = float(value)
    return CheckResult(name, bool(value <= tolerance), value, tolerance, detail)


def _flagged(name: str, failures: list[str], tolerance: float, value: float = 0.0) -> CheckResult:
    return CheckResult(name, not failures, float(value), tolerance, "; ".join(failures))


def _random_triple(rng: np.random.Generator) -> StructureTriple:
    beta = rng.uniform(-1.0, 1.0)
    b = 1j * beta
    if rng.random() < 0.2:
        return StructureTriple(0.0, b, complex(*rng.uniform(-1.0, 1.0, size=2)))
    a = complex(*rng.uniform(-1.0, 1.0, size=2))
    # conj(a) c = a b fixes c once a != 0.
    return StructureTriple(a, b, a * b / np.conj(a))


def _canonical_data(tag: str, t: float, settings: CRSettings):
    return line_coframe(builtin_algebra(tag), canonical_line(tag, t), tolerances=settings.tolerances)


# ------------------------
# Acceptance criteria
# ------------------------


def check_sl2r_spherical_parameters(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    roots = spherical_parameters("sl2r", tolerances=tol)
    failures = []
    if len(roots) != len(SL2_SPHERICAL_T):
        failures.append(f"found {roots}")
        error = math.inf
    else:
        error = max(abs(found - expected) for found, expected in zip(roots, SL2_SPHERICAL_T))
    outside = abs(family_sigma("sl2r", -3.0 - 2.0 * math.sqrt(2.0), tolerances=tol))
    if outside > tol.sphericity_rel_tol * 100:
        failures.append(f"sigma(-3-2sqrt2) = {outside:.3e}")
    if error > ROOT_TOL:
        failures.append(f"root error {error:.3e}")
    return _flagged("sl2r_spherical_parameters", failures, ROOT_TOL, error)


def check_su2_spherical_parameters(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    roots = [t for t in spherical_parameters("su2", tolerances=tol) if t <= 20.0]
    failures = []
    error = abs(roots[0] - 1.0) if len(roots) == 1 else math.inf
    if len(roots) != 1 or error > ROOT_TOL:
        failures.append(f"found {roots}")
    at_minus_one = abs(family_sigma("su2", -1.0, tolerances=tol))
    if at_minus_one > tol.sphericity_rel_tol * 100:
        failures.append(f"sigma(-1) = {at_minus_one:.3e}")
    return _flagged("su2_spherical_parameters", failures, ROOT_TOL, error)


def check_heisenberg_and_e2_triples(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    failures = []
    heis = _canonical_data("heis", 0.0, settings).triple
    if abs(heis.c) > EXACT or not sphericity(heis, tolerances=tol).spherical:
        failures.append(f"heis triple {heis.values}")
    e2 = _canonical_data("e2", 0.0, settings).triple
    error = max(abs(e2.a), abs(e2.b - 0.5j), abs(e2.c + 0.5j))
    verdict = sphericity(e2, tolerances=tol)
    error = max(error, abs(verdict.sigma - 2.25j))
    if verdict.spherical:
        failures.append("e2 reported spherical")
    if error > EXACT:
        failures.append(f"e2 triple error {error:.3e}")
    return _flagged("heisenberg_and_e2_triples", failures, EXACT, error)


def check_structure_equations(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    rng = np.random.default_rng(settings.default_seed)
    worst = 0.0
    worst_identity = 0.0
    cases: list[tuple[StructureTriple, Any]] = [
        (_random_triple(rng), None) for _ in range(2 * settings.default_samples)
    ]
    for tag, t in (("sl2r", 0.5), ("su2", 2.0), ("heis", 0.0), ("e2", 0.0)):
        data = _canonical_data(tag, t, settings)
        cases.append((data.triple, data))
    for triple, realization in cases:
        data = cartan_data(triple, realization=realization, tolerances=tol)
        worst = max(worst, *data.residual_norms, data.fifth_equation_gap)
        verdict = sphericity(triple, tolerances=tol)
        worst_identity = max(worst_identity, abs(data.r - 1j * verdict.sigma / 6))
    failures = [] if worst_identity <= EXACT * 10 else [f"r identity defect {worst_identity:.3e}"]
    if worst > tol.residual_tol:
        failures.append(f"structure residual {worst:.3e}")
    return _flagged("structure_equations", failures, tol.residual_tol, worst)


def check_gauge_invariance(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    rng = np.random.default_rng(settings.default_seed)
    cases = [("sl2r", 0.5), ("sl2r", 1.0), ("su2", 2.0), ("e2", 0.0)]
    triples = [_canonical_data(tag, t, settings).triple for tag, t in cases]
    verdicts = [sphericity(triple, tolerances=tol) for triple in triples]
    worst = 0.0
    failures = []
    for _ in range(settings.default_samples):
        rho = rng.uniform(0.0, 2 * math.pi)
        u = rng.uniform(0.5, 2.0)
        for triple, before in zip(triples, verdicts):
            after = sphericity(gauge_transform(triple, rho, u), tolerances=tol)
            worst = max(worst, abs(after.r - np.exp(2j * rho) / u**4 * before.r))
            if after.spherical != before.spherical:
                failures.append(f"verdict flipped at rho={rho:.3f}, u={u:.3f}")
    data = _canonical_data("e2", 0.0, settings)
    regauged = gauge_coframe(data, 0.7, 2.0, tolerances=tol).triple
    expected = gauge_transform(data.triple, 0.7, 2.0)
    coframe_error = max(abs(x - y) for x, y in zip(regauged.values, expected.values))
    if coframe_error > tol.residual_tol:
        failures.append(f"coframe gauge disagrees by {coframe_error:.3e}")
    if worst > tol.residual_tol:
        failures.append(f"r transform defect {worst:.3e}")
    return _flagged("gauge_invariance", failures, tol.residual_tol, worst)


def check_classification_round_trip(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    rng = np.random.default_rng(settings.default_seed)
    worst = 0.0
    worst_roots = 0.0
    for tag in ("sl2r", "su2"):
        alg = builtin_algebra(tag)
        for _ in range(settings.default_samples):
            t = legal_parameter_sample(tag, rng)
            line = canonical_line(tag, t)
            worst = max(worst, abs(classify(tag, alg, line, tolerances=tol).canonical_t - t))
            if tag == "sl2r":
                found = sorted(root_pair(line, alg).affine(), key=lambda z: z.imag)
                expected = sorted([1j, 1j * t], key=lambda z: z.imag)
                worst_roots = max(worst_roots, *(abs(x - y) for x, y in zip(found, expected)))
    failures = [] if worst_roots <= EXACT else [f"root pair error {worst_roots:.3e}"]
    if worst > ROOT_TOL:
        failures.append(f"canonical_t error {worst:.3e}")
    return _flagged("classification_round_trip", failures, ROOT_TOL, worst)


def check_automorphism_invariance(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    rng = np.random.default_rng(settings.default_seed)
    worst = 0.0
    failures = []
    lines = {"sl2r": (0.5, -0.4), "su2": (3.0,), "heis": (0.0,), "e2": (0.0,)}
    for tag, params in lines.items():
        alg = builtin_algebra(tag)
        for t in params:
            line = canonical_line(tag, t)
            base = classify(tag, alg, line, tolerances=tol)
            conjugate = classify(tag, alg, line.conjugate(), tolerances=tol)
            if conjugate.type != base.type:
                failures.append(f"{tag} t={t}: conjugate line changed type")
            worst = max(worst, abs(conjugate.distance_invariant - base.distance_invariant))
            for _ in range(settings.default_samples):
                action = random_automorphism(tag, alg, rng)
                moved = classify(tag, alg, apply_automorphism(action, line), tolerances=tol)
                worst = max(worst, abs(moved.distance_invariant - base.distance_invariant))
                if moved.type != base.type or moved.spherical != base.spherical:
                    failures.append(f"{tag} t={t}: {moved.type} vs {base.type}")
    if worst > tol.orbit_tol:
        failures.append(f"distance drift {worst:.3e}")
    return _flagged("automorphism_invariance", failures[:5], tol.orbit_tol, worst)


def check_realization_residuals(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    samples, seed = settings.default_samples, settings.default_seed
    failures = []

    elliptic = spherical_elliptic_orbit(samples=samples, seed=seed)
    if elliptic.residual_max > 1e-10:
        failures.append(f"Im(z1 conj z2) = 1 defect {elliptic.residual_max:.3e}")

    t = 0.5
    orbit = adjoint_orbit_sample(
        builtin_algebra("sl2r"), canonical_line("sl2r", t), seed=seed, samples=samples, tag="sl2r"
    )
    direct = (1 + 6 * t + t * t) / (1 - t) ** 2
    mu_drift = abs(orbit.invariant_mu - direct) if orbit.invariant_mu is not None else math.inf
    if orbit.mu_spread is None or orbit.mu_spread > tol.orbit_tol or mu_drift > tol.orbit_tol * direct:
        failures.append(f"sl2r mu {orbit.invariant_mu} spread {orbit.mu_spread}")
    if abs(direct - 17.0) > EXACT:
        failures.append("sl2r mu oracle is not 17")

    rng = np.random.default_rng(seed)
    heis_worst = 0.0
    for _ in range(samples):
        g = tuple(rng.uniform(-1.0, 1.0, size=3))
        h = tuple(rng.uniform(-1.0, 1.0, size=3))
        point_g, point_h = heisenberg_embedding(*g), heisenberg_embedding(*h)
        composed = heisenberg_embedding(*heisenberg_product(g, h))
        law = heisenberg_group_law(point_h.law_coordinates, point_g.law_coordinates)
        heis_worst = max(
            heis_worst,
            abs(point_g.form_value),
            quadric_residual("heis", point_g.display),
            max(abs(x - y) for x, y in zip(law, composed.law_coordinates)),
        )
    if heis_worst > EXACT:
        failures.append(f"Heisenberg embedding defect {heis_worst:.3e}")

    e2_sample = adjoint_orbit_sample(
        builtin_algebra("e2"), canonical_line("e2"), seed=seed, samples=samples, tag="e2"
    )
    fit = fit_e2_quadric(e2_sample)
    if fit["fitted"] != "im" or fit["im_form_max"] > 1e-10:
        failures.append(f"e2 quadric {fit}")

    value = max(elliptic.residual_max, heis_worst, fit["im_form_max"])
    return _flagged("realization_residuals", failures, 1e-10, value)


def check_cr_map_certificates(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    sl2 = builtin_algebra("sl2r")
    su2 = builtin_algebra("su2")
    heis = builtin_algebra("heis")
    su2_line = canonical_line("su2", 1.0)
    residuals = [
        cr_map_residual(sl2, canonical_line("sl2r", 1.0), sl2.matrix_rep, [1j, 1.0], tolerances=tol),
        cr_map_residual(
            heis, canonical_line("heis"), heisenberg_rep_action(), [0.0, 0.0, 1.0], tolerances=tol
        ),
        cr_map_residual(
            su2, su2_line, su2.matrix_rep, kernel_vector(rep_matrix(su2, su2_line.vector)), tolerances=tol
        ),
    ]
    return _measured("cr_map_certificates", max(residuals), EXACT)


def check_negative_controls(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    failures = []
    heis = builtin_algebra("heis")
    degenerate = ComplexLine.from_vector([1.0, 0.0, 1j])
    try:
        adapted = adapted_coframe(heis, degenerate, allow_degenerate=True, tolerances=tol)
        well_adapt(heis, adapted.theta, adapted.theta1, tolerances=tol)
        failures.append("A+iC was not rejected")
    except DegenerateContact:
        pass
    try:
        construct_algebra([(0, 1, 2, 1.0), (1, 2, 1, 1.0)], tolerances=tol)
        failures.append("non-Jacobi constants accepted")
    except JacobiViolation:
        pass
    return _flagged("negative_controls", failures, 0.0)


# ------------------------
# Published examples
# ------------------------


def check_algebra_examples(settings: CRSettings) -> CheckResult:
    failures = []
    heis, e2, su2, sl2 = (builtin_algebra(tag) for tag in ("heis", "e2", "su2", "sl2r"))
    basis = np.eye(3)
    if np.max(np.abs(bracket(heis, basis[0], basis[1]) - basis[2])) > EXACT:
        failures.append("heis [A,B] != C")
    if np.max(np.abs(bracket(e2, basis[1], basis[2]) - basis[0])) > EXACT:
        failures.append("e2 [B,C] != A")
    if np.max(np.abs(adjoint_matrix(heis, basis[0]) @ basis[1] - basis[2])) > EXACT:
        failures.append("heis ad(A) does not send B to C")
    for x, y, z in ((0.7, 0.0, 0.0), (-1.3, 0.4, 2.0)):
        closed = np.array([[1.0, x, z + x * y / 2], [0.0, 1.0, y], [0.0, 0.0, 1.0]])
        if np.max(np.abs(group_exp(heis, [x, y, z]) - closed)) > EXACT:
            failures.append(f"heis exp({x}, {y}, {z}) differs from the closed form")
    if np.linalg.matrix_rank(killing_matrix(e2)) >= 3:
        failures.append("e2 Killing form is nondegenerate")
    if np.max(np.linalg.eigvalsh(killing_matrix(su2))) >= 0:
        failures.append("su2 Killing form is not negative definite")
    if abs(killing_form(sl2, basis[0], basis[0]) - 8.0) > EXACT:
        failures.append("sl2r Killing(A, A) != 8")
    return _flagged("algebra_examples", failures, EXACT)


def check_line_examples(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    heis, e2 = builtin_algebra("heis"), builtin_algebra("e2")
    failures = []
    expected = {
        Regularity.REGULAR: (heis, [1.0, 1j, 0.0]),
        Regularity.DEGENERATE: (heis, [1.0, 0.0, 1j]),
        Regularity.REAL: (heis, [1 + 1j, 0.0, 0.0]),
    }
    for verdict, (alg, vector) in expected.items():
        found = classify_line(alg, ComplexLine.from_vector(vector), tolerances=tol).verdict
        if found is not verdict:
            failures.append(f"{vector}: {found.value}")
    if abs(abs(contact_frame(heis, canonical_line("heis"), tolerances=tol).plane_normal[2]) - 1.0) > EXACT:
        failures.append("heis contact plane is not {c=0}")
    if abs(abs(contact_frame(e2, canonical_line("e2"), tolerances=tol).plane_normal[1]) - 1.0) > EXACT:
        failures.append("e2 contact plane is not {b=0}")
    return _flagged("line_examples", failures, EXACT)


def check_coframe_examples(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    failures = []
    su2, e2, sl2 = builtin_algebra("su2"), builtin_algebra("e2"), builtin_algebra("sl2r")
    frame = np.eye(3)
    if np.max(np.abs(d_coefficients(su2, frame[0], frame) - [0, 0, -2])) > EXACT:
        failures.append("su2 d(alpha) != -2 beta^gamma")
    if np.max(np.abs(d_coefficients(e2, frame[2], frame))) > EXACT:
        failures.append("e2 d(gamma) != 0")

    t = 0.3
    theta = adapted_coframe(sl2, canonical_line("sl2r", t), tolerances=tol).theta
    if np.linalg.norm(np.cross(theta, [0.0, 1.0, -t])) > EXACT * 10:
        failures.append("sl2r theta is not proportional to beta - t gamma")

    for t in (0.5, 2.0, 3.0):
        natural = _canonical_data("su2", t, settings).triple
        expected = StructureTriple(0.0, 1j * (t + 1 / t), 1j * (1 / t - t))
        try:
            match_gauge(natural, expected, tolerances=tol)
        except CRGeometryError as exc:
            failures.append(f"su2 t={t}: {exc}")
    for t in (0.5, -0.5, 0.25):
        natural = _canonical_data("sl2r", t, settings).triple
        denominator = 4 * abs(t) * (1 + t)
        expected = StructureTriple(
            0.0, -1j * (1 + 6 * t + t * t) / denominator, -1j * (1 - t) ** 2 / denominator
        )
        try:
            match_gauge(natural, expected, tolerances=tol)
        except CRGeometryError as exc:
            failures.append(f"sl2r t={t}: {exc}")

    e2_triple = StructureTriple(0.0, 0.5j, -0.5j)
    r_values = (
        cartan_data(e2_triple, tolerances=tol).r,
        cartan_data(StructureTriple(0.0, -2.5j, 1.5j), tolerances=tol).r,
    )
    if abs(r_values[0] + 3 / 8) > EXACT or abs(r_values[1] + 45 / 8) > EXACT:
        failures.append(f"r examples {r_values}")
    moved = gauge_transform(e2_triple, 0.0, 2.0)
    if max(abs(moved.b - 0.125j), abs(moved.c + 0.125j)) > EXACT:
        failures.append("e2 gauge u=2")
    if not sphericity(_canonical_data("sl2r", 1.0, settings).triple, tolerances=tol).spherical:
        failures.append("sl2r t=1 not spherical")
    return _flagged("coframe_examples", failures, EXACT)


def check_atlas_examples(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    failures = []
    sl2, su2 = builtin_algebra("sl2r"), builtin_algebra("su2")

    half = classify("sl2r", sl2, canonical_line("sl2r", 0.5), tolerances=tol)
    half_drift = max(abs(half.distance_invariant - math.log(2)), abs(half.canonical_t - 0.5))
    if half.type.value != "Elliptic" or half_drift > ROOT_TOL or half.spherical:
        failures.append(f"sl2r t=1/2: {half.to_payload()}")
    special = classify("sl2r", sl2, canonical_line("sl2r", SL2_SPHERICAL_T[0]), tolerances=tol)
    if special.type.value != "Hyperbolic" or not special.spherical:
        failures.append("sl2r t=-3+2sqrt2 not Hyperbolic spherical")
    one = classify("su2", su2, canonical_line("su2", 1.0), tolerances=tol)
    if one.distance_invariant > ROOT_TOL or abs(one.canonical_t - 1.0) > ROOT_TOL or not one.spherical:
        failures.append("su2 t=1")

    if not root_pair(canonical_line("sl2r", 1.0), sl2, tolerances=tol).double:
        failures.append("sl2r t=1 root pair is not double")
    su2_pair = root_pair(canonical_line("su2", 1.0), su2, tolerances=tol)
    if not su2_pair.double or abs(su2_pair.affine()[0]) > EXACT:
        failures.append("su2 t=1 root pair is not {0, 0}")
    if root_pair(ComplexLine.from_vector([0, 1, 0])).affine() != [None, None]:
        failures.append("b=1 roots are not {inf, inf}")

    distances = (poincare_distance(1j, 1j), poincare_distance(1j, 1j * math.exp(-1)))
    if abs(distances[0]) > EXACT or abs(distances[1] - 1.0) > EXACT:
        failures.append(f"Poincare examples {distances}")
    return _flagged("atlas_examples", failures, ROOT_TOL)


def check_realization_examples(settings: CRSettings) -> CheckResult:
    tol = settings.tolerances
    failures = []
    sl2 = builtin_algebra("sl2r")
    null_orbit = adjoint_orbit_sample(
        sl2, canonical_line("sl2r", SL2_SPHERICAL_T[0]), params=[np.zeros(3)], tag="sl2r"
    )
    if null_orbit.invariant_mu is None or abs(null_orbit.invariant_mu) > EXACT * 100:
        failures.append(f"mu at -3+2sqrt2 is {null_orbit.invariant_mu}")
    for tag, t in (("sl2r", 0.5), ("su2", 2.0), ("heis", 0.0), ("e2", 0.0)):
        line = canonical_line(tag, t)
        at_identity = adjoint_orbit_sample(builtin_algebra(tag), line, params=[np.zeros(3)], tag=tag)
        if abs(abs(np.vdot(at_identity.points[0], line.representative)) - 1.0) > EXACT:
            failures.append(f"{tag} orbit at e differs from [L]")

    sphere = su2_sphere_orbit(samples=settings.default_samples, seed=settings.default_seed)
    if sphere.residual_max > 1e-10:
        failures.append("su2 sphere orbit")
    if quadric_residual("sl2_elliptic_spherical", [1j, 1.0]) > EXACT:
        failures.append("sl2 quadric at (i, 1)")
    if quadric_residual("e2", [1.0, 0.0, 1j]) > EXACT:
        failures.append("e2 quadric at A+iC")

    origin = heisenberg_embedding(0.0, 0.0, 0.0)
    unit = heisenberg_embedding(1.0, 0.0, 0.0)
    if max(abs(origin.chart[0]), abs(origin.chart[1]), abs(origin.form_value)) > EXACT:
        failures.append("heis origin")
    if abs(unit.chart[0] + 0.5j) > EXACT or abs(unit.chart[1] - 1.0) > EXACT or abs(unit.form_value) > EXACT:
        failures.append("heis (1,0,0)")

    rng = np.random.default_rng(settings.default_seed)
    worst = 0.0
    for _ in range(20):
        g, h = rng.uniform(-2, 2, size=3), rng.uniform(-2, 2, size=3)
        product_defect = heisenberg_rep(*g) @ heisenberg_rep(*h) - heisenberg_rep(*heisenberg_product(g, h))
        worst = max(worst, float(np.max(np.abs(product_defect))))
        rho = heisenberg_rep(*g)
        worst = max(worst, float(np.max(np.abs(rho.conj().T @ HEISENBERG_FORM @ rho - HEISENBERG_FORM))))
    if worst > EXACT * 100:
        failures.append(f"rho homomorphism / form defect {worst:.3e}")

    margin = local_injectivity_margin(
        sl2, canonical_line("sl2r", -0.5), seed=settings.default_seed, tolerances=tol
    )
    if margin <= 1e-4:
        failures.append(f"hyperbolic orbit map injectivity margin {margin:.3e}")
    return _flagged("realization_examples", failures, EXACT * 100, worst)


BATTERY: tuple[Callable[[CRSettings], CheckResult], ...] = (
    check_sl2r_spherical_parameters,
    check_su2_spherical_parameters,
    check_heisenberg_and_e2_triples,
    check_structure_equations,
    check_gauge_invariance,
    check_classification_round_trip,
    check_automorphism_invariance,
    check_realization_residuals,
    check_cr_map_certificates,
    check_negative_controls,
    check_algebra_examples,
    check_line_examples,
    check_coframe_examples,
    check_atlas_examples,
    check_realization_examples,
)


def _check_name(check: Callable[[CRSettings], CheckResult]) -> str:
    return check.__name__.removeprefix("check_")


def run_battery(settings: CRSettings) -> list[CheckResult]:
    results = []
    for check in BATTERY:
        try:
            result = check(settings)
        except CRGeometryError as exc:
            logger.exception("Check %s raised", _check_name(check))
            result = CheckResult(_check_name(check), False, math.inf, 0.0, f"{exc.code}: {exc}")
        level = logging.INFO if result.passed else logging.ERROR
        verdict = "pass" if result.passed else "FAIL"
        logger.log(level, "check %-32s %s (%.3e)", result.name, verdict, result.value)
        results.append(result)
    return results


def battery_summary(results: list[CheckResult]) -> dict[str, Any]:
    passed = sum(1 for result in results if result.passed)
    return {
        "passed": passed,
        "failed": len(results) - passed,
        "total": len(results),
        "checks": [result.to_payload() for result in results],
    }
