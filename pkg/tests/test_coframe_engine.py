import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coframe_engine import (
    StructureTriple,
    adapted_coframe,
    cartan_data,
    closed_form_cartan,
    d_coefficients,
    gauge_coframe,
    gauge_transform,
    line_coframe,
    match_gauge,
    sigma_value,
    sphericity,
    structure_triple,
    triple_model_algebra,
    wedge,
    well_adapt,
)
from cr_errors import (
    DegenerateContact,
    GaugeMismatch,
    InvalidRequest,
    NotRegular,
    SingularFrame,
    Str2Violation,
)
from cr_line import ComplexLine
from group_atlas import canonical_line

unit = st.floats(min_value=-1, max_value=1, allow_nan=False, allow_infinity=False)


@st.composite
def triples(draw):
    beta = draw(unit)
    re_a, im_a = draw(unit), draw(unit)
    a = complex(re_a, im_a)
    if abs(a) < 1e-3:
        return StructureTriple(0.0, 1j * beta, complex(draw(unit), draw(unit)))
    return StructureTriple(a, 1j * beta, a * 1j * beta / np.conj(a))


def _natural_triple(alg, tag, t):
    return line_coframe(alg, canonical_line(tag, t)).triple


def test_wedge_is_antisymmetric():
    alpha = np.array([1.0, 2j, -0.5])
    beta = np.array([0.3, 0.0, 1 + 1j])
    assert np.allclose(wedge(alpha, beta), -wedge(beta, alpha))
    assert np.all(wedge(alpha, alpha) == 0)


def test_differentials_of_dual_basis(su2, e2, heis):
    frame = np.eye(3)
    assert np.allclose(d_coefficients(su2, frame[0], frame), [0, 0, -2])
    assert np.allclose(d_coefficients(e2, frame[2], frame), 0)
    # d(gamma) = -alpha^beta on heis
    assert np.allclose(d_coefficients(heis, frame[2], frame), [-1, 0, 0])


def test_dependent_frame_is_singular(heis):
    frame = [[1, 0, 0], [0, 1, 0], [1, 1, 0]]
    with pytest.raises(SingularFrame):
        d_coefficients(heis, [0, 0, 1], frame)


def test_adapted_coframe_on_sl2r(sl2r):
    t = 0.3
    line = canonical_line("sl2r", t)
    adapted = adapted_coframe(sl2r, line)
    assert np.linalg.norm(np.cross(adapted.theta, [0.0, 1.0, -t])) < 1e-12
    assert abs(adapted.theta @ line.vector) < 1e-12
    assert abs(adapted.theta @ adapted.transversal - 1.0) < 1e-12
    assert abs(adapted.theta1 @ line.vector) < 1e-12
    assert abs(adapted.theta1 @ np.conj(line.vector) - 1.0) < 1e-12


def test_degenerate_line_needs_explicit_opt_in(heis):
    degenerate = ComplexLine.from_vector([1.0, 0.0, 1j])
    with pytest.raises(NotRegular):
        adapted_coframe(heis, degenerate)
    with pytest.raises(DegenerateContact):
        adapted = adapted_coframe(heis, degenerate, allow_degenerate=True)
        well_adapt(heis, adapted.theta, adapted.theta1)


def test_natural_triples_of_canonical_lines(sl2r, su2, heis, e2):
    assert np.allclose(_natural_triple(e2, "e2", 0.0).values, (0, 0.5j, -0.5j), atol=1e-12)
    assert np.allclose(_natural_triple(heis, "heis", 0.0).values, (0, 0, 0), atol=1e-12)

    t = 0.5
    expected = (0, -0.5j * (1 + 6 * t + t * t), 0.5j * (1 - t) ** 2)
    assert np.allclose(_natural_triple(sl2r, "sl2r", t).values, expected, atol=1e-12)

    t = 2.0
    expected = (0, 2j * (1 + t * t), 2j * (1 - t * t))
    assert np.allclose(_natural_triple(su2, "su2", t).values, expected, atol=1e-12)


def test_canonical_coframes_are_well_adapted(sl2r, e2):
    data = line_coframe(sl2r, canonical_line("sl2r", -0.4))
    assert data.well_adapted_residual < 1e-12
    assert data.triple.gauge.k == pytest.approx(-2.0)
    assert data.triple.gauge.s == -1.0
    assert data.triple.gauge.lam == pytest.approx(math.sqrt(2))
    assert line_coframe(e2, canonical_line("e2")).to_payload()["triple"]["b"] == pytest.approx([0.0, 0.5])


@pytest.mark.parametrize("t", [0.5, -0.5, 0.25])
def test_sl2r_triple_matches_normalized_form(sl2r, t):
    denominator = 4 * abs(t) * (1 + t)
    target = StructureTriple(0.0, -1j * (1 + 6 * t + t * t) / denominator, -1j * (1 - t) ** 2 / denominator)
    rho, u = match_gauge(_natural_triple(sl2r, "sl2r", t), target)
    assert u * u == pytest.approx(2 * abs(t) * (1 + t))
    assert np.exp(2j * rho) == pytest.approx(-1.0)


def test_su2_triple_gauge_class(su2):
    t = 2.0
    natural = _natural_triple(su2, "su2", t)
    rho, u = match_gauge(natural, StructureTriple(0.0, 1j * (t + 1 / t), 1j * (1 / t - t)))
    assert u * u == pytest.approx(2 * t)
    assert np.exp(2j * rho) == pytest.approx(1.0)
    # The opposite sign of b is not reachable by a positive rescaling.
    with pytest.raises(GaugeMismatch):
        match_gauge(natural, StructureTriple(0.0, -1j * (t + 1 / t), -1j * (1 / t - t)))


def test_str2_violation_is_rejected():
    with pytest.raises(Str2Violation):
        StructureTriple(1.0, 1j, 0.0)
    with pytest.raises(Str2Violation):
        StructureTriple(0.0, 1.0, 0.0)


def test_model_algebra_reproduces_triple():
    triple = StructureTriple(0.6 - 0.2j, -0.4j, (0.6 - 0.2j) * -0.4j / (0.6 + 0.2j))
    alg, phi, phi1 = triple_model_algebra(triple)
    data = structure_triple(alg, phi, phi1)
    assert data.well_adapted_residual < 1e-12
    assert np.allclose(data.triple.values, triple.values, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(triples())
def test_cartan_data_satisfies_structure_equations(triple):
    data = cartan_data(triple)
    assert max(data.residual_norms) < 1e-10
    assert data.fifth_equation_gap < 1e-10
    assert data.r == pytest.approx(1j * sigma_value(*triple.values) / 6, abs=1e-12)


def test_cartan_r_examples():
    assert cartan_data(StructureTriple(0.0, 0.5j, -0.5j)).r == pytest.approx(-3 / 8)
    assert cartan_data(StructureTriple(0.0, -2.5j, 1.5j)).r == pytest.approx(-45 / 8)
    flat = closed_form_cartan(0.0, 0.7j, 0.0)
    assert flat["r"] == 0
    assert flat["s"] == 0


def test_cartan_data_on_canonical_realization(sl2r):
    data = line_coframe(sl2r, canonical_line("sl2r", 0.5))
    cartan = cartan_data(data.triple, realization=data)
    assert max(cartan.residual_norms) < 1e-10
    payload = cartan.to_payload()
    assert set(payload["coefficients"]) == {"A2", "B2", "C2", "A3", "B3", "C3", "A4", "B4", "C4"}


def test_sphericity_verdicts():
    e2 = sphericity(StructureTriple(0.0, 0.5j, -0.5j))
    assert e2.sigma == pytest.approx(2.25j)
    assert not e2.spherical
    assert sphericity(StructureTriple(0.0, 0.8j, 0.0)).spherical
    # a != 0 but 2|a|^2 + 9ib = 0
    a = 0.3 + 0.0j
    b = 2j * abs(a) ** 2 / 9
    assert sphericity(StructureTriple(a, b, a * b / np.conj(a))).spherical


def test_gauge_transform_examples():
    triple = StructureTriple(0.0, 0.5j, -0.5j)
    moved = gauge_transform(triple, 0.0, 2.0)
    assert moved.b == pytest.approx(0.125j)
    assert moved.c == pytest.approx(-0.125j)
    assert moved.gauge.u == 2.0
    same = gauge_transform(triple, 0.0, 1.0)
    assert same.values == triple.values
    with pytest.raises(InvalidRequest):
        gauge_transform(triple, 0.0, 0.0)


@settings(max_examples=40, deadline=None)
@given(triples(), st.floats(0, 2 * math.pi), st.floats(0.5, 2.0))
def test_r_is_a_relative_invariant(triple, rho, u):
    before = sphericity(triple)
    after = sphericity(gauge_transform(triple, rho, u))
    assert after.r == pytest.approx(np.exp(2j * rho) / u**4 * before.r, abs=1e-12)
    assert after.spherical == before.spherical or abs(before.sigma) < 1e-6


def test_gauge_on_coframe_matches_gauge_on_triple(e2):
    data = line_coframe(e2, canonical_line("e2"))
    regauged = gauge_coframe(data, 0.7, 2.0)
    expected = gauge_transform(data.triple, 0.7, 2.0)
    assert np.allclose(regauged.triple.values, expected.values, atol=1e-12)
    assert regauged.triple.gauge.u == 2.0
