import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cr_errors import FormatError, NotRegular, ZeroLine
from cr_line import (
    ComplexLine,
    Regularity,
    chordal_distance,
    classify_line,
    contact_frame,
    normalize_projective,
    require_regular,
)
from group_atlas import builtin_algebra, canonical_line

coordinate = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
line_vectors = st.builds(
    lambda parts: np.array(parts[:3]) + 1j * np.array(parts[3:]),
    st.lists(coordinate, min_size=6, max_size=6),
)
factors = st.builds(
    lambda modulus, angle: modulus * np.exp(1j * angle),
    st.floats(min_value=1e-3, max_value=1e3),
    st.floats(min_value=-np.pi, max_value=np.pi),
)


def _line(vector):
    assume(np.linalg.norm(vector) > 1e-3)
    return ComplexLine.from_vector(vector)


def test_normalize_projective_fixes_phase_and_norm():
    values = np.array([0.0, 2 - 2j, 1j])
    representative, scale = normalize_projective(values)
    assert np.linalg.norm(representative) == pytest.approx(1.0)
    assert representative[0] == 0
    assert representative[1].imag == 0 and representative[1].real > 0
    assert np.allclose(scale * representative, values)


def test_zero_vector_is_not_a_line():
    with pytest.raises(ZeroLine):
        ComplexLine.from_vector([0, 0, 0])


def test_line_keeps_supplied_vector_and_compares_projectively():
    line = ComplexLine.from_vector([1.0, 1j, 0.0])
    scaled = line.scaled(3 - 4j)
    assert np.allclose(line.vector, [1.0, 1j, 0.0])
    assert line.is_projectively_equal(scaled)
    assert np.allclose(scaled.vector, (3 - 4j) * line.vector)
    assert not line.is_projectively_equal(line.conjugate())


@settings(max_examples=100, deadline=None)
@given(line_vectors, factors)
def test_rescaled_line_is_the_same_point(vector, factor):
    line = _line(vector)
    scaled = line.scaled(factor)
    assert line.chordal_distance(scaled) < 1e-13
    assert line.is_projectively_equal(scaled)


def test_chordal_distance_of_nearby_lines():
    base = np.array([1.0, 0.0, 0.0])
    tilted = np.array([1.0, 1e-11, 0.0]) / np.sqrt(1.0 + 1e-22)
    assert chordal_distance(base, base) == 0.0
    assert chordal_distance(base, tilted) == pytest.approx(1e-11, rel=1e-6)
    assert chordal_distance(base, [0.0, 1j, 0.0]) == pytest.approx(1.0)


def test_line_literal_parsing():
    line = ComplexLine.from_literal([1, 0, 0, 1, 0, 0])
    assert np.allclose(line.vector, [1.0, 1j, 0.0])
    with pytest.raises(FormatError):
        ComplexLine.from_literal([1, 0, 0])


def test_heisenberg_trichotomy(heis):
    assert classify_line(heis, ComplexLine.from_vector([1, 1j, 0])).verdict is Regularity.REGULAR
    assert classify_line(heis, ComplexLine.from_vector([1, 0, 1j])).verdict is Regularity.DEGENERATE
    assert classify_line(heis, ComplexLine.from_vector([1 + 1j, 0, 0])).verdict is Regularity.REAL


@pytest.mark.parametrize(
    "tag, t",
    [("sl2r", 0.5), ("sl2r", -0.3), ("sl2r", 1.0), ("su2", 1.0), ("su2", 4.0), ("heis", 0.0), ("e2", 0.0)],
)
def test_canonical_lines_are_regular(tag, t):
    report = classify_line(builtin_algebra(tag), canonical_line(tag, t))
    assert report.is_regular
    assert report.transversal_margin > 1e-3
    assert report.to_payload()["verdict"] == "Regular"


def test_require_regular_rejects_degenerate(heis):
    with pytest.raises(NotRegular) as exc_info:
        require_regular(heis, ComplexLine.from_vector([1, 0, 1j]))
    assert exc_info.value.details["verdict"] == "Degenerate"


def test_contact_frame_planes(heis, e2, sl2r):
    heis_frame = contact_frame(heis, canonical_line("heis"))
    assert np.allclose(np.abs(heis_frame.plane_normal), [0, 0, 1])
    assert np.allclose(heis_frame.bracket_vector, [0, 0, 1])

    e2_frame = contact_frame(e2, canonical_line("e2"))
    assert np.allclose(np.abs(e2_frame.plane_normal), [0, 1, 0])

    sl2_frame = contact_frame(sl2r, canonical_line("sl2r", 1.0))
    assert np.allclose(sl2_frame.j_matrix @ sl2_frame.j_matrix, -np.eye(2))
    assert sl2_frame.j_residual == 0.0


@pytest.mark.parametrize("tag", ["sl2r", "heis", "e2"])
@settings(max_examples=50, deadline=None)
@given(vector=line_vectors, factor=factors)
def test_regularity_ignores_scaling_and_conjugation(tag, vector, factor):
    alg = builtin_algebra(tag)
    line = _line(vector)
    base = classify_line(alg, line)
    assume(not base.borderline)

    scaled = classify_line(alg, line.scaled(factor))
    assert scaled.verdict is base.verdict
    assert scaled.plane_margin == pytest.approx(base.plane_margin, rel=1e-6, abs=1e-12)
    assert scaled.transversal_margin == pytest.approx(base.transversal_margin, rel=1e-6, abs=1e-12)

    conjugate = classify_line(alg, line.conjugate())
    assert conjugate.verdict is base.verdict
    assert conjugate.plane_margin == pytest.approx(base.plane_margin, rel=1e-6, abs=1e-12)
    assert conjugate.determinant == pytest.approx(base.determinant, rel=1e-6, abs=1e-12)
