"""Three-dimensional real Lie algebras given by structure constants."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np
from scipy.linalg import expm

from cr_config import DEFAULT_TOLERANCES, ToleranceConfig
from cr_errors import (
    AntisymmetryViolation,
    FormatError,
    JacobiViolation,
    NoRepresentation,
    RepMismatch,
)

logger = logging.getLogger(__name__)

# Three complex coordinates against the algebra basis.
Vector3C = np.ndarray

DEFAULT_BASIS = ("A", "B", "C")


def as_vector(values: Any) -> Vector3C:
    try:
        vec = np.asarray(values, dtype=complex).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"Not a numeric vector: {values!r}") from exc
    if vec.shape != (3,):
        raise FormatError(f"Expected three coordinates, got shape {vec.shape}.")
    if not np.all(np.isfinite(vec)):
        raise FormatError("Vector coordinates must be finite.")
    return vec


@dataclass(frozen=True, eq=False)
class LieAlgebra3:
    basis_names: tuple[str, str, str]
    structure: np.ndarray
    matrix_rep: tuple[np.ndarray, ...] | None = None
    name: str = ""
    antisymmetry_residual: float = 0.0
    jacobi_residual: float = 0.0
    rep_residual: float | None = None

    @property
    def has_rep(self) -> bool:
        return self.matrix_rep is not None

    @property
    def rep_size(self) -> int | None:
        if self.matrix_rep is None:
            return None
        return int(self.matrix_rep[0].shape[0])

    def basis_vector(self, index: int) -> Vector3C:
        vec = np.zeros(3, dtype=complex)
        vec[index] = 1.0
        return vec

    def describe(self) -> dict[str, Any]:
        brackets = []
        for i, j in ((0, 1), (0, 2), (1, 2)):
            for k in range(3):
                value = float(self.structure[k, i, j])
                if value != 0.0:
                    brackets.append({"i": i, "j": j, "k": k, "v": value})
        return {
            "name": self.name,
            "basis": list(self.basis_names),
            "brackets": brackets,
            "jacobi_residual": self.jacobi_residual,
            "antisymmetry_residual": self.antisymmetry_residual,
            "rep_residual": self.rep_residual,
        }


# ------------------------
# Construction
# ------------------------


def _sparse_entry(entry: Any) -> tuple[int, int, int, float]:
    if isinstance(entry, dict):
        try:
            return int(entry["i"]), int(entry["j"]), int(entry["k"]), float(entry["v"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"Bad bracket entry {entry!r}.") from exc
    try:
        i, j, k, v = entry
        return int(i), int(j), int(k), float(v)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"Bad bracket entry {entry!r}.") from exc


def _structure_from_sparse(entries: Iterable[Any]) -> np.ndarray:
    coeffs = np.zeros((3, 3, 3), dtype=float)
    given: set[tuple[int, int, int]] = set()
    for raw in entries:
        i, j, k, v = _sparse_entry(raw)
        if not all(0 <= index < 3 for index in (i, j, k)):
            raise FormatError(f"Bracket index out of range in {raw!r}.")
        if (i, j, k) in given:
            raise FormatError(f"Bracket [{i},{j}] component {k} given twice.")
        given.add((i, j, k))
        coeffs[k, i, j] = v

    # Partners left out of a sparse listing follow from antisymmetry.
    for i, j, k in list(given):
        if (j, i, k) not in given and i != j:
            coeffs[k, j, i] = -coeffs[k, i, j]
    return coeffs


def _coerce_structure(structure: Any) -> np.ndarray:
    if isinstance(structure, np.ndarray) or (
        isinstance(structure, (list, tuple)) and len(structure) == 3 and not _looks_sparse(structure)
    ):
        try:
            arr = np.asarray(structure, dtype=complex)
        except (TypeError, ValueError) as exc:
            raise FormatError("Structure constants must be numeric.") from exc
        if arr.shape != (3, 3, 3):
            raise FormatError(f"Structure array must be 3x3x3, got {arr.shape}.")
        if np.max(np.abs(arr.imag)) > 0:
            raise FormatError("Structure constants of a real Lie algebra must be real.")
        return np.array(arr.real, dtype=float)
    return _structure_from_sparse(structure)


def _looks_sparse(structure: Sequence[Any]) -> bool:
    first = structure[0]
    if isinstance(first, dict):
        return True
    try:
        return len(first) == 4 and not isinstance(first[0], (list, tuple, np.ndarray))
    except TypeError:
        return False


def _bracket_raw(coeffs: np.ndarray, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    wedge = np.outer(X, Y) - np.outer(Y, X)
    return 0.5 * np.einsum("kij,ij->k", coeffs, wedge)


def _jacobi_residual(coeffs: np.ndarray) -> float:
    basis = np.eye(3)
    worst = 0.0
    for i, j, k in itertools.product(range(3), repeat=3):
        ei, ej, ek = basis[i], basis[j], basis[k]
        total = (
            _bracket_raw(coeffs, _bracket_raw(coeffs, ei, ej), ek)
            + _bracket_raw(coeffs, _bracket_raw(coeffs, ej, ek), ei)
            + _bracket_raw(coeffs, _bracket_raw(coeffs, ek, ei), ej)
        )
        worst = max(worst, float(np.max(np.abs(total))))
    return worst


def _coerce_rep(matrix_rep: Sequence[Any]) -> tuple[np.ndarray, ...]:
    mats = []
    for raw in matrix_rep:
        mat = np.array(raw, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise FormatError("Representation matrices must be square.")
        mats.append(mat)
    if len(mats) != 3:
        raise FormatError("A representation needs one matrix per basis vector.")
    size = mats[0].shape[0]
    if size not in (2, 3) or any(mat.shape != (size, size) for mat in mats):
        raise FormatError("Representation matrices must all be 2x2 or all 3x3.")
    for mat in mats:
        mat.setflags(write=False)
    return tuple(mats)


def _rep_residual(coeffs: np.ndarray, reps: tuple[np.ndarray, ...]) -> float:
    worst = 0.0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        commutator = reps[i] @ reps[j] - reps[j] @ reps[i]
        expected = sum(coeffs[k, i, j] * reps[k] for k in range(3))
        worst = max(worst, float(np.max(np.abs(commutator - expected))))
    return worst


def construct_algebra(
    structure: Any,
    basis_names: Sequence[str] = DEFAULT_BASIS,
    matrix_rep: Sequence[Any] | None = None,
    *,
    name: str = "",
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> LieAlgebra3:
    names = tuple(str(item) for item in basis_names)
    if len(names) != 3 or len(set(names)) != 3:
        raise FormatError("basis_names must be three distinct identifiers.")

    coeffs = _coerce_structure(structure)
    scale = max(1.0, float(np.max(np.abs(coeffs))))

    antisymmetry = float(np.max(np.abs(coeffs + coeffs.transpose(0, 2, 1))))
    if antisymmetry > tolerances.exact_tol * scale:
        raise AntisymmetryViolation(
            f"Structure constants are not antisymmetric (residual {antisymmetry:.3e}).",
            details={"residual": antisymmetry},
        )

    jacobi = _jacobi_residual(coeffs)
    if jacobi > tolerances.exact_tol * scale * scale:
        raise JacobiViolation(
            f"Jacobi identity fails (residual {jacobi:.3e}).",
            details={"residual": jacobi},
        )

    reps = None
    rep_residual = None
    if matrix_rep is not None:
        reps = _coerce_rep(matrix_rep)
        rep_residual = _rep_residual(coeffs, reps)
        rep_scale = max(1.0, max(float(np.max(np.abs(mat))) for mat in reps))
        if rep_residual > tolerances.exact_tol * scale * rep_scale * rep_scale:
            raise RepMismatch(
                f"Matrix representation does not reproduce the brackets (residual {rep_residual:.3e}).",
                details={"residual": rep_residual},
            )

    coeffs.setflags(write=False)
    logger.debug(
        "Constructed algebra %s: jacobi=%.2e antisymmetry=%.2e rep=%s",
        name or "<anonymous>",
        jacobi,
        antisymmetry,
        rep_residual,
    )
    return LieAlgebra3(
        basis_names=names,  # type: ignore[arg-type]
        structure=coeffs,
        matrix_rep=reps,
        name=name,
        antisymmetry_residual=antisymmetry,
        jacobi_residual=jacobi,
        rep_residual=rep_residual,
    )


# ------------------------
# Calculus
# ------------------------


def bracket(alg: LieAlgebra3, X: Any, Y: Any) -> Vector3C:
    return _bracket_raw(alg.structure, as_vector(X), as_vector(Y))


def adjoint_matrix(alg: LieAlgebra3, X: Any) -> np.ndarray:
    """Matrix of ad X; column j holds the coordinates of [X, e_j]."""
    return np.einsum("kij,i->kj", alg.structure, as_vector(X))


def killing_form(alg: LieAlgebra3, X: Any, Y: Any) -> complex:
    c = alg.structure
    return complex(np.einsum("kij,jlk,i,l->", c, c, as_vector(X), as_vector(Y)))


def killing_matrix(alg: LieAlgebra3) -> np.ndarray:
    gram = np.empty((3, 3), dtype=float)
    for i, j in itertools.product(range(3), repeat=2):
        gram[i, j] = killing_form(alg, alg.basis_vector(i), alg.basis_vector(j)).real
    return gram


# ------------------------
# Representation and exponential
# ------------------------


def _require_rep(alg: LieAlgebra3) -> tuple[np.ndarray, ...]:
    if alg.matrix_rep is None:
        raise NoRepresentation(f"Algebra {alg.name or '<anonymous>'} has no matrix representation.")
    return alg.matrix_rep


def rep_matrix(alg: LieAlgebra3, X: Any) -> np.ndarray:
    reps = _require_rep(alg)
    vec = as_vector(X)
    return sum(vec[k] * reps[k] for k in range(3))


def rep_coordinates(
    alg: LieAlgebra3,
    matrix: Any,
    *,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> Vector3C:
    reps = _require_rep(alg)
    target = np.asarray(matrix, dtype=complex)
    design = np.column_stack([rep.reshape(-1) for rep in reps])
    coords, *_ = np.linalg.lstsq(design, target.reshape(-1), rcond=None)
    misfit = float(np.linalg.norm(design @ coords - target.reshape(-1)))
    if misfit > tolerances.orbit_tol * max(1.0, float(np.linalg.norm(target))):
        raise RepMismatch(
            f"Matrix is not in the image of the representation (misfit {misfit:.3e}).",
            details={"misfit": misfit},
        )
    return coords


def group_exp(alg: LieAlgebra3, X: Any) -> np.ndarray:
    """Exponential of a real algebra element in the built-in representation.

    Uses scipy's Pade-13 scaling-and-squaring expm. Imaginary parts are
    discarded since only the real group is exponentiated.
    """
    vec = as_vector(X)
    if np.max(np.abs(vec.imag)) > 0:
        logger.debug("group_exp dropping imaginary part %s", vec.imag)
    return expm(rep_matrix(alg, vec.real.astype(complex)))
