import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from src.components.scalar_functions import catalog_lookup, power_function
from src.components.spectral_core import (apply_scalar_function, eigendecompose, eigenvalues, loewner_compare,
                                          matrix_inverse, matrix_sqrt_inv_sqrt, natural_power, power_of_inner,
                                          require_strictly_positive, spectral_hull)
from src.entity.artifact_entity import Relation
from src.entity.symmetric_matrix import SymmetricMatrix
from src.exception import DomainViolation, InvalidMatrix, NotPositiveDefinite, ShapeError

MATRIX_DIMENSION = 4

square_arrays = arrays(np.float64, (MATRIX_DIMENSION, MATRIX_DIMENSION),
                       elements=st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False))

MIRROR = {
    Relation.LESS_OR_EQUAL: Relation.GREATER_OR_EQUAL,
    Relation.GREATER_OR_EQUAL: Relation.LESS_OR_EQUAL,
    Relation.EQUAL: Relation.EQUAL,
    Relation.INCOMPARABLE: Relation.INCOMPARABLE,
}


def _symmetrize(a: np.ndarray) -> SymmetricMatrix:
    return SymmetricMatrix.from_array((a + a.T) / 2.0)


@settings(max_examples=60, deadline=None)
@given(square_arrays)
def test_eigendecompose_reconstructs_with_orthogonal_vectors(a):
    A = _symmetrize(a)
    decomposition = eigendecompose(A)
    Q = decomposition.eigenvectors

    scale = 1.0 + A.max_norm
    assert np.allclose(decomposition.recompose().entries, A.entries, rtol=0.0, atol=1e-10 * scale)
    assert np.allclose(Q.T @ Q, np.eye(MATRIX_DIMENSION), rtol=0.0, atol=1e-12 * MATRIX_DIMENSION)
    assert np.all(np.diff(decomposition.eigenvalues) >= 0.0)
    assert np.allclose(decomposition.eigenvalues, np.linalg.eigvalsh(A.entries), rtol=0.0, atol=1e-10 * scale)


@settings(max_examples=60, deadline=None)
@given(square_arrays, square_arrays)
def test_loewner_compare_is_mirrored_when_arguments_swap(x, y):
    X, Y = _symmetrize(x), _symmetrize(y)
    forward, backward = loewner_compare(X, Y), loewner_compare(Y, X)

    scale = 1.0 + max(X.max_norm, Y.max_norm)
    assert forward.tolerance_used == backward.tolerance_used
    assert forward.gap_min_eig == pytest.approx(-backward.gap_max_eig, abs=1e-10 * scale)
    assert forward.gap_max_eig == pytest.approx(-backward.gap_min_eig, abs=1e-10 * scale)

    # away from the tolerance boundary the verdicts must mirror exactly
    tol = forward.tolerance_used
    for gap in (forward.gap_min_eig, forward.gap_max_eig):
        assume(abs(abs(gap) - tol) > 1e-9 * scale)
    assert backward.relation == MIRROR[forward.relation]


def test_eigendecompose_is_deterministic():
    A = SymmetricMatrix.from_array([[4.0, 1.0, -1.0], [1.0, 2.0, 1.0], [-1.0, 1.0, 2.0]])
    first, second = eigendecompose(A), eigendecompose(A)
    assert np.array_equal(first.eigenvalues, second.eigenvalues)
    assert np.array_equal(first.eigenvectors, second.eigenvectors)


def test_eigendecompose_converges_when_diagonal_dominates():
    A = SymmetricMatrix.from_array([[-1.0, -1.0, 0.0, -1.0],
                                    [-1.0, -1.0, -1.0, -1.0],
                                    [0.0, -1.0, -1.0, -1.0],
                                    [-1.0, -1.0, -1.0, -1.0]])
    decomposition = eigendecompose(A)
    Q = decomposition.eigenvectors
    rotated = Q.T @ A.entries @ Q

    assert np.sqrt(2.0 * np.sum(np.triu(rotated, 1) ** 2)) <= 1e-12
    assert np.max(np.abs(decomposition.recompose().entries - A.entries)) <= 1e-12
    assert np.allclose(decomposition.eigenvalues, np.linalg.eigvalsh(A.entries), rtol=0.0, atol=1e-12)


def test_tiny_off_diagonal_entry_does_not_overflow():
    A = SymmetricMatrix.from_array([[1.0, 1e-160, 0.0], [1e-160, 2.0, 1.0], [0.0, 1.0, 3.0]])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        decomposition = eigendecompose(A)
    assert np.allclose(decomposition.eigenvalues, np.linalg.eigvalsh(A.entries), rtol=0.0, atol=1e-12)
    assert np.allclose(decomposition.recompose().entries, A.entries, rtol=0.0, atol=1e-12)


def test_eigenvalues_of_diagonal_are_sorted():
    A = SymmetricMatrix.diag([3.0, -1.0, 2.0])
    assert eigenvalues(A).tolist() == [-1.0, 2.0, 3.0]
    assert spectral_hull(A) == (-1.0, 3.0)
    assert eigendecompose(A).sweeps == 0


def test_non_symmetric_input_is_rejected():
    with pytest.raises(InvalidMatrix):
        SymmetricMatrix.from_array([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(InvalidMatrix):
        SymmetricMatrix.from_array([[1.0, math.nan], [math.nan, 1.0]])
    with pytest.raises(InvalidMatrix):
        SymmetricMatrix.from_array([[1.0, 2.0, 3.0]])


def test_apply_scalar_function_matches_matrix_products(counterexample_matrix):
    A = counterexample_matrix
    cube = apply_scalar_function(A, power_function(3))
    assert np.allclose(cube.entries, A.entries @ A.entries @ A.entries, rtol=0.0, atol=1e-10)

    exponential = apply_scalar_function(SymmetricMatrix.diag([0.0, 1.0]), catalog_lookup("exp"))
    assert np.allclose(exponential.entries, np.diag([1.0, math.e]), rtol=0.0, atol=1e-15)


def test_apply_scalar_function_rejects_eigenvalues_outside_domain():
    with pytest.raises(DomainViolation) as info:
        apply_scalar_function(SymmetricMatrix.diag([-1.0, 2.0]), catalog_lookup("log"))
    assert info.value.eigenvalue == -1.0


def test_loewner_relations():
    I = SymmetricMatrix.identity(2)
    assert loewner_compare(I, 2.0 * I).relation is Relation.LESS_OR_EQUAL
    assert loewner_compare(2.0 * I, I).relation is Relation.GREATER_OR_EQUAL
    assert loewner_compare(I, I).relation is Relation.EQUAL
    assert loewner_compare(SymmetricMatrix.diag([1.0, 0.0]), SymmetricMatrix.diag([0.0, 1.0])).relation \
        is Relation.INCOMPARABLE


def test_loewner_compare_tolerance_and_shapes():
    I = SymmetricMatrix.identity(2)
    nudged = I - 1e-12
    assert loewner_compare(I, nudged).relation is Relation.EQUAL
    assert loewner_compare(I, nudged, tol=0.0).relation is Relation.GREATER_OR_EQUAL
    assert loewner_compare(I, I, rel_tol=1e-8).tolerance_used == pytest.approx(2e-8)
    with pytest.raises(ShapeError):
        loewner_compare(I, SymmetricMatrix.identity(3))


def test_strict_positivity_and_inverse_roots():
    with pytest.raises(NotPositiveDefinite):
        require_strictly_positive(SymmetricMatrix.diag([1.0, 0.0]))

    A = SymmetricMatrix.from_array([[3.0, -2.0], [-2.0, 7.0]])
    root, inverse_root = matrix_sqrt_inv_sqrt(A)
    assert np.allclose((root.entries @ root.entries), A.entries, atol=1e-12)
    assert np.allclose(root.entries @ inverse_root.entries, np.eye(2), atol=1e-12)
    assert np.allclose(matrix_inverse(A).entries, np.array([[7.0, 2.0], [2.0, 3.0]]) / 17.0, atol=1e-14)


def test_power_of_inner_clamps_round_off_only():
    clamped = power_of_inner(SymmetricMatrix.diag([-1e-15, 4.0]), 0.5)
    assert clamped.clamped
    assert np.allclose(clamped.entries, np.diag([0.0, 2.0]), atol=1e-15)

    with pytest.raises(DomainViolation):
        power_of_inner(SymmetricMatrix.diag([-1.0, 4.0]), 0.5)
    with pytest.raises(DomainViolation):
        power_of_inner(SymmetricMatrix.diag([0.0, 4.0]), -1)
    assert np.allclose(power_of_inner(SymmetricMatrix.diag([-2.0, 3.0]), 2).entries, np.diag([4.0, 9.0]))


def test_natural_power_endpoints_and_square():
    A = SymmetricMatrix.from_array([[2.0, 0.5], [0.5, 1.0]])
    B = SymmetricMatrix.from_array([[1.0, -0.2], [-0.2, 3.0]])
    assert natural_power(A, B, 0).allclose(A, atol=1e-12)
    assert natural_power(A, B, 1).allclose(B, atol=1e-12)

    expected = B.entries @ np.linalg.inv(A.entries) @ B.entries
    assert np.allclose(natural_power(A, B, 2).entries, expected, atol=1e-11)

    # commuting pair: the weighted geometric mean is entrywise
    mean = natural_power(SymmetricMatrix.diag([4.0, 1.0]), SymmetricMatrix.diag([1.0, 9.0]), 0.5)
    assert np.allclose(mean.entries, np.diag([2.0, 3.0]), atol=1e-14)
