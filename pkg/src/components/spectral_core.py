"""
Spectral calculus on dense real symmetric matrices.

Eigendecomposition is a cyclic Jacobi iteration with a fixed row-major sweep order,
so identical inputs give bit-identical eigenpairs on a given platform.
"""
import math
from typing import Optional, Tuple

import numpy as np

from src.constants import (JACOBI_LARGE_THETA, JACOBI_MAX_SWEEPS, JACOBI_OFFDIAG_REL_TOL, LOEWNER_REL_TOL,
                           STRICT_POS_REL_TOL)
from src.entity.artifact_entity import LoewnerVerdict, Relation
from src.entity.scalar_function import ScalarFunction
from src.entity.symmetric_matrix import SpectralDecomposition, SymmetricMatrix
from src.exception import DomainViolation, InvalidMatrix, NotPositiveDefinite, ShapeError
from src.logger import logging


def _offdiag_mass(a: np.ndarray) -> float:
    return math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))


def eigendecompose(A: SymmetricMatrix) -> SpectralDecomposition:
    a = np.array(A.entries, dtype=np.float64)
    if not np.all(np.isfinite(a)):
        raise InvalidMatrix("cannot eigendecompose a matrix with non-finite entries")
    n = a.shape[0]
    v = np.eye(n)
    threshold = JACOBI_OFFDIAG_REL_TOL * float(np.linalg.norm(a))

    sweeps = 0
    while _offdiag_mass(a) > threshold:
        if sweeps == JACOBI_MAX_SWEEPS:
            logging.warning(f"Jacobi stopped at the {JACOBI_MAX_SWEEPS}-sweep cap "
                            f"with off-diagonal mass {_offdiag_mass(a):.3e}")
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(a[p, q])
                if apq == 0.0:
                    continue
                theta = (float(a[q, q]) - float(a[p, p])) / (2.0 * apq)
                if abs(theta) > JACOBI_LARGE_THETA:
                    # theta * theta would overflow; 1 / (2 theta) is exact to working precision
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return SpectralDecomposition(eigenvalues=eigenvalues[order], eigenvectors=v[:, order], sweeps=sweeps)


def eigenvalues(A: SymmetricMatrix) -> np.ndarray:
    return eigendecompose(A).eigenvalues


def spectral_hull(A: SymmetricMatrix) -> Tuple[float, float]:
    values = eigenvalues(A)
    return float(values[0]), float(values[-1])


def apply_scalar_function(A: SymmetricMatrix, f: ScalarFunction,
                          decomposition: Optional[SpectralDecomposition] = None) -> SymmetricMatrix:
    decomposition = decomposition or eigendecompose(A)
    for value in decomposition.eigenvalues:
        if not f.domain.contains(float(value)):
            raise DomainViolation(f"eigenvalue {value!r} lies outside the domain {f.domain} of {f.label}",
                                  eigenvalue=float(value))
    return decomposition.recompose(f(decomposition.eigenvalues))


def default_tolerance(X: SymmetricMatrix, Y: SymmetricMatrix, rel_tol: float = LOEWNER_REL_TOL) -> float:
    return rel_tol * (1.0 + max(X.max_norm, Y.max_norm))


def loewner_compare(X: SymmetricMatrix, Y: SymmetricMatrix, tol: Optional[float] = None,
                    rel_tol: float = LOEWNER_REL_TOL) -> LoewnerVerdict:
    """
    Compares X and Y in the Loewner order through the spectrum of Y - X.
    `tol` is absolute; when omitted it is rel_tol * (1 + max(|X|_max, |Y|_max)).
    """
    if X.dim != Y.dim:
        raise ShapeError(f"cannot compare matrices of dimension {X.dim} and {Y.dim}")
    if tol is None:
        tol = default_tolerance(X, Y, rel_tol)
    if tol < 0:
        raise ValueError(f"tolerance must be non-negative, got {tol}")

    gap = eigenvalues(Y - X)
    gap_min, gap_max = float(gap[0]), float(gap[-1])
    less = gap_min >= -tol
    greater = gap_max <= tol
    if less and greater:
        relation = Relation.EQUAL
    elif less:
        relation = Relation.LESS_OR_EQUAL
    elif greater:
        relation = Relation.GREATER_OR_EQUAL
    else:
        relation = Relation.INCOMPARABLE
    return LoewnerVerdict(relation=relation, gap_min_eig=gap_min, gap_max_eig=gap_max, tolerance_used=tol)


def strict_positivity_tolerance(A: SymmetricMatrix) -> float:
    return STRICT_POS_REL_TOL * (1.0 + A.max_norm)


def require_strictly_positive(A: SymmetricMatrix, what: str = "matrix") -> SpectralDecomposition:
    decomposition = eigendecompose(A)
    if decomposition.min_eigenvalue <= strict_positivity_tolerance(A):
        raise NotPositiveDefinite(f"{what} is not strictly positive "
                                  f"(min eigenvalue {decomposition.min_eigenvalue:.3e})")
    return decomposition


def matrix_sqrt_inv_sqrt(A: SymmetricMatrix) -> Tuple[SymmetricMatrix, SymmetricMatrix]:
    decomposition = require_strictly_positive(A)
    roots = np.sqrt(decomposition.eigenvalues)
    return decomposition.recompose(roots), decomposition.recompose(1.0 / roots)


def matrix_inverse(A: SymmetricMatrix) -> SymmetricMatrix:
    decomposition = require_strictly_positive(A)
    return decomposition.recompose(1.0 / decomposition.eigenvalues)


def _is_integer(p: float) -> bool:
    return float(p).is_integer()


def power_of_inner(C: SymmetricMatrix, p: float, tol: Optional[float] = None) -> SymmetricMatrix:
    """
    C^p through the spectrum of C. For fractional p, eigenvalues in [-tol, 0) are clamped
    to zero and the result is flagged; anything more negative is a DomainViolation.
    """
    decomposition = eigendecompose(C)
    values = decomposition.eigenvalues.copy()
    clamped = False
    if not _is_integer(p):
        tol = strict_positivity_tolerance(C) if tol is None else tol
        if values[0] < -tol:
            raise DomainViolation(f"fractional power {p} of a matrix with eigenvalue {values[0]!r}",
                                  eigenvalue=float(values[0]))
        if values[0] < 0.0:
            values = np.maximum(values, 0.0)
            clamped = True
            logging.warning(f"clamped eigenvalues >= {-tol:.3e} to zero before the power {p}")
    elif p < 0 and np.any(np.abs(values) <= strict_positivity_tolerance(C)):
        raise DomainViolation(f"negative power {p} of a singular matrix", eigenvalue=float(values[0]))
    powered = np.power(values, float(p))
    result = decomposition.recompose(powered)
    return SymmetricMatrix(result.entries, clamped=clamped) if clamped else result


def natural_power(A: SymmetricMatrix, B: SymmetricMatrix, p: float) -> SymmetricMatrix:
    """A #_p B = A^{1/2} (A^{-1/2} B A^{-1/2})^p A^{1/2}."""
    if A.dim != B.dim:
        raise ShapeError(f"natural_power needs equal dimensions, got {A.dim} and {B.dim}")
    a_half, a_inv_half = matrix_sqrt_inv_sqrt(A)
    inner = B.congruence(a_inv_half)
    powered = power_of_inner(inner, p)
    result = powered.congruence(a_half)
    return SymmetricMatrix(result.entries, clamped=True) if powered.clamped else result
