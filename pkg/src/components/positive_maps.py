"""
Unital positive linear maps on symmetric matrices.

Scalar-valued maps (vector states, the normalized trace) return 1x1 matrices so that
every inequality downstream is a Loewner comparison.
"""
from abc import ABC, abstractmethod
from typing import List, Optional, Sequence

import numpy as np

from src.components.spectral_core import eigenvalues
from src.constants import (GIVENS_PASSES, MAP_TAGS, POSITIVITY_REL_TOL, UNITALITY_TOL,
                           VECTOR_NORM_TOL)
from src.entity.artifact_entity import MapVerificationReport
from src.entity.symmetric_matrix import SymmetricMatrix
from src.exception import BadParameter, ShapeError
from src.logger import logging
from src.utils.splitmix import SplitMix64


class PositiveUnitalMap(ABC):
    name: str = "map"

    def __init__(self, in_dim: int, out_dim: int):
        if in_dim < 1 or out_dim < 1:
            raise BadParameter(f"map dimensions must be positive, got {in_dim} -> {out_dim}")
        self.in_dim = in_dim
        self.out_dim = out_dim

    def apply(self, A: SymmetricMatrix) -> SymmetricMatrix:
        if A.dim != self.in_dim:
            raise ShapeError(f"{self.name} acts on dimension {self.in_dim}, got a {A.dim}x{A.dim} matrix")
        return SymmetricMatrix.from_array(self._apply(np.asarray(A.entries)))

    __call__ = apply

    @abstractmethod
    def _apply(self, a: np.ndarray) -> np.ndarray:
        ...

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.in_dim} -> {self.out_dim})"


class Compression(PositiveUnitalMap):
    """X -> V^T X V. Unital exactly when V^T V = I; verify_map reports otherwise."""
    name = "compression"

    def __init__(self, V, name: Optional[str] = None):
        V = np.array(V, dtype=np.float64)
        if V.ndim != 2:
            raise BadParameter(f"compression needs a 2-d array, got shape {V.shape}")
        super().__init__(V.shape[0], V.shape[1])
        self.V = V
        if name:
            self.name = name

    def _apply(self, a: np.ndarray) -> np.ndarray:
        return self.V.T @ a @ self.V


class VectorState(PositiveUnitalMap):
    """X -> <X x, x> for a unit vector x."""
    name = "vector_state"

    def __init__(self, x):
        x = np.array(x, dtype=np.float64).reshape(-1)
        norm = float(np.linalg.norm(x))
        if abs(norm - 1.0) > VECTOR_NORM_TOL:
            raise BadParameter(f"vector state needs a unit vector, got norm {norm!r}")
        super().__init__(x.size, 1)
        self.x = x

    def _apply(self, a: np.ndarray) -> np.ndarray:
        return np.array([[self.x @ a @ self.x]])


class NormalizedTrace(PositiveUnitalMap):
    name = "normalized_trace"

    def __init__(self, dim: int):
        super().__init__(dim, 1)

    def _apply(self, a: np.ndarray) -> np.ndarray:
        return np.array([[np.trace(a) / self.in_dim]])


class Pinching(PositiveUnitalMap):
    """Keeps the diagonal blocks of a partition of the indices and zeroes the rest."""
    name = "pinching"

    def __init__(self, blocks: Sequence[Sequence[int]]):
        blocks = [tuple(int(i) for i in block) for block in blocks]
        indices = sorted(i for block in blocks for i in block)
        dim = len(indices)
        if not blocks or any(not block for block in blocks) or indices != list(range(dim)):
            raise BadParameter(f"pinching blocks must partition 0..n-1, got {blocks}")
        super().__init__(dim, dim)
        self.blocks = blocks
        self._mask = np.zeros((dim, dim), dtype=bool)
        for block in blocks:
            self._mask[np.ix_(block, block)] = True

    def _apply(self, a: np.ndarray) -> np.ndarray:
        return np.where(self._mask, a, 0.0)


class CongruenceMixture(PositiveUnitalMap):
    """X -> sum_i w_i U_i^T X U_i with orthogonal U_i and weights summing to one."""
    name = "congruence_mixture"

    def __init__(self, weights: Sequence[float], orthogonals: Sequence[np.ndarray]):
        weights = np.asarray(weights, dtype=np.float64)
        if len(weights) != len(orthogonals) or len(weights) == 0:
            raise BadParameter("congruence mixture needs one weight per orthogonal matrix")
        if np.any(weights <= 0) or abs(float(np.sum(weights)) - 1.0) > UNITALITY_TOL:
            raise BadParameter(f"weights must be positive and sum to 1, got {weights.tolist()}")
        orthogonals = [np.array(U, dtype=np.float64) for U in orthogonals]
        dim = orthogonals[0].shape[0]
        for U in orthogonals:
            if U.shape != (dim, dim) or not np.allclose(U.T @ U, np.eye(dim), atol=1e-12 * dim):
                raise BadParameter("congruence mixture needs square orthogonal matrices of one size")
        super().__init__(dim, dim)
        self.weights = weights
        self.orthogonals = orthogonals

    def _apply(self, a: np.ndarray) -> np.ndarray:
        return sum(w * (U.T @ a @ U) for w, U in zip(self.weights, self.orthogonals))


def corner_map(n: int = 3, k: int = 2) -> Compression:
    """Leading k x k principal submatrix of an n x n matrix."""
    if not 1 <= k <= n:
        raise BadParameter(f"corner map needs 1 <= k <= n, got n={n}, k={k}")
    return Compression(np.eye(n)[:, :k], name="corner")


def identity_map(n: int) -> Compression:
    return Compression(np.eye(n), name="identity")


def random_pinching(dim: int, rng: SplitMix64) -> Pinching:
    order = rng.permutation(dim)
    cuts = sorted({rng.randint(1, dim - 1) for _ in range(rng.randint(1, max(dim - 1, 1)))}) if dim > 1 else []
    edges = [0, *cuts, dim]
    return Pinching([order[lo:hi] for lo, hi in zip(edges[:-1], edges[1:])])


def build_map(tag: str, dim: int, rng: SplitMix64) -> PositiveUnitalMap:
    """A random instance of the map family `tag` acting on dim x dim matrices."""
    if tag == "corner":
        return corner_map(dim, rng.randint(1, dim - 1) if dim > 1 else 1)
    if tag == "vector_state":
        x = rng.normal_array(dim)
        return VectorState(x / np.linalg.norm(x))
    if tag == "normalized_trace":
        return NormalizedTrace(dim)
    if tag == "pinching":
        return random_pinching(dim, rng)
    if tag == "congruence_mixture":
        count = rng.randint(2, 3)
        weights = rng.uniform_array(count, 0.1, 1.0)
        return CongruenceMixture(weights / np.sum(weights),
                                 [rng.orthogonal(dim, GIVENS_PASSES) for _ in range(count)])
    if tag == "identity":
        return identity_map(dim)
    raise BadParameter(f"unknown map tag {tag!r}; expected one of {MAP_TAGS}")


def _random_psd(dim: int, rng: SplitMix64) -> SymmetricMatrix:
    rank = rng.randint(1, dim)
    G = rng.normal_array((dim, rank))
    return SymmetricMatrix.from_array(G @ G.T)


def verify_map(phi: PositiveUnitalMap, trials: int = 100, seed: int = 0) -> MapVerificationReport:
    """Checks phi(I) = I and positivity of phi on `trials` random PSD matrices of random rank."""
    if trials < 1:
        raise BadParameter(f"trials must be >= 1, got {trials}")
    failures: List[str] = []

    image = phi.apply(SymmetricMatrix.identity(phi.in_dim))
    unitality_error = float(np.max(np.abs(image.entries - np.eye(phi.out_dim))))
    unital = unitality_error <= UNITALITY_TOL
    if not unital:
        failures.append(f"unitality error {unitality_error:.3e}")

    rng = SplitMix64(seed)
    worst = np.inf
    for trial in range(trials):
        X = _random_psd(phi.in_dim, rng)
        low = float(eigenvalues(phi.apply(X))[0])
        worst = min(worst, low)
        if low < -POSITIVITY_REL_TOL * (1.0 + X.max_norm):
            failures.append(f"trial {trial}: output min eigenvalue {low:.3e}")
    positive = not any(message.startswith("trial") for message in failures)

    logging.debug(f"verify_map {phi.name}: unitality error {unitality_error:.3e}, worst min eig {worst:.3e}")
    return MapVerificationReport(map_name=phi.name, trials=trials, unitality_error=unitality_error,
                                 unital=unital, worst_min_eigenvalue=float(worst), positive=positive,
                                 failures=failures)


