from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from src.constants import ASYMMETRY_REL_TOL
from src.exception import InvalidMatrix, ShapeError

ArrayLike = Union[np.ndarray, Sequence[Sequence[float]]]


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """
    Dense real symmetric matrix standing in for a self-adjoint operator.

    Entries are symmetrized on construction; `clamped` is set by operations that
    had to clamp tiny negative eigenvalues to zero before a fractional power.
    """
    entries: np.ndarray
    clamped: bool = field(default=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))

    @classmethod
    def from_array(cls, data: ArrayLike, asymmetry_rel_tol: float = ASYMMETRY_REL_TOL,
                   clamped: bool = False) -> "SymmetricMatrix":
        array = np.asarray(data, dtype=np.float64)
        if array.ndim == 0:
            array = array.reshape(1, 1)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
            raise InvalidMatrix(f"expected a non-empty square matrix, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise InvalidMatrix("matrix has non-finite entries")
        scale = 1.0 + float(np.max(np.abs(array)))
        asymmetry = float(np.max(np.abs(array - array.T)))
        if asymmetry > asymmetry_rel_tol * scale:
            raise InvalidMatrix(f"matrix is not symmetric (max |a_ij - a_ji| = {asymmetry:.3e})")
        return cls((array + array.T) / 2.0, clamped=clamped)

    @classmethod
    def identity(cls, dim: int) -> "SymmetricMatrix":
        return cls(np.eye(dim))

    @classmethod
    def diag(cls, values: Sequence[float]) -> "SymmetricMatrix":
        return cls(np.diag(np.asarray(values, dtype=np.float64)))

    @classmethod
    def scalar(cls, value: float) -> "SymmetricMatrix":
        return cls(np.array([[float(value)]]))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def max_norm(self) -> float:
        return float(np.max(np.abs(self.entries)))

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries))

    def item(self) -> float:
        if self.dim != 1:
            raise ShapeError(f"item() needs a 1x1 matrix, got dim {self.dim}")
        return float(self.entries[0, 0])

    def square(self) -> "SymmetricMatrix":
        return SymmetricMatrix.from_array(self.entries @ self.entries)

    def congruence(self, S: "SymmetricMatrix") -> "SymmetricMatrix":
        """Returns S A S for symmetric S."""
        self._check_same_dim(S)
        return SymmetricMatrix.from_array(S.entries @ self.entries @ S.entries)

    def _check_same_dim(self, other: "SymmetricMatrix") -> None:
        if self.dim != other.dim:
            raise ShapeError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, SymmetricMatrix):
            self._check_same_dim(other)
            return other.entries
        return float(other) * np.eye(self.dim)

    def __add__(self, other) -> "SymmetricMatrix":
        return SymmetricMatrix(self.entries + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> "SymmetricMatrix":
        return SymmetricMatrix(self.entries - self._coerce(other))

    def __rsub__(self, other) -> "SymmetricMatrix":
        return SymmetricMatrix(self._coerce(other) - self.entries)

    def __mul__(self, scalar: float) -> "SymmetricMatrix":
        return SymmetricMatrix(self.entries * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "SymmetricMatrix":
        return SymmetricMatrix(self.entries / float(scalar))

    def __neg__(self) -> "SymmetricMatrix":
        return SymmetricMatrix(-self.entries)

    def allclose(self, other: "SymmetricMatrix", atol: float = 1e-10) -> bool:
        return self.dim == other.dim and bool(np.allclose(self.entries, other.entries, rtol=0.0, atol=atol))

    def to_list(self) -> list:
        return self.entries.tolist()

    def __repr__(self) -> str:
        return f"SymmetricMatrix(dim={self.dim}, entries={self.entries.tolist()})"


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Ascending eigenvalues and orthogonal eigenvectors (as columns) of a SymmetricMatrix."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _frozen(self.eigenvalues))
        object.__setattr__(self, "eigenvectors", _frozen(self.eigenvectors))

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])

    def recompose(self, values: np.ndarray = None) -> SymmetricMatrix:
        """Q diag(values) Q^T; the stored eigenvalues when `values` is omitted."""
        values = self.eigenvalues if values is None else np.asarray(values, dtype=np.float64)
        Q = self.eigenvectors
        return SymmetricMatrix.from_array((Q * values) @ Q.T)
