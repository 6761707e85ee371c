from dataclasses import dataclass

from src.entity.symmetric_matrix import SymmetricMatrix


@dataclass(frozen=True, eq=False)
class OperatorPair:
    """
    A strictly positive A and a positive B with m A <= B <= M A.

    `inner` is A^{-1/2} B A^{-1/2}; `a_half` and `a_inv_half` are the square root of
    A and its inverse. Build instances with perspectives_entropies.build_pair.
    """
    A: SymmetricMatrix
    B: SymmetricMatrix
    m: float
    M: float
    a_half: SymmetricMatrix
    a_inv_half: SymmetricMatrix
    inner: SymmetricMatrix

    @property
    def dim(self) -> int:
        return self.A.dim


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Strictly positive unit-trace rho with 0 < m <= Sp(rho) <= M <= 1."""
    rho: SymmetricMatrix
    m: float
    M: float

    @property
    def dim(self) -> int:
        return self.rho.dim
