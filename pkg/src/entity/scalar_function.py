from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Tuple

import numpy as np

from src.exception import BadParameter

Evaluator = Callable[[np.ndarray], np.ndarray]


class D2Shape(str, Enum):
    NONDECREASING = "NondecreasingD2"
    NONINCREASING = "NonincreasingD2"
    CONSTANT = "ConstantD2"
    GENERAL = "GeneralD2"

    @property
    def is_monotone(self) -> bool:
        return self is not D2Shape.GENERAL


@dataclass(frozen=True)
class Interval:
    lo: float = -math.inf
    hi: float = math.inf
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, t: float) -> bool:
        above = t >= self.lo if self.lo_closed else t > self.lo
        below = t <= self.hi if self.hi_closed else t < self.hi
        return bool(above and below)

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


REALS = Interval()
POSITIVE_REALS = Interval(lo=0.0)


@dataclass(frozen=True)
class ScalarFunction:
    """
    A twice differentiable scalar function together with its closed-form second
    derivative. `eval` and `deriv2` take and return numpy arrays.
    """
    name: str
    eval: Evaluator = field(repr=False, compare=False)
    deriv2: Evaluator = field(repr=False, compare=False)
    domain: Interval = REALS
    deriv2_shape: D2Shape = D2Shape.GENERAL
    params: Tuple[float, ...] = ()

    def __call__(self, t):
        return self.eval(np.asarray(t, dtype=np.float64))

    def second_derivative(self, t):
        return self.deriv2(np.asarray(t, dtype=np.float64))

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}:{','.join(repr(p) for p in self.params)}"


@dataclass(frozen=True)
class IntervalBounds:
    """The interval [m, M] together with alpha <= f'' <= beta on it."""
    m: float
    M: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.m < self.M:
            raise BadParameter(f"interval needs m < M, got m={self.m}, M={self.M}")
        if self.alpha > self.beta:
            raise BadParameter(f"alpha={self.alpha} exceeds beta={self.beta}")


@dataclass(frozen=True)
class ChordLine:
    """L(t) = ((M - t) f(m) + (t - m) f(M)) / (M - m), exact at both endpoints."""
    m: float
    M: float
    f_m: float
    f_M: float

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        value = ((self.M - t) * self.f_m + (t - self.m) * self.f_M) / (self.M - self.m)
        value = np.where(t == self.m, self.f_m, value)
        value = np.where(t == self.M, self.f_M, value)
        return value if value.ndim else float(value)

    @property
    def slope(self) -> float:
        return (self.f_M - self.f_m) / (self.M - self.m)

    def of_matrix(self, X):
        """L applied to a SymmetricMatrix through the affine formula."""
        return ((self.M - X) * self.f_m + (X - self.m) * self.f_M) / (self.M - self.m)
