"""
Non-commutative perspectives, relative operator entropies and quantum entropies.

P_f(A|B) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2} for strictly positive A and a pair
satisfying m A <= B <= M A. The chord correction

    K_{m,M}(A, B) = A #_2 B + M m A - (M + m) B

is negative semidefinite on every such pair and scales all the bounds below.
"""
import math
from typing import List, Optional

import numpy as np

from src.components.cdj_bounds import compare
from src.components.positive_maps import PositiveUnitalMap
from src.components.scalar_functions import catalog_lookup, chord_line, second_derivative_range
from src.components.spectral_core import (apply_scalar_function, eigendecompose, matrix_sqrt_inv_sqrt,
                                          power_of_inner, require_strictly_positive,
                                          strict_positivity_tolerance)
from src.constants import (DEGENERATE_INTERVAL_REL_TOL, ENTROPY_SLACK_TOL, LOEWNER_REL_TOL, TRACE_TOL, TSALLIS_P_MAX,
                           TSALLIS_P_MIN)
from src.entity.artifact_entity import EntropyBoundCheck, InequalityReport, ScalarCheck, TraceBoundsReport
from src.entity.operator_pair import DensityOperator, OperatorPair
from src.entity.scalar_function import ScalarFunction
from src.entity.symmetric_matrix import SymmetricMatrix
from src.exception import (BadParameter, DegenerateInterval, InvalidMatrix, SandwichViolated, ShapeError,
                           SpectrumNotEnclosed)

LOG = catalog_lookup("log")


def _check_p(p: float, low: float = TSALLIS_P_MIN) -> float:
    p = float(p)
    if not (low <= p <= TSALLIS_P_MAX) or p == 0.0:
        raise BadParameter(f"p must lie in [{low}, {TSALLIS_P_MAX}] without 0, got {p}")
    return p


def build_pair(A: SymmetricMatrix, B: SymmetricMatrix, m: Optional[float] = None, M: Optional[float] = None,
               rel_tol: float = LOEWNER_REL_TOL) -> OperatorPair:
    """
    Validates the sandwich m A <= B <= M A through the spectrum of A^{-1/2} B A^{-1/2};
    m and M default to its exact hull.
    """
    if A.dim != B.dim:
        raise ShapeError(f"pair needs equal dimensions, got {A.dim} and {B.dim}")
    a_half, a_inv_half = matrix_sqrt_inv_sqrt(A)
    inner = B.congruence(a_inv_half)
    values = eigendecompose(inner).eigenvalues
    low, high = float(values[0]), float(values[-1])
    m = low if m is None else float(m)
    M = high if M is None else float(M)
    tol = rel_tol * (1.0 + max(abs(low), abs(high)))
    if m > M or low < m - tol or high > M + tol:
        raise SandwichViolated(f"spectrum [{low!r}, {high!r}] of A^-1/2 B A^-1/2 is not inside [{m}, {M}]")
    return OperatorPair(A=A, B=B, m=m, M=M, a_half=a_half, a_inv_half=a_inv_half, inner=inner)


def _require_proper(pair: OperatorPair, positive: bool = False) -> None:
    if positive and not pair.m > 0:
        raise BadParameter(f"sandwich constant m must be positive, got {pair.m}")
    if pair.M - pair.m <= DEGENERATE_INTERVAL_REL_TOL * max(1.0, abs(pair.M)):
        raise DegenerateInterval(f"sandwich needs m < M, got m = {pair.m!r}, M = {pair.M!r}")


def perspective(pair: OperatorPair, f: ScalarFunction) -> SymmetricMatrix:
    return apply_scalar_function(pair.inner, f).congruence(pair.a_half)


def weighted_mean(pair: OperatorPair, p: float) -> SymmetricMatrix:
    """A #_p B = A^{1/2} (A^{-1/2} B A^{-1/2})^p A^{1/2}."""
    powered = power_of_inner(pair.inner, p)
    result = powered.congruence(pair.a_half)
    return SymmetricMatrix(result.entries, clamped=True) if powered.clamped else result


def chord_correction(pair: OperatorPair) -> SymmetricMatrix:
    """K_{m,M}(A, B) = A #_2 B + M m A - (M + m) B."""
    return weighted_mean(pair, 2) + pair.M * pair.m * pair.A - (pair.M + pair.m) * pair.B


def perspective_chord(pair: OperatorPair, f: ScalarFunction) -> SymmetricMatrix:
    """L_f(A|B) = ((B - m A) f(M) + (M A - B) f(m)) / (M - m)."""
    _require_proper(pair)
    line = chord_line(f, pair.m, pair.M)
    return ((pair.B - pair.m * pair.A) * line.f_M + (pair.M * pair.A - pair.B) * line.f_m) / (pair.M - pair.m)


def proposition31_bounds(pair: OperatorPair, f: ScalarFunction,
                         rel_tol: float = LOEWNER_REL_TOL) -> List[InequalityReport]:
    """beta/2 K_{m,M}(A,B) <= P_f(A|B) - L_f(A|B) <= alpha/2 K_{m,M}(A,B)."""
    _require_proper(pair)
    bounds = second_derivative_range(f, pair.m, pair.M)
    middle = perspective(pair, f) - perspective_chord(pair, f)
    correction = chord_correction(pair)
    return [
        compare("prop31_lower", bounds.beta / 2.0 * correction, middle, rel_tol),
        compare("prop31_upper", middle, bounds.alpha / 2.0 * correction, rel_tol),
    ]


def tsallis_relative_operator_entropy(pair: OperatorPair, p: float) -> SymmetricMatrix:
    """T_p(A|B) = (A #_p B - A) / p."""
    p = _check_p(p)
    return (weighted_mean(pair, p) - pair.A) / p


def relative_operator_entropy(pair: OperatorPair) -> SymmetricMatrix:
    """S(A|B) = A^{1/2} log(A^{-1/2} B A^{-1/2}) A^{1/2}."""
    return perspective(pair, LOG)


def tsallis_chord(pair: OperatorPair, p: float) -> SymmetricMatrix:
    m, M = pair.m, pair.M
    a_coefficient = M - m + M * m * (M ** (p - 1.0) - m ** (p - 1.0))
    return -(a_coefficient * pair.A - (M ** p - m ** p) * pair.B) / (p * (M - m))


def tsallis_entropy_bounds(pair: OperatorPair, p: float,
                           rel_tol: float = LOEWNER_REL_TOL) -> List[InequalityReport]:
    """
    Lt - (1-p)/(2 M^{2-p}) K_{m,M} <= T_p(A|B) <= Lt - (1-p)/(2 m^{2-p}) K_{m,M},
    Lt being the chord of (t^p - 1)/p through m and M.
    """
    p = _check_p(p)
    _require_proper(pair, positive=True)
    m, M = pair.m, pair.M
    line = tsallis_chord(pair, p)
    correction = chord_correction(pair)
    entropy = tsallis_relative_operator_entropy(pair, p)
    return [
        compare("tsallis_lower", line - (1.0 - p) / (2.0 * M ** (2.0 - p)) * correction, entropy, rel_tol),
        compare("tsallis_upper", entropy, line - (1.0 - p) / (2.0 * m ** (2.0 - p)) * correction, rel_tol),
    ]


def relative_entropy_chord(pair: OperatorPair) -> SymmetricMatrix:
    m, M = pair.m, pair.M
    return ((pair.B - m * pair.A) * math.log(M) + (M * pair.A - pair.B) * math.log(m)) / (M - m)


def relative_entropy_bounds(pair: OperatorPair, rel_tol: float = LOEWNER_REL_TOL) -> List[InequalityReport]:
    """Ls - K_{m,M}/(2 M^2) <= S(A|B) <= Ls - K_{m,M}/(2 m^2)."""
    _require_proper(pair, positive=True)
    m, M = pair.m, pair.M
    line = relative_entropy_chord(pair)
    correction = chord_correction(pair)
    entropy = relative_operator_entropy(pair)
    return [
        compare("relentropy_lower", line - correction / (2.0 * M * M), entropy, rel_tol),
        compare("relentropy_upper", entropy, line - correction / (2.0 * m * m), rel_tol),
    ]


def proposition32_bounds(pair: OperatorPair, phi: PositiveUnitalMap, f: ScalarFunction,
                         rel_tol: float = LOEWNER_REL_TOL) -> List[InequalityReport]:
    """
    Two-sided bound on P_f(phi(A)|phi(B)) - phi(P_f(A|B)) built from
    (M+m) phi(B) - M m phi(A) and the #_2 means of (A, B) and of their images.
    """
    _require_proper(pair)
    m, M = pair.m, pair.M
    bounds = second_derivative_range(f, m, M)
    alpha, beta = bounds.alpha, bounds.beta

    phi_A, phi_B = phi.apply(pair.A), phi.apply(pair.B)
    require_strictly_positive(phi_A, "phi(A)")
    image = build_pair(phi_A, phi_B, m, M, rel_tol)

    middle = perspective(image, f) - phi.apply(perspective(pair, f))
    linear = (M + m) * phi_B - M * m * phi_A
    mean_of_images = weighted_mean(image, 2)
    image_of_mean = phi.apply(weighted_mean(pair, 2))
    lower = (alpha - beta) / 2.0 * linear + 0.5 * (beta * mean_of_images - alpha * image_of_mean)
    upper = (beta - alpha) / 2.0 * linear + 0.5 * (alpha * mean_of_images - beta * image_of_mean)
    return [
        compare("prop32_lower", lower, middle, rel_tol),
        compare("prop32_upper", middle, upper, rel_tol),
    ]


'''
Density operators
'''


def build_density(rho: SymmetricMatrix, m: Optional[float] = None, M: Optional[float] = None) -> DensityOperator:
    trace_error = abs(rho.trace - 1.0)
    if trace_error > TRACE_TOL * rho.dim:
        raise InvalidMatrix(f"density operator needs unit trace, got trace {rho.trace!r}")
    decomposition = require_strictly_positive(rho, "density operator")
    low, high = decomposition.min_eigenvalue, decomposition.max_eigenvalue
    m = low if m is None else float(m)
    M = high if M is None else float(M)
    tol = strict_positivity_tolerance(rho)
    if not (0.0 < m <= M <= 1.0) or low < m - tol or high > M + tol:
        raise SpectrumNotEnclosed(f"[{m}, {M}] must satisfy 0 < m <= M <= 1 and enclose "
                                  f"the spectrum [{low!r}, {high!r}]")
    return DensityOperator(rho=rho, m=m, M=M)


def _spectrum(rho: DensityOperator) -> np.ndarray:
    return np.asarray(eigendecompose(rho.rho).eigenvalues)


def von_neumann_entropy(rho: DensityOperator) -> float:
    """S(rho) = -Tr[rho log rho]."""
    values = _spectrum(rho)
    values = values[values > 0.0]
    return float(-np.sum(values * np.log(values)))


def quantum_tsallis_entropy(rho: DensityOperator, p: float) -> float:
    """S_p(rho) = Tr[rho^{1-p} - rho] / p."""
    p = _check_p(p)
    values = _spectrum(rho)
    return float((np.sum(np.power(values, 1.0 - p)) - np.sum(values)) / p)


def _trace_of_product(X: SymmetricMatrix, Y: SymmetricMatrix) -> float:
    return float(np.sum(X.entries * Y.entries))


def tsallis_relative_quantum_entropy(rho: DensityOperator, sigma: DensityOperator, p: float) -> float:
    """D_p(rho|sigma) = Tr[rho - rho^{1-p} sigma^p] / p."""
    p = _check_p(p)
    if rho.dim != sigma.dim:
        raise ShapeError(f"rho and sigma differ in dimension: {rho.dim} vs {sigma.dim}")
    cross = _trace_of_product(power_of_inner(rho.rho, 1.0 - p), power_of_inner(sigma.rho, p))
    return (rho.rho.trace - cross) / p


def fyk_relation_check(rho: DensityOperator, sigma: DensityOperator, p: float,
                       tolerance: float = ENTROPY_SLACK_TOL) -> ScalarCheck:
    """D_p(rho|sigma) <= -Tr[T_p(rho|sigma)] for 0 < p <= 1."""
    p = _check_p(p, low=0.0)
    pair = build_pair(rho.rho, sigma.rho)
    return ScalarCheck(label="fyk_relation",
                       lower=tsallis_relative_quantum_entropy(rho, sigma, p),
                       upper=-tsallis_relative_operator_entropy(pair, p).trace,
                       tolerance=tolerance)


def remark32_trace_bounds(rho: DensityOperator, sigma: DensityOperator, p: float,
                          m: Optional[float] = None, M: Optional[float] = None,
                          tolerance: float = ENTROPY_SLACK_TOL) -> TraceBoundsReport:
    """
    Scalar bounds on Tr[T_p(rho|sigma)] for m rho <= sigma <= M rho, with
    C = rho^{-1/2} sigma rho^{-1/2} and Tr[rho #_2 sigma] = Tr[rho C^2]:

      (1-p)/2 (M^{p-2} - m^{p-2})(M + m - Mm) + (1-p)/2 (m^{p-2} - M^{p-2} Tr[rho C^2])
        <= Tr[T_p] <=
      (1-p)/2 (m^{p-2} - M^{p-2})(M + m - Mm) + (1-p)/2 (M^{p-2} - m^{p-2} Tr[rho C^2])

    For 0 < p <= 1 the negated lower bound also caps D_p(rho|sigma).
    """
    p = _check_p(p)
    pair = build_pair(rho.rho, sigma.rho, m, M)
    m, M = pair.m, pair.M
    if not m > 0:
        raise SandwichViolated(f"sandwich needs m > 0, got {m}")

    trace_tsallis = tsallis_relative_operator_entropy(pair, p).trace
    mean_trace = _trace_of_product(rho.rho, pair.inner.square())
    half = (1.0 - p) / 2.0
    at_m, at_M = m ** (p - 2.0), M ** (p - 2.0)
    lower = half * (at_M - at_m) * (M + m - M * m) + half * (at_m - at_M * mean_trace)
    upper = half * (at_m - at_M) * (M + m - M * m) + half * (at_M - at_m * mean_trace)

    dp_bound = fyk = None
    if p > 0:
        d_p = tsallis_relative_quantum_entropy(rho, sigma, p)
        dp_bound = ScalarCheck("remark32_dp_bound", lower=d_p, upper=-lower, tolerance=tolerance)
        fyk = ScalarCheck("fyk_relation", lower=d_p, upper=-trace_tsallis, tolerance=tolerance)
    return TraceBoundsReport(
        trace_tsallis=trace_tsallis,
        lower=ScalarCheck("remark32_lower", lower=lower, upper=trace_tsallis, tolerance=tolerance),
        upper=ScalarCheck("remark32_upper", lower=trace_tsallis, upper=upper, tolerance=tolerance),
        dp_bound=dp_bound,
        fyk_relation=fyk,
    )


def _entropy_check(label: str, entropy: float, bound: float, tolerance: float) -> EntropyBoundCheck:
    return EntropyBoundCheck(
        label=label, entropy=entropy, bound=bound,
        entropy_vs_bound=ScalarCheck(f"{label}_entropy", lower=bound, upper=entropy, tolerance=tolerance),
        bound_nonnegative=ScalarCheck(f"{label}_nonnegative", lower=0.0, upper=bound, tolerance=tolerance),
    )


def corollary32_bound(m: float, M: float, p: float) -> float:
    """(1-p)(M^{p+1} - m^{p+1})(1-M)(1-m) / (2 m^{p+1} M^{p+1})."""
    q = p + 1.0
    return (1.0 - p) * (M ** q - m ** q) * (1.0 - M) * (1.0 - m) / (2.0 * m ** q * M ** q)


def von_neumann_bound(m: float, M: float) -> float:
    """(M - m)(1 - M)(1 - m) / (2 m M)."""
    return (M - m) * (1.0 - M) * (1.0 - m) / (2.0 * m * M)


def corollary32_lower_bound(rho: DensityOperator, p: float,
                            tolerance: float = ENTROPY_SLACK_TOL) -> EntropyBoundCheck:
    """S_p(rho) >= corollary32_bound(m, M, p) >= 0, with [m, M] the enclosure carried by rho."""
    p = _check_p(p)
    return _entropy_check("corollary32", quantum_tsallis_entropy(rho, p), corollary32_bound(rho.m, rho.M, p),
                          tolerance)


def von_neumann_lower_bound(rho: DensityOperator, tolerance: float = ENTROPY_SLACK_TOL) -> EntropyBoundCheck:
    return _entropy_check("von_neumann_bound", von_neumann_entropy(rho), von_neumann_bound(rho.m, rho.M),
                          tolerance)


