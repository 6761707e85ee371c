"""
Non-convex Choi-Davis-Jensen bounds.

For a unital positive map phi, a symmetric A with spectrum in [m, M] and a scalar f
with alpha <= f'' <= beta on [m, M], every check below builds both sides of a claimed
Loewner inequality and reports its verdict. Two quadratic correction terms recur:

    gap_of_square  = (M + m) phi(A) - M m - phi(A^2)
    gap_of_image   = (M + m) phi(A) - M m - phi(A)^2

and both are positive semidefinite whenever the spectrum of A lies in [m, M].
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from src.components.positive_maps import PositiveUnitalMap
from src.components.scalar_functions import (K_constant, chord_line, k_constant, kantorovich_power_constant,
                                             power_function, second_derivative_range)
from src.components.spectral_core import (apply_scalar_function, eigendecompose, eigenvalues,
                                          loewner_compare, matrix_inverse, require_strictly_positive)
from src.constants import LOEWNER_REL_TOL
from src.entity.artifact_entity import ChainReport, ImprovedKantorovichReport, InequalityReport
from src.entity.scalar_function import ChordLine, IntervalBounds, ScalarFunction
from src.entity.symmetric_matrix import SymmetricMatrix
from src.exception import (BadParameter, DegenerateInterval, NonPositiveConstant, NotStrictlyConvex,
                           SpectrumNotEnclosed)
from src.logger import logging


@dataclass(frozen=True, eq=False)
class CdjContext:
    A: SymmetricMatrix
    phi: PositiveUnitalMap
    f: ScalarFunction
    bounds: IntervalBounds
    line: ChordLine
    phi_A: SymmetricMatrix
    phi_A2: SymmetricMatrix
    phi_A_squared: SymmetricMatrix
    phi_fA: SymmetricMatrix
    f_phiA: SymmetricMatrix
    rel_tol: float = LOEWNER_REL_TOL

    @property
    def m(self) -> float:
        return self.bounds.m

    @property
    def M(self) -> float:
        return self.bounds.M

    @property
    def alpha(self) -> float:
        return self.bounds.alpha

    @property
    def beta(self) -> float:
        return self.bounds.beta

    @property
    def chord_at_phiA(self) -> SymmetricMatrix:
        return self.line.of_matrix(self.phi_A)

    @property
    def gap_of_square(self) -> SymmetricMatrix:
        return (self.M + self.m) * self.phi_A - self.M * self.m - self.phi_A2

    @property
    def gap_of_image(self) -> SymmetricMatrix:
        return (self.M + self.m) * self.phi_A - self.M * self.m - self.phi_A_squared


def compare(label: str, lhs: SymmetricMatrix, rhs: SymmetricMatrix,
            rel_tol: float = LOEWNER_REL_TOL) -> InequalityReport:
    """Report for the claim lhs <= rhs."""
    return InequalityReport(label=label, lhs=lhs, rhs=rhs, verdict=loewner_compare(lhs, rhs, rel_tol=rel_tol))


def _enclosing_interval(A: SymmetricMatrix, m: Optional[float], M: Optional[float],
                        rel_tol: float) -> Tuple[float, float]:
    low, high = (float(v) for v in eigenvalues(A)[[0, -1]])
    tol = rel_tol * (1.0 + A.max_norm)
    m = low if m is None else float(m)
    M = high if M is None else float(M)
    if m > low + tol or M < high - tol:
        raise SpectrumNotEnclosed(f"[{m}, {M}] does not enclose the spectrum [{low!r}, {high!r}] of A")
    if not m < M:
        raise DegenerateInterval(f"the chord needs m < M, got m={m}, M={M}")
    return m, M


def build_context(A: SymmetricMatrix, phi: PositiveUnitalMap, f: ScalarFunction,
                  m: Optional[float] = None, M: Optional[float] = None,
                  rel_tol: float = LOEWNER_REL_TOL) -> CdjContext:
    """
    Collects the terms shared by every bound. [m, M] defaults to the spectral hull
    of A; a user interval must enclose it.
    """
    m, M = _enclosing_interval(A, m, M, rel_tol)
    bounds = second_derivative_range(f, m, M)
    decomposition = eigendecompose(A)

    phi_A = phi.apply(A)
    image_low, image_high = (float(v) for v in eigenvalues(phi_A)[[0, -1]])
    tol = rel_tol * (1.0 + A.max_norm)
    if image_low < m - tol or image_high > M + tol:
        raise SpectrumNotEnclosed(f"spectrum [{image_low!r}, {image_high!r}] of phi(A) leaves [{m}, {M}]; "
                                  f"is the map unital?")

    context = CdjContext(
        A=A, phi=phi, f=f, bounds=bounds, line=chord_line(f, m, M),
        phi_A=phi_A,
        phi_A2=phi.apply(A.square()),
        phi_A_squared=phi_A.square(),
        phi_fA=phi.apply(apply_scalar_function(A, f, decomposition)),
        f_phiA=apply_scalar_function(phi_A, f),
        rel_tol=rel_tol,
    )
    logging.debug(f"context for {f.label} on [{m}, {M}]: alpha={bounds.alpha!r}, beta={bounds.beta!r}")
    return context


def lemma_chord_bounds(ctx: CdjContext) -> List[InequalityReport]:
    """The chord line corrected by alpha or beta bounds phi(f(A)) and f(phi(A)) on both sides."""
    L = ctx.chord_at_phiA
    half_alpha, half_beta = ctx.alpha / 2.0, ctx.beta / 2.0
    return [
        compare("lemma_i", ctx.phi_fA, L - half_alpha * ctx.gap_of_square, ctx.rel_tol),
        compare("lemma_ii", L - half_beta * ctx.gap_of_square, ctx.phi_fA, ctx.rel_tol),
        compare("lemma_iii", ctx.f_phiA, L - half_alpha * ctx.gap_of_image, ctx.rel_tol),
        compare("lemma_iv", L - half_beta * ctx.gap_of_image, ctx.f_phiA, ctx.rel_tol),
    ]


def _linear_part(ctx: CdjContext) -> SymmetricMatrix:
    return (ctx.beta - ctx.alpha) / 2.0 * ((ctx.M + ctx.m) * ctx.phi_A - ctx.M * ctx.m)


def theorem1_upper(ctx: CdjContext) -> InequalityReport:
    third = 0.5 * (ctx.alpha * ctx.phi_A_squared - ctx.beta * ctx.phi_A2)
    return compare("theorem1_upper", ctx.f_phiA, ctx.phi_fA + _linear_part(ctx) + third, ctx.rel_tol)


def theorem1_converse(ctx: CdjContext) -> InequalityReport:
    third = 0.5 * (ctx.alpha * ctx.phi_A2 - ctx.beta * ctx.phi_A_squared)
    return compare("theorem1_converse", ctx.phi_fA, ctx.f_phiA + _linear_part(ctx) + third, ctx.rel_tol)


def theorem1_third_term(ctx: CdjContext) -> Dict[str, float]:
    """Extreme eigenvalues of the third terms of both Theorem 1 bounds; their sign is not fixed."""
    upper = eigenvalues(0.5 * (ctx.alpha * ctx.phi_A_squared - ctx.beta * ctx.phi_A2))
    converse = eigenvalues(0.5 * (ctx.alpha * ctx.phi_A2 - ctx.beta * ctx.phi_A_squared))
    return {
        "upper_min_eig": float(upper[0]),
        "upper_max_eig": float(upper[-1]),
        "converse_min_eig": float(converse[0]),
        "converse_max_eig": float(converse[-1]),
    }


def plain_cdj(ctx: CdjContext) -> InequalityReport:
    """f(phi(A)) <= phi(f(A)), which needs operator convexity and may fail otherwise."""
    return compare("plain_cdj", ctx.f_phiA, ctx.phi_fA, ctx.rel_tol)


def theorem2_sandwich(ctx: CdjContext) -> List[InequalityReport]:
    K = K_constant(ctx.f, ctx.m, ctx.M)
    half_alpha = ctx.alpha / 2.0
    lower = (ctx.phi_fA + half_alpha * ctx.gap_of_square) / K
    upper = K * ctx.phi_fA - half_alpha * ctx.gap_of_image
    return [
        compare("theorem2_lower", lower, ctx.f_phiA, ctx.rel_tol),
        compare("theorem2_upper", ctx.f_phiA, upper, ctx.rel_tol),
    ]


def theorem2_k_version(ctx: CdjContext) -> List[InequalityReport]:
    k = k_constant(ctx.f, ctx.m, ctx.M)
    if k <= 0:
        raise NonPositiveConstant(f"k(m, M, f) = {k!r} for {ctx.f.label} on [{ctx.m}, {ctx.M}]")
    half_beta = ctx.beta / 2.0
    lower = k * ctx.phi_fA - half_beta * ctx.gap_of_image
    upper = (ctx.phi_fA + half_beta * ctx.gap_of_square) / k
    return [
        compare("kversion_lower", lower, ctx.f_phiA, ctx.rel_tol),
        compare("kversion_upper", ctx.f_phiA, upper, ctx.rel_tol),
    ]


def _chain(label: str, terms: List[SymmetricMatrix], rel_tol: float,
           prerequisites: Optional[List[InequalityReport]] = None) -> ChainReport:
    links = [compare(f"{label}_link{i + 1}", lo, hi, rel_tol) for i, (lo, hi) in enumerate(zip(terms, terms[1:]))]
    return ChainReport(label=label, terms=terms, links=links, prerequisites=prerequisites or [])


def _gap_prerequisites(ctx: CdjContext) -> List[InequalityReport]:
    zero = SymmetricMatrix.from_array(0.0 * ctx.phi_A.entries)
    return [
        compare("gap_of_square_psd", zero, ctx.gap_of_square, ctx.rel_tol),
        compare("gap_of_image_psd", zero, ctx.gap_of_image, ctx.rel_tol),
    ]


def corollary1_chain(ctx: CdjContext) -> ChainReport:
    """
    (1/K) phi(f(A)) <= (1/K){phi(f(A)) + alpha/2 gap_of_square} <= f(phi(A))
                    <= K phi(f(A)) - alpha/2 gap_of_image <= K phi(f(A))
    for f strictly convex (alpha > 0) and positive on [m, M].
    """
    if not ctx.alpha > 0:
        raise NotStrictlyConvex(f"{ctx.f.label} has min f'' = {ctx.alpha!r} on [{ctx.m}, {ctx.M}]")
    K = K_constant(ctx.f, ctx.m, ctx.M)
    half_alpha = ctx.alpha / 2.0
    terms = [
        ctx.phi_fA / K,
        (ctx.phi_fA + half_alpha * ctx.gap_of_square) / K,
        ctx.f_phiA,
        K * ctx.phi_fA - half_alpha * ctx.gap_of_image,
        K * ctx.phi_fA,
    ]
    return _chain("corollary1", terms, ctx.rel_tol, _gap_prerequisites(ctx))


def power_case(r: float) -> str:
    if r < -1.0 or r > 2.0:
        return "i"
    if -1.0 <= r <= 0.0 or 1.0 <= r <= 2.0:
        return "ii"
    return "iii"


def power_corollary(A: SymmetricMatrix, phi: PositiveUnitalMap, r: float, m: float, M: float,
                    rel_tol: float = LOEWNER_REL_TOL) -> ChainReport:
    """
    Chains for f(t) = t^r, split on r:
      i   r < -1 or r > 2: the five-term chain with gamma = r(r-1) min(m^{r-2}, M^{r-2})
      ii  r in [-1, 0] or [1, 2]: four terms closed by phi(A)^r <= phi(A^r)
      iii r in (0, 1): phi(A^r) <= phi(A)^r <= (1/K){phi(A^r) - c gap_of_square} <= (1/K) phi(A^r)
          with c = r(1-r) / (2 M^{2-r}); here K(m, M, r) <= 1 is the minimum of L/f.
    Every chain is listed in ascending Loewner order.
    """
    if not 0 < m < M:
        raise BadParameter(f"power corollary needs 0 < m < M, got m={m}, M={M}")
    r = float(r)
    ctx = build_context(A, phi, power_function(r), m, M, rel_tol)
    K = kantorovich_power_constant(m, M, r)
    case = power_case(r)
    label = f"power_corollary_{case}"

    if case == "iii":
        c = r * (1.0 - r) / (2.0 * M ** (2.0 - r))
        terms = [ctx.phi_fA, ctx.f_phiA, (ctx.phi_fA - c * ctx.gap_of_square) / K, ctx.phi_fA / K]
        return _chain(label, terms, rel_tol, _gap_prerequisites(ctx))

    gamma = r * (r - 1.0) * min(m ** (r - 2.0), M ** (r - 2.0))
    head = [ctx.phi_fA / K, (ctx.phi_fA + gamma / 2.0 * ctx.gap_of_square) / K, ctx.f_phiA]
    if case == "i":
        terms = head + [K * ctx.phi_fA - gamma / 2.0 * ctx.gap_of_image, K * ctx.phi_fA]
    else:
        terms = head + [ctx.phi_fA]
    return _chain(label, terms, rel_tol, _gap_prerequisites(ctx))


def classical_kantorovich_constant(m: float, M: float) -> float:
    return (M + m) ** 2 / (4.0 * M * m)


def improved_kantorovich(A: SymmetricMatrix, phi: PositiveUnitalMap, m: Optional[float] = None,
                         M: Optional[float] = None, rel_tol: float = LOEWNER_REL_TOL) -> ImprovedKantorovichReport:
    """
    phi(A^-1) <= (M+m)^2/(4Mm) phi(A)^-1 - gap_of_square / M^3, against the classical
    bound without the correction.
    """
    require_strictly_positive(A, "A")
    m, M = _enclosing_interval(A, m, M, rel_tol)
    if not m > 0:
        raise BadParameter(f"Kantorovich bounds need m > 0, got m={m}")

    phi_A = phi.apply(A)
    phi_inv = phi.apply(matrix_inverse(A))
    gap = (M + m) * phi_A - M * m - phi.apply(A.square())
    classical_rhs = classical_kantorovich_constant(m, M) * matrix_inverse(phi_A)
    improved_rhs = classical_rhs - gap / M ** 3

    return ImprovedKantorovichReport(
        improved=compare("improved_kantorovich", phi_inv, improved_rhs, rel_tol),
        improvement=compare("kantorovich_improvement", improved_rhs, classical_rhs, rel_tol),
        classical=compare("classical_kantorovich", phi_inv, classical_rhs, rel_tol),
    )
