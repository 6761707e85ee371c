"""
Catalog of twice differentiable scalar functions and the constants built from them:
the range of f'' on [m, M], the chord line L, K(m,M,f), k(m,M,f) and the generalized
Kantorovich constant K(m,M,r).
"""
import math
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from src.constants import (EXTREMUM_GRID_POINTS, EXTREMUM_REFINE_BRACKETS, EXTREMUM_XATOL,
                           KANTOROVICH_SINGULAR_TOL, NONPOSITIVE_REL_TOL, TSALLIS_P_MAX, TSALLIS_P_MIN)
from src.entity.scalar_function import (POSITIVE_REALS, REALS, ChordLine, D2Shape,
                                        IntervalBounds, ScalarFunction)
from src.exception import BadParameter, DomainViolation, NonPositiveFunction, UnknownFunction


def _shape_from_sign(sign: float) -> D2Shape:
    if sign > 0:
        return D2Shape.NONDECREASING
    if sign < 0:
        return D2Shape.NONINCREASING
    return D2Shape.CONSTANT


def power_function(r: float) -> ScalarFunction:
    r = float(r)
    if not math.isfinite(r):
        raise BadParameter(f"power exponent must be finite, got {r}")
    c = r * (r - 1.0)
    integer = r.is_integer()

    if integer and r >= 0:
        domain = REALS
        if c == 0.0 or r == 2.0:
            shape = D2Shape.CONSTANT
        elif int(r - 2) % 2 == 1:
            shape = D2Shape.NONDECREASING
        else:
            shape = D2Shape.GENERAL
    else:
        domain = POSITIVE_REALS
        shape = _shape_from_sign(c * (r - 2.0))

    if r == 0.0:
        return ScalarFunction("power", lambda t: np.ones_like(t), lambda t: np.zeros_like(t),
                              domain, D2Shape.CONSTANT, (r,))
    return ScalarFunction(
        name="power",
        eval=lambda t: np.power(t, r),
        deriv2=lambda t: c * np.power(t, r - 2.0) if c != 0.0 else np.zeros_like(t),
        domain=domain,
        deriv2_shape=shape,
        params=(r,),
    )


def _check_tsallis_p(p: float) -> float:
    p = float(p)
    if not (TSALLIS_P_MIN <= p <= TSALLIS_P_MAX) or p == 0.0:
        raise BadParameter(f"Tsallis parameter p must lie in [-1, 1] without 0, got {p}")
    return p


def tsallis_f(p: float) -> ScalarFunction:
    """f_p(t) = (1 - t^p) / p, f_p''(t) = (1 - p) t^{p-2}."""
    p = _check_tsallis_p(p)
    shape = D2Shape.CONSTANT if p == 1.0 else D2Shape.NONINCREASING
    return ScalarFunction(
        name="tsallis_f",
        eval=lambda t: (1.0 - np.power(t, p)) / p,
        deriv2=lambda t: (1.0 - p) * np.power(t, p - 2.0),
        domain=POSITIVE_REALS,
        deriv2_shape=shape,
        params=(p,),
    )


def tsallis_g(p: float) -> ScalarFunction:
    """g_p(t) = (t - t^{1-p}) / p, g_p''(t) = (1 - p) t^{-p-1}."""
    p = _check_tsallis_p(p)
    shape = D2Shape.CONSTANT if p in (1.0, -1.0) else D2Shape.NONINCREASING
    return ScalarFunction(
        name="tsallis_g",
        eval=lambda t: (t - np.power(t, 1.0 - p)) / p,
        deriv2=lambda t: (1.0 - p) * np.power(t, -p - 1.0),
        domain=POSITIVE_REALS,
        deriv2_shape=shape,
        params=(p,),
    )


def affine_function(a: float, b: float) -> ScalarFunction:
    """f(t) = a + b t."""
    a, b = float(a), float(b)
    return ScalarFunction("affine", lambda t: a + b * t, lambda t: np.zeros_like(t),
                          REALS, D2Shape.CONSTANT, (a, b))


def _fixed(name: str, params: Sequence[float], expected: int) -> Tuple[float, ...]:
    if len(params) != expected:
        raise BadParameter(f"{name} takes {expected} parameter(s), got {list(params)}")
    return tuple(float(p) for p in params)


def _log(params):
    _fixed("log", params, 0)
    return ScalarFunction("log", np.log, lambda t: -1.0 / (t * t), POSITIVE_REALS, D2Shape.NONDECREASING)


def _neg_log(params):
    _fixed("neg_log", params, 0)
    return ScalarFunction("neg_log", lambda t: -np.log(t), lambda t: 1.0 / (t * t),
                          POSITIVE_REALS, D2Shape.NONINCREASING)


def _exp(params):
    _fixed("exp", params, 0)
    return ScalarFunction("exp", np.exp, np.exp, REALS, D2Shape.NONDECREASING)


def _inverse(params):
    _fixed("inverse", params, 0)
    return power_function(-1.0)


CATALOG: dict = {
    "power": lambda params: power_function(*_fixed("power", params, 1)),
    "inverse": _inverse,
    "log": _log,
    "neg_log": _neg_log,
    "exp": _exp,
    "tsallis_f": lambda params: tsallis_f(*_fixed("tsallis_f", params, 1)),
    "tsallis_g": lambda params: tsallis_g(*_fixed("tsallis_g", params, 1)),
    "affine": lambda params: affine_function(*_fixed("affine", params, 2)),
}


def catalog_lookup(name: str, params: Sequence[float] = ()) -> ScalarFunction:
    try:
        factory = CATALOG[name]
    except KeyError:
        raise UnknownFunction(f"unknown function {name!r}; known: {sorted(CATALOG)}") from None
    return factory(list(params))


def parse_function_spec(spec: str) -> ScalarFunction:
    """Parses 'name' or 'name:p1,p2' into a catalog function."""
    name, _, raw = spec.strip().partition(":")
    try:
        params = [float(token) for token in raw.split(",")] if raw else []
    except ValueError:
        raise BadParameter(f"cannot parse parameters of function spec {spec!r}") from None
    return catalog_lookup(name, params)


def _check_interval(f: ScalarFunction, m: float, M: float) -> None:
    if not m < M:
        raise BadParameter(f"interval needs m < M, got m={m}, M={M}")
    for endpoint in (m, M):
        if not f.domain.contains(endpoint):
            raise DomainViolation(f"[{m}, {M}] is not inside the domain {f.domain} of {f.label}",
                                  eigenvalue=endpoint)


def _grid(m: float, M: float) -> np.ndarray:
    grid = np.linspace(m, M, EXTREMUM_GRID_POINTS)
    grid[0], grid[-1] = m, M
    return grid


def _refined_minimum(objective: Callable[[np.ndarray], np.ndarray], m: float, M: float) -> Tuple[float, float]:
    """
    Minimum of a scalar objective on [m, M]: equispaced sampling, then bounded Brent
    refinement around the best few grid points.
    """
    grid = _grid(m, M)
    values = objective(grid)
    best_t, best_value = float(grid[np.argmin(values)]), float(np.min(values))

    for index in np.argsort(values, kind="stable")[:EXTREMUM_REFINE_BRACKETS]:
        left = float(grid[max(index - 1, 0)])
        right = float(grid[min(index + 1, grid.size - 1)])
        result = minimize_scalar(lambda t: float(objective(np.asarray(t))), bounds=(left, right),
                                 method="bounded", options={"xatol": EXTREMUM_XATOL})
        if result.success and result.fun < best_value:
            best_t, best_value = float(result.x), float(result.fun)
    return best_t, best_value


def _extrema(objective: Callable[[np.ndarray], np.ndarray], m: float, M: float) -> Tuple[float, float]:
    _, low = _refined_minimum(objective, m, M)
    _, negated_high = _refined_minimum(lambda t: -objective(t), m, M)
    return low, -negated_high


def second_derivative_range(f: ScalarFunction, m: float, M: float) -> IntervalBounds:
    _check_interval(f, m, M)
    if f.deriv2_shape is D2Shape.CONSTANT:
        value = float(f.second_derivative(m))
        return IntervalBounds(m=m, M=M, alpha=value, beta=value)
    if f.deriv2_shape.is_monotone:
        at_m, at_M = float(f.second_derivative(m)), float(f.second_derivative(M))
        return IntervalBounds(m=m, M=M, alpha=min(at_m, at_M), beta=max(at_m, at_M))
    alpha, beta = _extrema(f.second_derivative, m, M)
    return IntervalBounds(m=m, M=M, alpha=alpha, beta=beta)


def chord_line(f: ScalarFunction, m: float, M: float) -> ChordLine:
    _check_interval(f, m, M)
    return ChordLine(m=float(m), M=float(M), f_m=float(f(m)), f_M=float(f(M)))


def _chord_ratio(f: ScalarFunction, m: float, M: float) -> Callable[[np.ndarray], np.ndarray]:
    _check_interval(f, m, M)
    values = f(_grid(m, M))
    scale = max(1.0, float(np.max(np.abs(values))))
    if float(np.min(values)) < NONPOSITIVE_REL_TOL * scale:
        raise NonPositiveFunction(f"{f.label} is not positive on [{m}, {M}] "
                                  f"(min sampled value {float(np.min(values)):.3e})")
    line = chord_line(f, m, M)
    return lambda t: np.asarray(line(t)) / f(t)


def K_constant(f: ScalarFunction, m: float, M: float) -> float:
    """max of L(t)/f(t) on [m, M]."""
    return _extrema(_chord_ratio(f, m, M), m, M)[1]


def k_constant(f: ScalarFunction, m: float, M: float) -> float:
    """min of L(t)/f(t) on [m, M]."""
    return _extrema(_chord_ratio(f, m, M), m, M)[0]


def kantorovich_power_constant(m: float, M: float, r: float) -> float:
    """Generalized Kantorovich constant K(m, M, r); 1 at r = 0 and r = 1."""
    if not 0 < m < M:
        raise BadParameter(f"K(m, M, r) needs 0 < m < M, got m={m}, M={M}")
    r = float(r)
    if abs(r) < KANTOROVICH_SINGULAR_TOL or abs(r - 1.0) < KANTOROVICH_SINGULAR_TOL:
        return 1.0
    cross = m * M ** r - M * m ** r
    head = cross / ((r - 1.0) * (M - m))
    tail = ((r - 1.0) / r) * (M ** r - m ** r) / cross
    return head * tail ** r


def refinement_gap(m: float, M: float, t):
    """(M + m) t - m M - t^2 = (t - m)(M - t), the quadratic in the chord refinements."""
    t = np.asarray(t, dtype=np.float64)
    return (M + m) * t - m * M - t * t


def catalog_names() -> List[str]:
    return sorted(CATALOG)
