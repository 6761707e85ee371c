import math

import numpy as np
import pytest

from src.components.scalar_functions import (K_constant, catalog_lookup, catalog_names, chord_line, k_constant,
                                             kantorovich_power_constant, parse_function_spec, power_function,
                                             refinement_gap, second_derivative_range, tsallis_f, tsallis_g)
from src.entity.scalar_function import D2Shape
from src.exception import BadParameter, DomainViolation, NonPositiveFunction, UnknownFunction

INTERVALS = [(0.25, 3.8), (1.0, 2.0), (2.0, 8.0), (0.5, 0.6)]


def test_parse_function_spec():
    cube = parse_function_spec("power:3")
    assert cube(2.0) == pytest.approx(8.0)
    assert cube.label == "power:3.0"
    assert parse_function_spec(" log ").name == "log"
    assert parse_function_spec("affine:1,2")(3.0) == pytest.approx(7.0)
    assert "tsallis_f" in catalog_names()


@pytest.mark.parametrize("spec, error", [
    ("sinh", UnknownFunction),
    ("power:a", BadParameter),
    ("power", BadParameter),
    ("log:1", BadParameter),
    ("tsallis_f:0", BadParameter),
    ("tsallis_g:1.5", BadParameter),
])
def test_parse_function_spec_errors(spec, error):
    with pytest.raises(error):
        parse_function_spec(spec)


def test_second_derivative_shapes():
    assert power_function(2).deriv2_shape is D2Shape.CONSTANT
    assert power_function(3).deriv2_shape is D2Shape.NONDECREASING
    assert power_function(4).deriv2_shape is D2Shape.GENERAL
    assert power_function(-1).deriv2_shape is D2Shape.NONINCREASING
    assert power_function(0.5).deriv2_shape is D2Shape.NONDECREASING
    assert tsallis_f(0.5).deriv2_shape is D2Shape.NONINCREASING
    assert tsallis_g(-1.0).deriv2_shape is D2Shape.CONSTANT


def test_second_derivative_range_of_cube_on_example_interval():
    bounds = second_derivative_range(power_function(3), 0.25, 3.8)
    assert bounds.alpha == pytest.approx(1.5)
    assert bounds.beta == pytest.approx(22.8)


def test_second_derivative_range_finds_interior_minimum():
    bounds = second_derivative_range(power_function(4), -1.0, 2.0)
    assert bounds.alpha == pytest.approx(0.0, abs=1e-12)
    assert bounds.beta == pytest.approx(48.0)


@pytest.mark.parametrize("name, m, M, alpha, beta", [
    ("exp", 0.0, 1.0, 1.0, math.e),
    ("log", 0.5, 2.0, -4.0, -0.25),
    ("neg_log", 0.5, 2.0, 0.25, 4.0),
    ("inverse", 1.0, 2.0, 0.25, 2.0),
])
def test_second_derivative_range_of_monotone_shapes(name, m, M, alpha, beta):
    bounds = second_derivative_range(catalog_lookup(name), m, M)
    assert bounds.alpha == pytest.approx(alpha)
    assert bounds.beta == pytest.approx(beta)


def test_second_derivative_range_rejects_bad_intervals():
    with pytest.raises(DomainViolation):
        second_derivative_range(catalog_lookup("log"), -1.0, 1.0)
    with pytest.raises(BadParameter):
        second_derivative_range(power_function(3), 2.0, 2.0)


def test_chord_line_is_exact_at_endpoints():
    f = catalog_lookup("exp")
    line = chord_line(f, 0.3, 1.7)
    assert line(0.3) == float(f(0.3))
    assert line(1.7) == float(f(1.7))
    assert line.slope == pytest.approx((math.exp(1.7) - math.exp(0.3)) / 1.4)


def test_classical_kantorovich_constant():
    assert K_constant(power_function(-1), 2.0, 8.0) == pytest.approx(1.5625, rel=1e-10)
    assert kantorovich_power_constant(2.0, 8.0, -1.0) == pytest.approx(1.5625, rel=1e-12)


@pytest.mark.parametrize("r", [-1.0, 2.0, 3.0])
@pytest.mark.parametrize("m, M", INTERVALS)
def test_K_constant_agrees_with_closed_form(r, m, M):
    numeric = K_constant(power_function(r), m, M)
    assert numeric == pytest.approx(kantorovich_power_constant(m, M, r), rel=1e-8)
    assert numeric >= 1.0


@pytest.mark.parametrize("r", [0.25, 0.5, 0.75])
def test_closed_form_is_minimum_ratio_inside_unit_interval(r):
    for m, M in INTERVALS:
        closed = kantorovich_power_constant(m, M, r)
        assert closed <= 1.0
        assert k_constant(power_function(r), m, M) == pytest.approx(closed, rel=1e-8)


@pytest.mark.parametrize("spec", ["power:3", "power:4", "power:-1", "power:-2", "exp"])
def test_K_constant_at_least_one_for_convex_positive_functions(spec):
    f = parse_function_spec(spec)
    for m, M in INTERVALS:
        assert K_constant(f, m, M) >= 1.0 - 1e-12


def test_kantorovich_power_constant_edge_cases():
    assert kantorovich_power_constant(1.0, 3.0, 0.0) == 1.0
    assert kantorovich_power_constant(1.0, 3.0, 1.0) == 1.0
    with pytest.raises(BadParameter):
        kantorovich_power_constant(0.0, 3.0, 2.0)
    with pytest.raises(BadParameter):
        kantorovich_power_constant(3.0, 3.0, 2.0)


def test_chord_ratio_needs_positive_function():
    with pytest.raises(NonPositiveFunction):
        K_constant(catalog_lookup("log"), 0.5, 2.0)


def test_refinement_gap_vanishes_at_endpoints():
    gaps = refinement_gap(1.0, 3.0, np.array([1.0, 2.0, 3.0]))
    assert gaps.tolist() == [0.0, 1.0, 0.0]
