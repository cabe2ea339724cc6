import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudoboson.exceptions import QuadratureError
from pseudoboson.quadrature import LAGUERRE_MAX_ORDER, gauss_hermite, gauss_hermite_extended, gauss_laguerre, polar_rule


def hermite_moment(k):
    # ∫ x^k exp(-x^2) dx = Γ((k+1)/2) for even k
    return 0.0 if k % 2 else math.gamma((k + 1) / 2)


def test_order_one_and_two_closed_forms():
    r1 = gauss_hermite(1)
    assert r1.nodes.tolist() == [0.0]
    assert r1.weights[0] == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    r2 = gauss_hermite(2)
    np.testing.assert_allclose(r2.nodes, [-1 / math.sqrt(2), 1 / math.sqrt(2)], rtol=1e-15)
    np.testing.assert_allclose(r2.weights, [math.sqrt(math.pi) / 2] * 2, rtol=1e-15)
    l1 = gauss_laguerre(1)
    assert l1.nodes[0] == pytest.approx(1.0) and l1.weights[0] == pytest.approx(1.0)
    l2 = gauss_laguerre(2)
    np.testing.assert_allclose(l2.nodes, [2 - math.sqrt(2), 2 + math.sqrt(2)], rtol=1e-14)


@given(st.integers(1, 60))
@settings(max_examples=30, deadline=None)
def test_hermite_rule_is_exact_to_degree_2k_minus_1(order):
    rule = gauss_hermite(order)
    # symmetric nodes and positive weights
    assert np.all(rule.nodes == -rule.nodes[::-1])
    assert np.all(rule.weights > 0)
    for k in range(0, min(2 * order, 30)):
        terms = rule.weights * rule.nodes**k
        scale = np.sum(np.abs(terms))
        assert abs(np.sum(terms) - hermite_moment(k)) <= 1e-13 * scale


@given(st.integers(1, 40))
@settings(max_examples=25, deadline=None)
def test_laguerre_moments(order):
    rule = gauss_laguerre(order)
    for k in range(0, min(2 * order, 20)):
        assert np.sum(rule.weights * rule.nodes**k) == pytest.approx(math.factorial(k), rel=1e-10)


def test_extended_rule_agrees_with_double():
    for order in (5, 40, 120):
        a, b = gauss_hermite(order), gauss_hermite_extended(order)
        np.testing.assert_allclose(b.nodes.astype(float), a.nodes, rtol=1e-12, atol=1e-14)
        # double Golub-Welsch weights are accurate relative to the largest one
        np.testing.assert_allclose(b.weights.astype(float), a.weights, rtol=1e-9, atol=1e-14 * a.weights.max())


def test_rules_are_cached_and_read_only():
    assert gauss_hermite(17) is gauss_hermite(17)
    with pytest.raises(ValueError):
        gauss_hermite(17).nodes[0] = 1.0


@pytest.mark.parametrize("order", [0, -3, 201, 2.5, True])
def test_invalid_orders(order):
    with pytest.raises(QuadratureError):
        gauss_hermite(order)
    with pytest.raises(QuadratureError):
        gauss_laguerre(order)


def test_weights_stay_positive_up_to_the_order_limits():
    assert np.all(gauss_hermite(200).weights > 0)
    assert np.all(gauss_laguerre(LAGUERRE_MAX_ORDER).weights > 0)
    assert np.all(np.diff(gauss_laguerre(LAGUERRE_MAX_ORDER).nodes) > 0)
    with pytest.raises(QuadratureError):
        gauss_laguerre(LAGUERRE_MAX_ORDER + 1)


def test_polar_rule_monomials():
    rule = polar_rule(10, 20)
    z = rule.nodes
    for n in range(10):
        for m in range(10):
            got = np.sum(rule.weights * z**n * np.conj(z) ** m)
            want = math.factorial(n) if n == m else 0.0
            assert abs(got - want) <= 1e-10 * max(1.0, want)


def test_polar_rule_rejects_bad_orders():
    with pytest.raises(QuadratureError):
        polar_rule(0, 4)
    with pytest.raises(QuadratureError):
        polar_rule(4, 0)
