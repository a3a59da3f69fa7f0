import math

import numpy as np
import pytest
from hypothesis import given, settings

from linentropy.distributions import (
    JointDistribution,
    WeightVector,
    make_distribution,
    random_distribution,
    uniform_distribution,
)
from linentropy.divergences import (
    js_divergence,
    js_divergence_averaged_kl,
    js_divergence_general,
    kl_divergence,
    normalized_shannon_entropy,
    self_joint,
    self_product,
    shannon_entropy,
)
from linentropy.errors import AbsoluteContinuityViolated, LabelMismatch, SingletonAlphabet

from . import oracles
from .conftest import simplex_points

# frozen from the mpmath oracles (50 digits), rechecked below
KL_HALF_VS_QUARTER = 0.20751874963942191
JS_HALF_VS_POINT = 0.31127812445913286


def dist(*masses):
    return make_distribution([str(i) for i in range(len(masses))], masses)


def test_frozen_values_match_oracle():
    assert float(oracles.kl([0.5, 0.5], [0.25, 0.75])) == pytest.approx(KL_HALF_VS_QUARTER, abs=1e-16)
    assert float(oracles.js([0.5, 0.5], [1, 0])) == pytest.approx(JS_HALF_VS_POINT, abs=1e-16)


@pytest.mark.parametrize("p, expected", [(uniform_distribution(2), 1.0), (dist(1.0), 0.0), (uniform_distribution(8), 3.0)])
def test_shannon_entropy(p, expected):
    assert shannon_entropy(p) == pytest.approx(expected, abs=1e-15)


def test_shannon_entropy_ignores_zero_masses():
    assert shannon_entropy(dist(0.5, 0.0, 0.5)) == pytest.approx(1.0, abs=1e-15)


@given(simplex_points(max_size=64))
def test_shannon_entropy_range_and_oracle(a):
    h = shannon_entropy(a)
    assert 0.0 <= h <= math.log2(a.size) + 1e-12
    assert h == pytest.approx(float(oracles.shannon(a.tolist())), abs=1e-12)


@pytest.mark.parametrize(
    "p, expected",
    [(uniform_distribution(2), 1.0), (uniform_distribution(6), 1.0), (dist(0.5, 0.5, 0.0, 0.0), 0.5)],
)
def test_normalized_shannon_entropy(p, expected):
    assert normalized_shannon_entropy(p) == pytest.approx(expected, abs=1e-15)


def test_normalized_shannon_entropy_singleton():
    with pytest.raises(SingletonAlphabet):
        normalized_shannon_entropy(dist(1.0))


def test_kl_examples():
    p = random_distribution(7, 3)
    assert kl_divergence(p, p) == 0.0
    assert kl_divergence(dist(0.5, 0.5), dist(0.25, 0.75)) == pytest.approx(KL_HALF_VS_QUARTER, abs=1e-15)
    assert kl_divergence(dist(1.0, 0.0), dist(0.5, 0.5)) == pytest.approx(1.0, abs=1e-15)


def test_kl_zero_mass_terms_vanish_even_against_zero():
    assert kl_divergence(dist(1.0, 0.0), dist(1.0, 0.0)) == 0.0


def test_kl_errors():
    with pytest.raises(AbsoluteContinuityViolated):
        kl_divergence(dist(0.5, 0.5), dist(1.0, 0.0))
    with pytest.raises(LabelMismatch):
        kl_divergence(dist(0.5, 0.5), make_distribution(["x", "y"], [0.5, 0.5]))
    with pytest.raises(LabelMismatch):
        kl_divergence(dist(0.5, 0.5), dist(0.2, 0.3, 0.5))


@settings(max_examples=200)
@given(simplex_points(max_size=16, allow_zeros=False), simplex_points(max_size=16, allow_zeros=False))
def test_kl_nonnegative_with_equality_iff_equal(a, b):
    if a.size != b.size:
        return
    d = kl_divergence(a, b)
    assert d >= 0.0
    assert kl_divergence(a, a) <= 1e-12
    if np.abs(a - b).max() > 1e-3:
        assert d > 1e-12


@pytest.mark.parametrize(
    "p, expected",
    [
        (dist(0.5, 0.5), ((0.5, 0.0), (0.0, 0.5))),
        (dist(1.0), ((1.0,),)),
        (dist(0.2, 0.3, 0.5), ((0.2, 0.0, 0.0), (0.0, 0.3, 0.0), (0.0, 0.0, 0.5))),
    ],
)
def test_self_joint(p, expected):
    j = self_joint(p)
    assert isinstance(j, JointDistribution)
    assert j.masses == expected
    assert j.labels == p.labels


@pytest.mark.parametrize(
    "p, expected",
    [
        (dist(0.5, 0.5), [[0.25, 0.25], [0.25, 0.25]]),
        (dist(1.0), [[1.0]]),
        (dist(0.2, 0.8), [[0.04, 0.16], [0.16, 0.64]]),
    ],
)
def test_self_product(p, expected):
    assert np.allclose(self_product(p).array, expected, rtol=0, atol=1e-15)


@pytest.mark.parametrize("seed", range(40))
def test_entropy_is_kl_of_self_joint_from_self_product(seed):
    n = 1 + seed % 64 if seed < 20 else 64 - seed
    p = random_distribution(max(n, 1), seed)
    assert abs(shannon_entropy(p) - kl_divergence(self_joint(p), self_product(p))) <= 1e-12


def test_js_examples():
    p = random_distribution(5, 0)
    assert js_divergence(p, p) == 0.0
    assert js_divergence(dist(1.0, 0.0), dist(0.0, 1.0)) == 1.0
    assert js_divergence(dist(0.5, 0.5), dist(1.0, 0.0)) == pytest.approx(JS_HALF_VS_POINT, abs=1e-15)


def test_js_label_mismatch():
    with pytest.raises(LabelMismatch):
        js_divergence(dist(0.5, 0.5), make_distribution(["a", "b"], [0.5, 0.5]))


def test_js_works_on_joint_distributions():
    p = dist(0.3, 0.7)
    assert js_divergence(self_joint(p), self_product(p)) > 0.0


@settings(max_examples=300)
@given(simplex_points(max_size=24), simplex_points(max_size=24))
def test_js_properties(a, b):
    if a.size != b.size:
        b = np.resize(b, a.size)
        b = b / math.fsum(b.tolist()) if b.sum() > 0 else np.full(a.size, 1 / a.size)
    d = js_divergence(a, b)
    assert d == js_divergence(b, a)
    assert 0.0 <= d <= 1.0
    assert d == pytest.approx(float(oracles.js(a.tolist(), b.tolist())), abs=1e-12)
    assert abs(d - js_divergence_averaged_kl(a, b)) <= 1e-12


def test_js_general_examples():
    w = WeightVector(("a", "b", "c"), (0.1, 0.0, 0.3))
    assert js_divergence_general(w, w) == 0.0
    assert js_divergence_general(dist(0.5, 0.5), dist(1.0, 0.0)) == pytest.approx(JS_HALF_VS_POINT, abs=1e-15)


def test_js_general_against_squares_closes_the_decomposition():
    # h(U_2) = 1/2, H*(U_2) from the radical-form oracle
    p = uniform_distribution(2)
    sq = WeightVector(p.labels, (0.25, 0.25))
    value = js_divergence_general(WeightVector.from_distribution(p), sq)
    assert value + 0.25 == pytest.approx(float(oracles.lin_uniform(2)), abs=1e-15)


def test_js_general_label_mismatch():
    with pytest.raises(LabelMismatch):
        js_divergence_general(WeightVector(("a",), (1.0,)), WeightVector(("b",), (1.0,)))


@settings(max_examples=200)
@given(simplex_points(max_size=16))
def test_js_general_reduces_to_js_when_normalized(a):
    b = np.roll(a, 1)
    assert abs(js_divergence_general(a, b) - js_divergence(a, b)) <= 1e-12
