"""Lin entropy: a one-bounded entropy functional built from JS divergence.

Lin entropy is the Jensen-Shannon divergence between the self-joint and the
self-product distributions of ``p``. It reduces to an expectation

    H*(p) = sum_x p(x) I*(p(x)),
    I*(a) = log2 sqrt(4 a^a / (a+1)^(a+1))
          = 1 + (a log2 a - (a+1) log2(a+1)) / 2,

where the second line is the form evaluated here. It is exact at ``a = 0``
and ``a = 1`` and avoids raising powers to powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import Distribution, WeightVector, as_masses
from .divergences import (
    _self_joint_array,
    _self_product_array,
    fsum,
    js_divergence,
    js_divergence_general,
    self_joint,
    self_product,
)
from .errors import OutOfRange, ZeroProbability, ZeroSize

_LN2 = math.log(2.0)
_LN4 = math.log(4.0)


def _check_prob(prob: float, *, allow_zero: bool = True, allow_one: bool = True) -> float:
    prob = float(prob)
    lo_ok = prob >= 0.0 if allow_zero else prob > 0.0
    hi_ok = prob <= 1.0 if allow_one else prob < 1.0
    if not (lo_ok and hi_ok):
        if prob == 0.0 and not allow_zero:
            raise ZeroProbability("derivative diverges at probability 0")
        raise OutOfRange(f"probability out of range: {prob!r}")
    return prob


def _surprisal(a: np.ndarray) -> np.ndarray:
    # a log2 a with 0 log 0 = 0; log1p keeps (a+1) log2(a+1) accurate near 0
    alog = np.zeros_like(a)
    pos = a > 0
    alog[pos] = a[pos] * np.log2(a[pos])
    return 1.0 + 0.5 * (alog - (a + 1.0) * np.log1p(a) / _LN2)


def lin_surprisal(prob: float) -> float:
    """Lin surprisal ``I*(prob)`` in bits, in ``[0, 1]``.

    Decreasing and strictly convex on ``[0, 1]`` with ``I*(0) = 1`` and
    ``I*(1) = 0``.
    """
    prob = _check_prob(prob)
    return float(_surprisal(np.array([prob]))[0])


def lin_surprisal_d1(prob: float) -> float:
    """``dI*/da = (ln a - ln(a+1)) / ln 4``; negative on ``(0, 1]``."""
    prob = _check_prob(prob, allow_zero=False)
    return (math.log(prob) - math.log1p(prob)) / _LN4


def lin_surprisal_d2(prob: float) -> float:
    """``d2I*/da2 = 1 / ((a^2 + a) ln 4)``; positive on ``(0, 1]``."""
    prob = _check_prob(prob, allow_zero=False)
    return 1.0 / ((prob * prob + prob) * _LN4)


def weighted_surprisal_d2(prob: float) -> float:
    """Second derivative of ``a I*(a)``, the per-symbol summand of H*.

        (2 (a+1) ln(a/(a+1)) + 1) / (2 (a+1) ln 2)

    Negative on ``(0, 1)``, so every summand, and hence H*, is strictly
    concave.
    """
    a = _check_prob(prob, allow_zero=False, allow_one=False)
    return (2.0 * (a + 1.0) * (math.log(a) - math.log1p(a)) + 1.0) / (2.0 * (a + 1.0) * _LN2)


@dataclass(frozen=True)
class SurprisalValue:
    probability: float
    value: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.probability <= 1.0:
            raise OutOfRange(f"probability out of range: {self.probability!r}")
        if not 0.0 <= self.value <= 1.0:
            raise OutOfRange(f"surprisal out of range: {self.value!r}")
        if (abs(self.value) <= 1e-12) != (abs(self.probability - 1.0) <= 1e-12):
            raise OutOfRange("surprisal vanishes exactly when the probability is one")


def surprisal_value(prob: float) -> SurprisalValue:
    return SurprisalValue(float(prob), lin_surprisal(prob))


def lin_entropy(p: Distribution) -> float:
    """Lin entropy of ``p`` in bits, from the expectation form.

    Zero-mass symbols are skipped. The result lies in ``[0, 1)`` and is zero
    exactly for degenerate distributions.
    """
    a = as_masses(p)
    a = a[a > 0]
    h = fsum(a * _surprisal(a))
    return h if h > 0.0 else 0.0


def lin_entropy_implicit(p: Distribution) -> float:
    """Lin entropy as ``JS(self_joint(p) || self_product(p))``.

    Builds the two N x N joint distributions explicitly, so it costs O(N^2);
    it exists as an independent route to :func:`lin_entropy`.
    """
    if isinstance(p, Distribution):
        return js_divergence(self_joint(p), self_product(p))
    a = as_masses(p)
    return js_divergence(_self_joint_array(a), _self_product_array(a))


def lin_entropy_uniform(n: int) -> float:
    """Closed form of H*(U_n), which equals ``I*(1/n)``."""
    if n < 1:
        raise ZeroSize(f"alphabet size must be positive, got {n}")
    x = 1.0 / n
    return 1.0 + 0.5 * (x * math.log2(x) - (x + 1.0) * math.log1p(x) / _LN2)


def logical_entropy(p: Distribution) -> float:
    """Probability that two independent draws from ``p`` differ: ``1 - sum p^2``."""
    a = as_masses(p)
    h = 1.0 - fsum(a * a)
    return h if h > 0.0 else 0.0


def squared_weights(p: Distribution) -> WeightVector:
    """Elementwise square of ``p``, deliberately left unnormalized."""
    return WeightVector(p.labels, tuple(m * m for m in p.masses))


def corollary_residual(p: Distribution) -> float:
    """``H*(p) - JS(p || p^2) - h(p)/2``, which vanishes identically.

    ``JS`` here is the averaged-KL expansion on unnormalized weights and
    ``h`` is logical entropy.
    """
    if isinstance(p, Distribution):
        js = js_divergence_general(WeightVector.from_distribution(p), squared_weights(p))
    else:
        a = as_masses(p)
        js = js_divergence_general(a, a * a)
    return lin_entropy(p) - js - 0.5 * logical_entropy(p)
