"""Classical information measures in bits.

Shannon entropy, Kullback-Leibler and Jensen-Shannon divergences, and the
self-joint / self-product constructions that tie entropy to divergence.

Functions accept the typed containers from :mod:`linentropy.distributions`.
For bulk numerical work they also accept raw arrays of masses (joint masses
as 2-D arrays); those are trusted as-is. Every sum goes through
:func:`math.fsum`.
"""

from __future__ import annotations

import math

import numpy as np

from .distributions import Distribution, JointDistribution, WeightVector
from .errors import AbsoluteContinuityViolated, LabelMismatch, SingletonAlphabet


def xlog2x(a: np.ndarray) -> np.ndarray:
    """Elementwise ``a * log2(a)`` with ``0 log 0 = 0``."""
    a = np.asarray(a, dtype=float)
    out = np.zeros_like(a)
    pos = a > 0
    out[pos] = a[pos] * np.log2(a[pos])
    return out


def fsum(a: np.ndarray) -> float:
    return math.fsum(np.ravel(a).tolist())


def _values(x) -> np.ndarray:
    if isinstance(x, (Distribution, JointDistribution, WeightVector)):
        return x.array
    return np.asarray(x, dtype=float)


def _pair(p, q) -> tuple[np.ndarray, np.ndarray]:
    lp = getattr(p, "labels", None)
    lq = getattr(q, "labels", None)
    if lp is not None and lq is not None and lp != lq:
        raise LabelMismatch(f"label sets differ: {lp} vs {lq}")
    a, b = _values(p), _values(q)
    if a.shape != b.shape:
        raise LabelMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return a, b


def shannon_entropy(p) -> float:
    """``-sum p log2 p`` in bits; zero masses contribute nothing."""
    h = -fsum(xlog2x(_values(p)))
    return h if h > 0.0 else 0.0


def normalized_shannon_entropy(p) -> float:
    """Shannon entropy divided by ``log2 N``, where ``N`` counts every symbol.

    Raises:
        SingletonAlphabet: ``N == 1``, where the quotient is 0/0.
    """
    n = _values(p).size
    if n < 2:
        raise SingletonAlphabet("normalized entropy is undefined for a one-symbol alphabet")
    return shannon_entropy(p) / math.log2(n)


def kl_divergence(p, q) -> float:
    """``sum p log2(p/q)``; coordinates with ``p == 0`` contribute zero.

    Raises:
        LabelMismatch: the arguments live on different alphabets.
        AbsoluteContinuityViolated: ``p > 0`` somewhere that ``q == 0``.
    """
    a, b = _pair(p, q)
    pos = a > 0
    if np.any(b[pos] <= 0):
        raise AbsoluteContinuityViolated("q vanishes where p has mass")
    ap, bp = a[pos], b[pos]
    d = fsum(ap * (np.log2(ap) - np.log2(bp)))
    return d if d > 0.0 else 0.0


def _self_joint_array(m: np.ndarray) -> np.ndarray:
    return np.diag(m)


def _self_product_array(m: np.ndarray) -> np.ndarray:
    return np.outer(m, m)


def self_joint(p: Distribution) -> JointDistribution:
    """Joint law of X with a deterministic copy of itself: ``diag(p)``."""
    return JointDistribution.from_array(p.labels, _self_joint_array(p.array))


def self_product(p: Distribution) -> JointDistribution:
    """Joint law of X with an independent copy of itself: ``outer(p, p)``."""
    return JointDistribution.from_array(p.labels, _self_product_array(p.array))


def js_divergence(p, q) -> float:
    """Jensen-Shannon divergence as the entropy gap of the midpoint mixture.

    ``H((p+q)/2) - (H(p)+H(q))/2``. Both steps are commutative in floating
    point, so the result is exactly symmetric. No absolute continuity is
    required. Rounding below zero is clipped.
    """
    a, b = _pair(p, q)
    mix = 0.5 * a + 0.5 * b
    gap = shannon_entropy(mix) - 0.5 * (shannon_entropy(a) + shannon_entropy(b))
    return gap if gap > 0.0 else 0.0


def js_divergence_averaged_kl(p, q) -> float:
    """JS divergence via ``KL(p||m)/2 + KL(q||m)/2``; a cross-check route."""
    a, b = _pair(p, q)
    mix = 0.5 * a + 0.5 * b
    return 0.5 * kl_divergence(a, mix) + 0.5 * kl_divergence(b, mix)


def js_divergence_general(a, b) -> float:
    """Averaged-KL JS expansion applied to unnormalized weights.

    ``(1/2)[sum a log2(a/m) + sum b log2(b/m)]`` with ``m = (a+b)/2`` and
    terms with zero weight dropped. For normalized inputs this equals
    :func:`js_divergence`; for unnormalized ones it can be negative.
    """
    x, y = _pair(a, b)
    if np.any(x < 0) or np.any(y < 0):
        raise ValueError("weights must be nonnegative")
    mix = 0.5 * x + 0.5 * y
    terms = []
    for w in (x, y):
        pos = w > 0
        wp = w[pos]
        terms.append(wp * (np.log2(wp) - np.log2(mix[pos])))
    return 0.5 * fsum(np.concatenate(terms))
