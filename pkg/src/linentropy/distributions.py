"""Probability distributions over finite, labelled alphabets.

Three containers live here:

* :class:`Distribution`, a probability mass function over an alphabet,
* :class:`JointDistribution`, a mass function over the product alphabet,
* :class:`WeightVector`, a nonnegative measure that need not sum to one.

All three validate on construction and are immutable afterwards. Masses are
stored as tuples of floats; :attr:`Distribution.array` exposes a read-only
numpy view for vectorized work.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    AllZeroCounts,
    DuplicateLabel,
    EmptyAlphabet,
    EmptyInput,
    InvalidWeights,
    NegativeMass,
    NotNormalized,
    ShapeMismatch,
    ZeroSize,
)

NORMALIZATION_TOL = 1e-9


def _check_labels(labels: tuple[str, ...]) -> None:
    if not labels:
        raise EmptyAlphabet("alphabet must contain at least one symbol")
    dupes = sorted(lab for lab, k in Counter(labels).items() if k > 1)
    if dupes:
        raise DuplicateLabel(f"duplicate labels: {dupes}")


def _check_masses(values: Iterable[float]) -> float:
    """Check nonnegativity and unit total; return the compensated total."""
    values = list(values)
    for i, m in enumerate(values):
        if m < 0:
            raise NegativeMass(f"mass at position {i} is negative: {m!r}")
    total = math.fsum(values)
    if not abs(total - 1.0) <= NORMALIZATION_TOL:
        raise NotNormalized(f"masses sum to {total!r}, not 1 (tolerance {NORMALIZATION_TOL:g})")
    return total


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Distribution:
    """A probability mass function over a finite alphabet.

    Zero masses are allowed and kept. Masses are never renormalized; a
    total further than ``NORMALIZATION_TOL`` from one is an error.
    """

    labels: tuple[str, ...]
    masses: tuple[float, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(lab) for lab in self.labels)
        masses = tuple(float(m) for m in self.masses)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "masses", masses)
        if len(labels) != len(masses):
            raise ShapeMismatch(f"{len(labels)} labels but {len(masses)} masses")
        _check_labels(labels)
        _check_masses(masses)

    def __len__(self) -> int:
        return len(self.masses)

    @cached_property
    def array(self) -> np.ndarray:
        return _readonly(np.asarray(self.masses, dtype=float))

    def mass(self, label: str) -> float:
        return self.masses[self.labels.index(label)]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.labels, self.masses))

    def argmax(self) -> str:
        """Label of the largest mass; the first one wins ties."""
        return self.labels[int(np.argmax(self.array))]

    def is_degenerate(self, tol: float = 0.0) -> bool:
        return max(self.masses) >= 1.0 - tol


@dataclass(frozen=True)
class JointDistribution:
    """A mass function over ``labels x labels``, stored as a square matrix."""

    labels: tuple[str, ...]
    masses: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        labels = tuple(str(lab) for lab in self.labels)
        rows = tuple(tuple(float(m) for m in row) for row in self.masses)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "masses", rows)
        _check_labels(labels)
        n = len(labels)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ShapeMismatch(f"joint masses must be a {n}x{n} matrix")
        flat = [m for row in rows for m in row]
        if any(m > 1.0 for m in flat):
            raise NotNormalized("joint mass entry exceeds 1")
        _check_masses(flat)

    @cached_property
    def array(self) -> np.ndarray:
        return _readonly(np.asarray(self.masses, dtype=float))

    @classmethod
    def from_array(cls, labels: Sequence[str], masses: np.ndarray) -> JointDistribution:
        return cls(tuple(labels), tuple(map(tuple, np.asarray(masses, dtype=float).tolist())))


@dataclass(frozen=True)
class WeightVector:
    """A nonnegative, not necessarily normalized measure over an alphabet."""

    labels: tuple[str, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(lab) for lab in self.labels)
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "weights", weights)
        if len(labels) != len(weights):
            raise ShapeMismatch(f"{len(labels)} labels but {len(weights)} weights")
        _check_labels(labels)
        if any(not math.isfinite(w) for w in weights):
            raise InvalidWeights("weights must be finite")
        if any(w < 0 for w in weights):
            raise NegativeMass("weights must be nonnegative")
        if not any(w > 0 for w in weights):
            raise InvalidWeights("at least one weight must be positive")

    @cached_property
    def array(self) -> np.ndarray:
        return _readonly(np.asarray(self.weights, dtype=float))

    @classmethod
    def from_distribution(cls, p: Distribution) -> WeightVector:
        return cls(p.labels, p.masses)


def make_distribution(labels: Sequence, masses: Sequence[float]) -> Distribution:
    """Build a validated :class:`Distribution`.

    Raises:
        EmptyAlphabet: no symbols were given.
        NegativeMass: a mass is below zero.
        NotNormalized: the masses do not sum to one within 1e-9.
        DuplicateLabel: two symbols share a label.
    """
    if len(labels) == 0 and len(masses) == 0:
        raise EmptyAlphabet("alphabet must contain at least one symbol")
    return Distribution(tuple(labels), tuple(masses))


def empirical_distribution(counts: Mapping[str, int]) -> Distribution:
    """Relative frequencies from a symbol -> count mapping.

    Labels are sorted lexicographically so that the result does not depend on
    the mapping's iteration order.
    """
    if not counts:
        raise EmptyInput("no counts given")
    labels = sorted(str(k) for k in counts)
    if len(labels) != len(counts):
        raise DuplicateLabel("labels collide after conversion to strings")
    by_label = {str(k): v for k, v in counts.items()}
    values = [by_label[lab] for lab in labels]
    for lab, c in zip(labels, values):
        if int(c) != c or c < 0:
            raise NegativeMass(f"count for {lab!r} must be a nonnegative integer, got {c!r}")
    total = sum(int(c) for c in values)
    if total == 0:
        raise AllZeroCounts("all counts are zero")
    return Distribution(tuple(labels), tuple(int(c) / total for c in values))


def uniform_distribution(n: int) -> Distribution:
    """The uniform distribution over ``n`` symbols labelled "0".."n-1"."""
    if n < 1:
        raise ZeroSize(f"alphabet size must be positive, got {n}")
    return Distribution(tuple(str(i) for i in range(n)), (1.0 / n,) * n)


def degenerate_distribution(n: int, index: int = 0) -> Distribution:
    if n < 1:
        raise ZeroSize(f"alphabet size must be positive, got {n}")
    masses = [0.0] * n
    masses[index] = 1.0
    return Distribution(tuple(str(i) for i in range(n)), tuple(masses))


def sample_simplex(rng: np.random.Generator, n: int) -> np.ndarray:
    """Draw a point uniformly from the (n-1)-simplex.

    Normalized unit-rate exponentials, i.e. a flat Dirichlet draw.
    """
    if n < 1:
        raise ZeroSize(f"alphabet size must be positive, got {n}")
    e = rng.standard_exponential(n)
    return e / math.fsum(e.tolist())


def random_distribution(n: int, seed: int) -> Distribution:
    """A seeded, uniformly random distribution over ``n`` symbols."""
    masses = sample_simplex(np.random.default_rng(seed), n)
    return Distribution(tuple(str(i) for i in range(n)), tuple(masses.tolist()))


def as_masses(p: Distribution | Sequence[float] | np.ndarray) -> np.ndarray:
    """Masses of ``p`` as a float array.

    Plain sequences are accepted for speed in bulk checks and are *not*
    validated; pass a :class:`Distribution` when validation matters.
    """
    if isinstance(p, Distribution):
        return p.array
    return np.asarray(p, dtype=float)
