"""Numerical checks of the entropy-functional properties I-VIII.

An *entropy functional* maps distributions to reals and must be

    I     nonnegative,
    II    continuous,
    III   symmetric (invariant under relabelling),
    IV    concave,
    V     an expectation ``sum p I(p)`` of a nonnegative, decreasing,
          strictly convex surprisal ``I``,
    VI    zero exactly on degenerate distributions,
    VII   uniquely maximized by the uniform distribution on a finite alphabet,
    VIII  strictly increasing in alphabet size under uniformity.

A ninth check, ``ONE_BOUNDED``, asks for ``H(p) <= 1``.

The checks are parameterized by a :class:`Functional` so that counterfeit
functionals (normalized Shannon entropy, logical entropy) can be run through
the same harness and fail exactly where they should.

Every check reduces to a list of *shortfalls*: how far a required inequality
``quantity >= threshold`` misses, floored at zero. Strict inequalities use
``SuiteConfig.margin`` as their threshold. A property passes iff its worst
shortfall is within its tolerance.
"""

from __future__ import annotations

import enum
import functools
import json
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .distributions import sample_simplex
from .divergences import (
    _self_joint_array,
    _self_product_array,
    fsum,
    kl_divergence,
    normalized_shannon_entropy,
)
from .errors import InvalidConfig, UnknownProperty
from .lin import lin_entropy, lin_entropy_implicit, lin_surprisal, logical_entropy


class Property(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"
    VIII = "VIII"
    ONE_BOUNDED = "ONE_BOUNDED"

    @property
    def title(self) -> str:
        return _TITLES[self]

    @classmethod
    def parse(cls, value) -> Property:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise UnknownProperty(f"unknown property: {value!r}") from None


_TITLES = {
    Property.I: "nonnegativity",
    Property.II: "continuity",
    Property.III: "symmetry",
    Property.IV: "concavity",
    Property.V: "expectation",
    Property.VI: "minimality",
    Property.VII: "maximality",
    Property.VIII: "monotonicity",
    Property.ONE_BOUNDED: "one-boundedness",
}

DEFAULT_TOLERANCES = {
    Property.I: 1e-12,
    # II reports the largest |H(p) - H(p')| seen; the tolerance is the bound on it
    Property.II: 0.01,
    Property.III: 1e-12,
    Property.IV: 1e-12,
    Property.V: 1e-12,
    Property.VI: 1e-12,
    Property.VII: 0.0,
    Property.VIII: 0.0,
    Property.ONE_BOUNDED: 1e-12,
}

CONTINUITY_RADIUS = 1e-3  # L1 distance between p and its perturbation
STRICT_L1 = 1e-3  # concavity pairs closer than this are only held to the weak inequality
UNIFORM_EXCLUSION = 1e-6  # L-inf radius around U_N excluded from maximality challengers
MAXIMALITY_MAX_N = 16
SURPRISAL_GRID = np.linspace(0.01, 0.99, 99)
CONVEXITY_STEP = 1e-3
LAMBDAS = tuple(k / 10 for k in range(1, 10))


@dataclass(frozen=True)
class Functional:
    """A candidate entropy functional.

    ``entropy`` maps a 1-D array of masses to a real. ``surprisal`` is the
    per-symbol function of the expectation form, if there is one.
    ``reference`` is an independent route to the same value, used to check
    the expectation form against something other than its own definition.
    """

    name: str
    entropy: Callable[[np.ndarray], float]
    surprisal: Callable[[float], float] | None = None
    reference: Callable[[np.ndarray], float] | None = None


def _normalized_shannon(a: np.ndarray) -> float:
    # the one-symbol alphabet is degenerate; 0 is the only sensible value here
    return 0.0 if a.size < 2 else normalized_shannon_entropy(a)


def _normalized_shannon_reference(a: np.ndarray) -> float:
    if a.size < 2:
        return 0.0
    return kl_divergence(_self_joint_array(a), _self_product_array(a)) / math.log2(a.size)


def _logical_reference(a: np.ndarray) -> float:
    # probability that two independent draws differ, summed pair by pair
    outer = np.outer(a, a)
    np.fill_diagonal(outer, 0.0)
    return fsum(outer)


LIN = Functional("lin", lin_entropy, lin_surprisal, lin_entropy_implicit)
NORMALIZED_SHANNON = Functional(
    "shannon-normalized", _normalized_shannon, None, _normalized_shannon_reference
)
LOGICAL = Functional("logical", logical_entropy, lambda a: 1.0 - a, _logical_reference)

FUNCTIONALS = {f.name: f for f in (LIN, NORMALIZED_SHANNON, LOGICAL)}
FUNCTIONALS["normalized-shannon"] = NORMALIZED_SHANNON


def get_functional(name: str) -> Functional:
    try:
        return FUNCTIONALS[name]
    except KeyError:
        raise InvalidConfig(
            f"unknown functional {name!r}; choose from {sorted(FUNCTIONALS)}"
        ) from None


@dataclass(frozen=True)
class SuiteConfig:
    trials: int = 1000
    max_alphabet: int = 64
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    margin: float = 1e-9
    sweep_max: int = 10_000

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise InvalidConfig("trials must be at least 1")
        if self.max_alphabet < 2:
            raise InvalidConfig("max_alphabet must be at least 2")
        if self.sweep_max < 2:
            raise InvalidConfig("sweep_max must be at least 2")
        if not self.margin > 0:
            raise InvalidConfig("margin must be positive")
        tols = dict(DEFAULT_TOLERANCES)
        tols.update({Property.parse(k): float(v) for k, v in self.tolerances.items()})
        object.__setattr__(self, "tolerances", tols)

    def tolerance(self, prop: Property) -> float:
        return self.tolerances[prop]

    def rng(self, prop: Property) -> np.random.Generator:
        # one independent stream per property, so check order never matters
        index = list(Property).index(prop)
        return np.random.default_rng([self.seed, index])


@dataclass(frozen=True)
class PropertyReport:
    property_id: Property
    passed: bool
    trials: int
    worst_violation: float
    tolerance: float
    witness: tuple[tuple[float, ...], ...] | None = None
    failed_checks: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "property": self.property_id.value,
            "name": self.property_id.title,
            "passed": self.passed,
            "trials": self.trials,
            "worst_violation": _json_float(self.worst_violation),
            "tolerance": self.tolerance,
            "failed_checks": list(self.failed_checks),
            "witness": None if self.witness is None else [list(w) for w in self.witness],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"{status}\t{self.property_id.value}\t{self.property_id.title}"
            f"\ttrials={self.trials}\tworst_violation={self.worst_violation:.6g}"
            f"\ttolerance={self.tolerance:.3g}"
        )
        if self.failed_checks:
            line += "\tfailed=" + ",".join(self.failed_checks)
        return line


def _json_float(x: float) -> float | str:
    # JSON has no infinities; keep the output strictly standard
    return x if math.isfinite(x) else repr(x)


class _Tally:
    """Collects shortfalls for one sub-check and remembers the worst witness."""

    def __init__(self, name: str, tolerance: float):
        self.name = name
        self.tolerance = tolerance
        self.trials = 0
        self.worst = 0.0
        self.witness: tuple | None = None

    def record(self, shortfall: float, *witness: Iterable[float]) -> None:
        self.trials += 1
        if math.isnan(shortfall):
            shortfall = math.inf
        if shortfall > self.worst or (self.witness is None and shortfall > self.tolerance):
            self.worst = shortfall
            self.witness = tuple(tuple(float(x) for x in w) for w in witness)

    def require(self, quantity: float, threshold: float, *witness) -> None:
        """Record the shortfall of ``quantity >= threshold``."""
        self.record(max(0.0, threshold - quantity), *witness)

    @property
    def passed(self) -> bool:
        return self.worst <= self.tolerance


def _report(prop: Property, cfg: SuiteConfig, tallies: Sequence[_Tally]) -> PropertyReport:
    failed = [t for t in tallies if not t.passed]
    worst = max(t.worst for t in tallies)
    witness = None
    if failed:
        worst_failed = max(failed, key=lambda t: t.worst)
        witness = worst_failed.witness or ()
    return PropertyReport(
        property_id=prop,
        passed=not failed,
        trials=sum(t.trials for t in tallies),
        worst_violation=worst,
        tolerance=cfg.tolerance(prop),
        witness=witness,
        failed_checks=tuple(t.name for t in failed),
    )


def _random_sizes(rng: np.random.Generator, cfg: SuiteConfig, low: int = 1) -> np.ndarray:
    return rng.integers(low, cfg.max_alphabet + 1, size=cfg.trials)


def _uniform(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


@functools.lru_cache(maxsize=8)
def _uniform_sweep(f: Functional, n_max: int) -> tuple[float, ...]:
    """``f(U_1), ..., f(U_n_max)``; shared by the monotonicity and bound checks."""
    return tuple(f.entropy(_uniform(n)) for n in range(1, n_max + 1))


def _check_nonnegativity(f: Functional, cfg: SuiteConfig) -> PropertyReport:
    rng = cfg.rng(Property.I)
    t = _Tally("nonnegativity", cfg.tolerance(Property.I))
    for n in _random_sizes(rng, cfg):
        p = sample_simplex(rng, int(n))
        t.require(f.entropy(p), 0.0, p)
    for n in range(1, cfg.max_alphabet + 1):
        p = _uniform(n)
        t.require(f.entropy(p), 0.0, p)
    return _report(Property.I, cfg, [t])


def _check_continuity(f: Functional, cfg: SuiteConfig) -> PropertyReport:
    rng = cfg.rng(Property.II)
    t = _Tally("modulus_of_continuity", cfg.tolerance(Property.II))
    for n in _random_sizes(rng, cfg):
        p = sample_simplex(rng, int(n))
        r = sample_simplex(rng, int(n))
        # ||p - p'||_1 = s ||p - r||_1 <= 2 s
        q = (1.0 - CONTINUITY_RADIUS / 2) * p + (CONTINUITY_RADIUS / 2) * r
        t.record(abs(f.entropy(p) - f.entropy(q)), p, q)
    return _report(Property.II, cfg, [t])


def _check_symmetry(f: Functional, cfg: SuiteConfig) -> PropertyReport:
    rng = cfg.rng(Property.III)
    t = _Tally("permutation_invariance", cfg.tolerance(Property.III))
    for n in _random_sizes(rng, cfg):
        p = sample_simplex(rng, int(n))
        q = p[rng.permutation(int(n))]
        t.record(abs(f.entropy(p) - f.entropy(q)), p, q)
    return _report(Property.III, cfg, [t])


def _check_concavity(f: Functional, cfg: SuiteConfig) -> PropertyReport:
    rng = cfg.rng(Property.IV)
    tol = cfg.tolerance(Property.IV)
    weak = _Tally("concavity", tol)
    strict = _Tally("strict_concavity", tol)
    for n in _random_sizes(rng, cfg, low=2):
        p = sample_simplex(rng, int(n))
        q = sample_simplex(rng, int(n))
        lam = LAMBDAS[int(rng.integers(len(LAMBDAS)))]
        mix = lam * p + (1.0 - lam) * q
        slack = f.entropy(mix) - (lam * f.entropy(p) + (1.0 - lam) * f.entropy(q))
        weak.require(slack, 0.0, p, q, (lam,))
        if np.abs(p - q).sum() >= STRICT_L1:
            strict.require(slack, cfg.margin, p, q, (lam,))
    return _report(Property.IV, cfg, [weak, strict])


def _check_expectation(f: Functional, cfg: SuiteConfig) -> PropertyReport:
    rng = cfg.rng(Property.V)
    tol = cfg.tolerance(Property.V)
    form = _Tally("expectation_form", tol)
    reference = _Tally("reference_agreement", tol)
    nonneg = _Tally("surprisal_nonnegative", tol)
    decreasing = _Tally("surprisal_decreasing", tol)
    convex = _Tally("surprisal_strictly_convex", tol)

    for n in _random_sizes(rng, cfg):
        p = sample_simplex(rng, int(n))
        h = f.entropy(p)
        if f.surprisal is None:
            form.record(math.inf, p)
        else:
            expected = math.fsum(float(x) * f.surprisal(float(x)) for x in p if x > 0)
            form.record(abs(h - expected), p)
        if f.reference is not None:
            reference.record(abs(h - f.reference(p)), p)

    tallies = [form, reference]
    if f.surprisal is not None:
        grid = [0.0, *SURPRISAL_GRID.tolist(), 1.0]
        values = [f.surprisal(x) for x in grid]
        for x, v in zip(grid, values):
            nonneg.require(v, 0.0, (x, 1.0 - x))
        for x, v0, v1 in zip(grid[1:], values, values[1:]):
            decreasing.require(v0 - v1, 0.0, (x, 1.0 - x))
        h = CONVEXITY_STEP
        for x in SURPRISAL_GRID.tolist():
            d2 = f.surprisal(x + h) + f.surprisal(x - h) - 2.0 * f.surprisal(x)
            convex.require(d2, cfg.margin, (x, 1.0 - x))
        tallies += [nonneg, decreasing, convex]
    return _report(Property.V, cfg, tallies)


def _check_minimality(f: Functional, cfg: SuiteConfig) -> PropertyReport:
    rng = cfg.rng(Property.VI)
    tol = cfg.tolerance(Property.VI)
    zero = _Tally("zero_at_degenerate", tol)
    positive = _Tally("positive_elsewhere", tol)
    for n in range(1, cfg.max_alphabet + 1):
        for i in range(n):
            p = np.zeros(n)
            p[i] = 1.0
            zero.record(abs(f.entropy(p)), p)
    for n in range(2, cfg.max_alphabet + 1):
        p = _uniform(n)
        positive.require(f.entropy(p), cfg.margin, p)
    for n in _random_sizes(rng, cfg, low=2):
        p = sample_simplex(rng, int(n))
        if p.max() >= 1.0 - 1e-12:
            continue
        positive.require(f.entropy(p), cfg.margin, p)
    return _report(Property.VI, cfg, [zero, positive])


def _check_maximality(f: Functional, cfg: SuiteConfig) -> PropertyReport:
    rng = cfg.rng(Property.VII)
    t = _Tally("uniform_beats_challengers", cfg.tolerance(Property.VII))
    for n in range(2, min(cfg.max_alphabet, MAXIMALITY_MAX_N) + 1):
        u = _uniform(n)
        hu = f.entropy(u)
        accepted = 0
        while accepted < cfg.trials:
            q = sample_simplex(rng, n)
            if np.abs(q - u).max() < UNIFORM_EXCLUSION:
                continue
            accepted += 1
            t.require(hu - f.entropy(q), cfg.margin, u, q)
    return _report(Property.VII, cfg, [t])


def _check_monotonicity(f: Functional, cfg: SuiteConfig) -> PropertyReport:
    t = _Tally("strict_increase", cfg.tolerance(Property.VIII))
    values = _uniform_sweep(f, cfg.sweep_max)
    for n, (prev, cur) in enumerate(zip(values, values[1:]), start=2):
        t.require(cur - prev, cfg.margin, (n - 1,), (n,))
    return _report(Property.VIII, cfg, [t])


def _check_one_bounded(f: Functional, cfg: SuiteConfig) -> PropertyReport:
    rng = cfg.rng(Property.ONE_BOUNDED)
    t = _Tally("bounded_by_one", cfg.tolerance(Property.ONE_BOUNDED))
    for n in _random_sizes(rng, cfg):
        p = sample_simplex(rng, int(n))
        t.require(1.0 - f.entropy(p), 0.0, p)
    # large uniforms are the hardest case; report the size, not the masses
    for n, h in enumerate(_uniform_sweep(f, cfg.sweep_max), start=1):
        t.require(1.0 - h, 0.0, (n,))
    return _report(Property.ONE_BOUNDED, cfg, [t])


_CHECKS = {
    Property.I: _check_nonnegativity,
    Property.II: _check_continuity,
    Property.III: _check_symmetry,
    Property.IV: _check_concavity,
    Property.V: _check_expectation,
    Property.VI: _check_minimality,
    Property.VII: _check_maximality,
    Property.VIII: _check_monotonicity,
    Property.ONE_BOUNDED: _check_one_bounded,
}


def check_property(
    prop: Property | str, cfg: SuiteConfig | None = None, functional: Functional = LIN
) -> PropertyReport:
    """Run one property check against ``functional``.

    Raises:
        UnknownProperty: ``prop`` names no property.
    """
    cfg = cfg or SuiteConfig()
    return _CHECKS[Property.parse(prop)](functional, cfg)


def run_suite(cfg: SuiteConfig | None = None, functional: Functional = LIN) -> list[PropertyReport]:
    """All nine checks in order I..VIII, ONE_BOUNDED."""
    cfg = cfg or SuiteConfig()
    return [check_property(prop, cfg, functional) for prop in Property]


def reports_to_jsonl(reports: Iterable[PropertyReport]) -> str:
    return "".join(r.to_json() + "\n" for r in reports)
