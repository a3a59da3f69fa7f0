import json
import math

import numpy as np
import pytest

from linentropy.errors import InvalidConfig, UnknownProperty
from linentropy.lin import lin_entropy, lin_surprisal
from linentropy.verification import (
    LIN,
    LOGICAL,
    NORMALIZED_SHANNON,
    Functional,
    Property,
    SuiteConfig,
    check_property,
    get_functional,
    reports_to_jsonl,
    run_suite,
)

SMALL = SuiteConfig(trials=50, max_alphabet=16, seed=3, sweep_max=500)


def _faulty_on_coin(a):
    if a.size == 2 and a[0] == a[1] == 0.5:
        return 0.0
    return lin_entropy(a)


FAULTY = Functional("faulty", _faulty_on_coin, lin_surprisal)


def _check_report_invariants(r):
    assert r.passed == (r.worst_violation <= r.tolerance)
    assert (r.witness is not None) == (not r.passed)
    assert (len(r.failed_checks) > 0) == (not r.passed)


def test_monotonicity_default_config():
    r = check_property(Property.VIII)
    assert r.passed
    assert r.worst_violation == 0.0
    assert r.trials == 9_999


def test_nonnegativity_default_config():
    r = check_property("I")
    assert r.passed and r.worst_violation == 0.0


def test_fault_injection_minimality():
    r = check_property(Property.VI, SMALL, FAULTY)
    assert not r.passed
    assert r.witness == ((0.5, 0.5),)
    _check_report_invariants(r)


def test_unknown_property():
    with pytest.raises(UnknownProperty):
        check_property("IX")
    with pytest.raises(UnknownProperty):
        Property.parse("nonsense")


def test_property_parse_is_case_insensitive():
    assert Property.parse("viii") is Property.VIII
    assert Property.parse(Property.V) is Property.V


@pytest.mark.parametrize(
    "kwargs", [{"trials": 0}, {"max_alphabet": 1}, {"sweep_max": 1}, {"margin": 0.0}]
)
def test_invalid_config(kwargs):
    with pytest.raises(InvalidConfig):
        SuiteConfig(**kwargs)


def test_tolerance_overrides():
    cfg = SuiteConfig(tolerances={"II": 1e-6})
    assert cfg.tolerance(Property.II) == 1e-6
    assert cfg.tolerance(Property.I) == 1e-12
    # the modulus of continuity exceeds 1e-6 at this radius, so the tighter bound fails
    assert not check_property(Property.II, cfg).passed


def test_default_suite_passes():
    reports = run_suite()
    assert [r.property_id for r in reports] == list(Property)
    assert len(reports) == 9
    assert all(r.passed for r in reports), [r.summary_line() for r in reports if not r.passed]
    for r in reports:
        _check_report_invariants(r)


def test_single_trial_suite_is_deterministic():
    cfg = SuiteConfig(trials=1, seed=5, sweep_max=100)
    a, b = run_suite(cfg), run_suite(cfg)
    assert len(a) == 9
    assert reports_to_jsonl(a) == reports_to_jsonl(b)


def test_seeded_reports_are_byte_identical():
    cfg = SuiteConfig(trials=30, seed=11, sweep_max=200)
    assert reports_to_jsonl(run_suite(cfg)) == reports_to_jsonl(run_suite(cfg))


def test_different_seeds_change_the_draws():
    a = check_property(Property.II, SuiteConfig(trials=30, seed=1))
    b = check_property(Property.II, SuiteConfig(trials=30, seed=2))
    assert a.worst_violation != b.worst_violation


def test_property_streams_are_independent_of_order():
    cfg = SuiteConfig(trials=20, seed=9, sweep_max=100)
    suite = run_suite(cfg)
    alone = check_property(Property.IV, cfg)
    assert suite[list(Property).index(Property.IV)] == alone


def test_normalized_shannon_fails_monotonicity():
    r = check_property(Property.VIII, SMALL, NORMALIZED_SHANNON)
    assert not r.passed
    assert r.failed_checks == ("strict_increase",)
    _check_report_invariants(r)


def test_logical_entropy_fails_only_strict_convexity():
    reports = {r.property_id: r for r in run_suite(SMALL, LOGICAL)}
    v = reports.pop(Property.V)
    assert not v.passed
    assert v.failed_checks == ("surprisal_strictly_convex",)
    assert all(r.passed for r in reports.values()), [
        r.summary_line() for r in reports.values() if not r.passed
    ]


def test_lin_passes_small_suite():
    assert all(r.passed for r in run_suite(SMALL, LIN))


@pytest.mark.parametrize(
    "functional, prop",
    [
        # a convex functional: negated Lin entropy shifted up
        (Functional("convex", lambda a: 1.0 - lin_entropy(a)), Property.IV),
        # depends on symbol order
        (Functional("ordered", lambda a: lin_entropy(a) + 1e-6 * float(a[0])), Property.III),
        # too large
        (Functional("scaled", lambda a: 2.0 * lin_entropy(a)), Property.ONE_BOUNDED),
        # nonzero on degenerate distributions over larger alphabets
        (Functional("offset", lambda a: lin_entropy(a) + 0.1 * float(a.size > 3)), Property.VI),
        # wrong surprisal attached to a correct entropy
        (Functional("mislabelled", lin_entropy, lambda x: 1.0 - x), Property.V),
        # negative somewhere
        (Functional("negative", lambda a: lin_entropy(a) - 0.1), Property.I),
        # maximized away from uniform
        (Functional("tilted", lambda a: lin_entropy(a) + 0.2 * float(a[0])), Property.VII),
    ],
)
def test_counterfeits_fail_their_property(functional, prop):
    r = check_property(prop, SMALL, functional)
    assert not r.passed
    _check_report_invariants(r)


def test_continuity_counterfeit():
    # flips between 0 and 1 every 1e-3 of the first mass
    jumpy = Functional("sawtooth", lambda a: float(math.floor(a[0] * 1000) % 2))
    r = check_property(Property.II, SuiteConfig(trials=200, max_alphabet=2, seed=0), jumpy)
    assert not r.passed


def test_report_serialization():
    r = check_property(Property.V, SMALL, NORMALIZED_SHANNON)
    d = json.loads(r.to_json())
    assert d["property"] == "V"
    assert d["worst_violation"] == "inf"
    assert d["passed"] is False
    assert "FAIL" in r.summary_line()


def test_get_functional():
    assert get_functional("shannon-normalized") is NORMALIZED_SHANNON
    assert get_functional("normalized-shannon") is NORMALIZED_SHANNON
    with pytest.raises(InvalidConfig):
        get_functional("renyi")


def test_references_agree_with_entropies():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = rng.dirichlet(np.ones(7))
        for f in (LIN, LOGICAL, NORMALIZED_SHANNON):
            assert math.isclose(f.entropy(a), f.reference(a), abs_tol=1e-12)
