"""The verification-sweep registry itself: result bookkeeping, the runner
contract, and a smoke pass over the cheap suites."""

import pytest

from qadic.suites import DEFAULT_SUITES, SUITES, SuiteResult, run_suite, run_suites


def test_registry_shape():
    assert set(DEFAULT_SUITES) <= set(SUITES)
    assert len(SUITES) == 14
    assert "all" not in SUITES and "default" not in SUITES  # CLI-level aliases only


def test_default_suites_are_the_acceptance_set():
    assert DEFAULT_SUITES == (
        "cocycle-identity",
        "identities",
        "norm",
        "valuation",
        "criterion",
        "propagation",
        "roundtrip",
        "isometry",
    )


def test_result_bookkeeping():
    r = SuiteResult(name="demo")
    assert r.passed and r.cases == 0
    assert r.check(True, "never built")
    assert not r.check(False, lambda: "first failure")
    assert r.cases == 2 and r.failures == ["first failure"]
    assert not r.passed
    assert "FAIL" in r.summary() and "demo" in r.summary()


def test_failure_cap():
    r = SuiteResult(name="demo")
    for k in range(25):
        r.check(False, str(k))
    assert r.cases == 25
    assert len(r.failures) == 10
    assert r.saturated


def test_run_suite_unknown_name():
    with pytest.raises(KeyError):
        run_suite("no-such-suite")


def test_run_suite_records_timing_and_cases():
    r = run_suite("census", depth=4)
    assert r.passed and r.cases > 0 and r.seconds >= 0


def test_run_suites_preserves_order():
    names = ["census", "propagation", "roundtrip"]
    results = run_suites(names, depth=3)
    assert [r.name for r in results] == names
    assert all(r.passed for r in results)


def test_seed_reproducibility():
    a = run_suite("isometry", depth=4, seed=7)
    b = run_suite("isometry", depth=4, seed=7)
    assert (a.cases, a.failures) == (b.cases, b.failures)
    assert a.passed


@pytest.mark.parametrize(
    "name",
    ["cocycle-identity", "identities", "criterion", "propagation", "roundtrip", "isometry"],
)
def test_cheap_suites_pass_at_shallow_depth(name):
    r = run_suite(name, depth=3)
    assert r.passed, r.failures[:3]
