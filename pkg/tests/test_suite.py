import pytest

from htutte.suite import PINNED_CASES, SuiteConfig, random_cases, run_suite


def test_small_suite_passes_and_is_deterministic():
    cfg = SuiteConfig(cases=8, seed=123)
    a = run_suite(cfg)
    b = run_suite(cfg)
    assert a.ok
    assert a.to_text() == b.to_text()
    import json

    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)


def test_different_seed_changes_cases():
    a = run_suite(SuiteConfig(cases=7, seed=1, include_pinned=False))
    b = run_suite(SuiteConfig(cases=7, seed=2, include_pinned=False))
    assert a.ok and b.ok
    assert a.to_text() != b.to_text()


def test_empty_suite():
    report = run_suite(SuiteConfig(cases=0))
    assert report.ok and report.cases == []
    report = run_suite(SuiteConfig(max_n=0))
    assert report.ok and report.cases == []


def test_pinned_cases_present_and_frozen():
    report = run_suite(SuiteConfig(cases=len(PINNED_CASES), seed=42))
    labels = [c.label for c in report.cases]
    assert "z4-worked-example" in labels
    z4 = report.cases[labels.index("z4-worked-example")]
    pinned = {c.name: c.ok for c in z4.checks if c.name.startswith("pinned-")}
    assert pinned == {
        "pinned-w": True,
        "pinned-z": True,
        "pinned-tutte": True,
        "pinned-coboundary": True,
    }
    assert z4.ok


def test_first_failure_is_none_on_success():
    report = run_suite(SuiteConfig(cases=3, seed=9, include_pinned=False))
    assert report.first_failure is None


def test_random_cases_deterministic():
    cfg = SuiteConfig(cases=5, seed=77)
    a = random_cases(cfg, 5)
    b = random_cases(cfg, 5)
    assert [(c.ring.name, c.n, f.d, m) for c, f, m, _ in a] == [
        (c.ring.name, c.n, f.d, m) for c, f, m, _ in b
    ]


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(max_n=20)
