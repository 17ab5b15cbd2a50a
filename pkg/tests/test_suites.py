import pytest

from src.algorithms.base import CheckResult, VerificationSuite
from src.algorithms.suites import ALL_SUITES, suite_by_name
from src.core.config import Config
from src.core.errors import DTError

FAST = Config(fgl_degree=4)


@pytest.mark.parametrize("suite", ALL_SUITES, ids=lambda s: s.name)
def test_suite_passes(suite):
    results = suite.run(FAST)
    assert results
    failed = [r for r in results if not r.passed]
    assert failed == []


def test_dataframe_columns():
    frame = suite_by_name("macmahon").to_dataframe(FAST)
    assert list(frame.columns) == ["suite", "check", "passed", "detail"]
    assert set(frame["suite"]) == {"macmahon"}
    assert frame["passed"].all()


def test_unique_names():
    names = [s.name for s in ALL_SUITES]
    assert len(set(names)) == len(names)


def test_unknown_suite():
    with pytest.raises(KeyError):
        suite_by_name("nope")


class _Raising(VerificationSuite):
    name = "raising"

    def run(self, config):
        raise DTError("boom")


class _Failing(VerificationSuite):
    name = "failing"

    def run(self, config):
        return [CheckResult("one", True), CheckResult("two", False, "expected 1, got 2")]


def test_library_errors_become_failed_checks():
    results = _Raising().safe_run(FAST)
    assert len(results) == 1
    assert not results[0].passed
    assert "DTError: boom" in results[0].detail


def test_failures_are_reported():
    frame = _Failing().to_dataframe(FAST)
    assert frame["passed"].tolist() == [True, False]
    assert frame.loc[1, "detail"] == "expected 1, got 2"
