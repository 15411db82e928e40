from dataclasses import replace

import pytest

from bipartite_maps.coords.kernel import kernel_build
from bipartite_maps.verify import checks
from bipartite_maps.verify.checks import SUITES, VerificationChecks, run_suites


def test_every_suite_is_registered():
    assert VerificationChecks.suites() == list(SUITES)
    with pytest.raises(ValueError):
        VerificationChecks.checks("everything")


def test_slow_checks_are_opt_in():
    fast = {c.name for c in VerificationChecks.checks("fit")}
    everything = {c.name for c in VerificationChecks.checks("fit", slow=True)}
    assert "genus_two_fit" in everything - fast


@pytest.mark.parametrize("suite", SUITES)
def test_suite_runs_through_the_registry(engine, suite):
    (report,) = engine.verify(suite)
    assert report["suite"] == suite
    assert [row["name"] for row in report["checks"]] == sorted(
        c.name for c in VerificationChecks.checks(suite)
    )
    failed = {row["name"]: row["detail"] for row in report["checks"] if not row["passed"]}
    assert not failed
    assert report["passed"]


def test_broken_kernel_fails_the_kernel_suite(engine, monkeypatch):
    def broken_kernel(K):
        kernel = kernel_build(K)
        return replace(kernel, nu=kernel.nu + kernel.z)

    monkeypatch.setattr(checks, "kernel_build", broken_kernel)
    (report,) = run_suites(engine, "kernel")
    assert not report["passed"]
    row = next(row for row in report["checks"] if row["name"] == "kernel_structure")
    assert not row["passed"]
    assert row["detail"] == "kernel factorization for K = 2"
