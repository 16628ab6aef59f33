import sys


def pytest_runtest_logreport(report):
    """Print one summary line per acceptance criterion as it finishes."""
    if report.when != "call":
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    outcome = "PASS" if report.passed else "FAIL"
    sys.stdout.write(f"\nACCEPTANCE {name}: {outcome}\n")
