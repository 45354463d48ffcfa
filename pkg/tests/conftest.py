import numpy as np
import pytest

from censored_sizer import Family, SurvivalSample, SyntheticSpec, generate

_ACCEPTANCE = {}


@pytest.fixture
def report(request):
    """Record a one-line verdict for an acceptance criterion."""
    key = request.node.name

    def _record(criterion, detail):
        _ACCEPTANCE[key] = [criterion, detail, None]

    yield _record
    # outcome filled in by the hook below


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.name in _ACCEPTANCE and rep.when == "call":
        _ACCEPTANCE[item.name][2] = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
    elif rep.when == "setup" and rep.skipped and "acceptance" in item.nodeid:
        _ACCEPTANCE.setdefault(item.name, [item.name, "skipped", "SKIP"])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit, detail, verdict in sorted(_ACCEPTANCE.values(), key=lambda r: r[0]):
        terminalreporter.write_line(f"{verdict or 'SKIP':4s}  {crit}: {detail}")


@pytest.fixture
def small_censored():
    return SurvivalSample([1.0, 2.0, 3.0, 4.0], [1, 0, 1, 1])


@pytest.fixture
def rng():
    return np.random.default_rng(20081)


@pytest.fixture(scope="session")
def censored_sample():
    return generate(SyntheticSpec(Family("weibull", shape=2.0), n=150, seed=7, censor_rate=0.4))


@pytest.fixture(scope="session")
def uncensored_sample():
    return generate(SyntheticSpec(Family("exponential", rate=1.0), n=150, seed=11))
