import pytest

from dlcsim import presets
from dlcsim.pipeline import ScenarioConfig

_criteria: dict[int, tuple[str, str]] = {}


@pytest.fixture(params=presets.WAVELENGTHS_NM, ids=lambda nm: f"{nm}nm")
def nm(request):
    return request.param


@pytest.fixture
def panel(nm):
    return presets.pv_panel(nm)


@pytest.fixture
def cfg810():
    return ScenarioConfig.from_presets(810)


@pytest.fixture
def cfg1550():
    return ScenarioConfig.from_presets(1550)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        _criteria[number] = (title, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}")
