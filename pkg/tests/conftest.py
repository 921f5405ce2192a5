import pytest

_ACCEPTANCE: list[tuple[str, str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and (rep.when == "call" or rep.failed or rep.skipped):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        if rep.when == "call" or rep.failed:
            _ACCEPTANCE.append((item.name, "PASS" if rep.passed else "FAIL", doc))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, doc in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{status} {name}: {doc}")
