import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # Lets fixtures see whether the test body passed.
    outcome = yield
    setattr(item, f"rep_{call.when}", outcome.get_result())
