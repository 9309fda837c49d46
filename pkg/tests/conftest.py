import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from gf2inv.fixtures import load_fixture
from gf2inv.pipeline import Pipeline

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("GF2INV_SLOW"):
        return
    skip = pytest.mark.skip(reason="slow search; set GF2INV_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def mats():
    return load_fixture()[0]


@pytest.fixture(scope="session")
def pipeline():
    return Pipeline()


@pytest.fixture(scope="session")
def setting(pipeline):
    return pipeline.setting


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
