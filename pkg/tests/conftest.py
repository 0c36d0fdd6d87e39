import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def hp1():
    from gridspan.hardpair import build_hard_pair

    return build_hard_pair(1)


@pytest.fixture(scope="session")
def h_gadget():
    from gridspan.embeddings.gadgets import build_h_gadget

    return build_h_gadget(3, 8)


@pytest.fixture(scope="session")
def udg1(hp1):
    from gridspan.embeddings.instances import build_udg_instance

    return build_udg_instance(hp1)


@pytest.fixture(scope="session")
def seg1(hp1):
    from gridspan.embeddings.seg import build_seg_instance

    return build_seg_instance(hp1)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
