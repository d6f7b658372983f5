import pytest
from hypothesis import HealthCheck, settings

from aszeta.lfun import CurveSpec, seed_corpus

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

CORPUS_SEED = 20240601
CORPUS_SIZE = 60

# Lines written by the acceptance suite; echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def suzuki1() -> CurveSpec:
    return CurveSpec.default(1, (0, 1, 1))


@pytest.fixture(scope="session")
def corpus() -> list[CurveSpec]:
    return seed_corpus(CORPUS_SIZE, CORPUS_SEED)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
