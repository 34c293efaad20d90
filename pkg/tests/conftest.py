"""Shared fixtures: acceptance campaigns are expensive and session-scoped."""

import pytest

from ginibre_overlaps import mc, theory, verify

_ACCEPTANCE_LINES = []


def record_line(line):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ginoe_fine():
    n, m = verify.FINITE_N_SCALE
    return mc.run_campaign(mc.EnsembleConfig(theory.GINOE, n, m,
                                             verify.DEFAULT_SEED))


@pytest.fixture(scope="session")
def ginue_fine():
    n, m = verify.FINITE_N_SCALE
    return mc.run_campaign(mc.EnsembleConfig(theory.GINUE, n, m,
                                             verify.DEFAULT_SEED + 1))


@pytest.fixture(scope="session")
def ginoe_regime():
    n, m = verify.REGIME_SCALE
    return mc.run_campaign(mc.EnsembleConfig(theory.GINOE, n, m,
                                             verify.DEFAULT_SEED + 2))


@pytest.fixture(scope="session")
def ginue_tail():
    n, _ = verify.REGIME_SCALE
    return mc.run_campaign(mc.EnsembleConfig(
        theory.GINUE, n, verify.GINUE_TAIL_SAMPLES, verify.DEFAULT_SEED + 3))
