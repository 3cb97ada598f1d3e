import math

import numpy as np
import pytest
from hypothesis import settings

import fockbundle as fb

settings.register_profile("suite", deadline=None, max_examples=50)
settings.load_profile("suite")


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=20250822))


def cnormal(rng, size=None):
    return rng.normal(0, math.sqrt(0.5), size=size) + 1j * rng.normal(
        0, math.sqrt(0.5), size=size
    )


def random_poly(rng, nmax, grades=None):
    amps = {}
    for n in range(nmax + 1) if grades is None else grades:
        for m in range(n + 1):
            amps[(n, m)] = complex(cnormal(rng))
    return fb.HoloPoly(amps, nmax=nmax)


def random_point(rng):
    return fb.PhasePoint(complex(cnormal(rng)), complex(cnormal(rng)))


def pytest_terminal_summary(terminalreporter):
    # Echo the acceptance verdict lines (printed inside the tests, hence
    # captured) so they are visible in every run's summary.
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "VERDICT_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
