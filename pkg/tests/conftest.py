import itertools

import numpy as np
import pytest

from vilenkin_frames.group import ModelConfig
from vilenkin_frames.walsh import Signal, SpectralSignal, inverse

SWEEP = [
    (p, m, n)
    for p, m, n in itertools.product((2, 3, 5), (1, 2, 3), (1, 2, 3))
    if p ** (m + n) <= 243
]

# windows small enough for dense N x N work inside tight loops
SMALL = [
    (2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2), (2, 1, 3), (2, 3, 1),
    (3, 1, 1), (2, 2, 3), (2, 3, 2), (3, 1, 2), (3, 2, 1), (5, 1, 1),
]


def random_signal(cfg: ModelConfig, rng) -> Signal:
    return Signal(cfg, rng.standard_normal(cfg.size) + 1j * rng.standard_normal(cfg.size))


def sparse_spectrum_signal(cfg: ModelConfig, rng, keep: float = 0.5) -> Signal:
    """Random generator whose spectrum vanishes on a random set of U*-fibres."""
    fib = rng.standard_normal((cfg.hperp_count, cfg.h_count)) + 1j * rng.standard_normal((cfg.hperp_count, cfg.h_count))
    on = rng.random(cfg.h_count) < keep
    on[rng.integers(cfg.h_count)] = True
    fib[:, ~on] = 0.0
    return inverse(SpectralSignal(cfg, fib.reshape(-1)))


def fibre_sparse_signal(cfg: ModelConfig, rng, columns=None) -> Signal:
    """At most one nonzero spectral entry per U*-fibre, on the given columns."""
    fib = np.zeros((cfg.hperp_count, cfg.h_count), dtype=np.complex128)
    cols = range(cfg.h_count) if columns is None else columns
    for w in cols:
        row = rng.integers(cfg.hperp_count)
        fib[row, w] = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.random())
    return inverse(SpectralSignal(cfg, fib.reshape(-1)))


def generator_battery(cfg: ModelConfig, count: int, seed: int):
    """Mostly dense random generators, every fifth one with spectral gaps."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        if k % 5 == 4:
            out.append(sparse_spectrum_signal(cfg, rng))
        else:
            out.append(random_signal(cfg, rng))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def example_cfg():
    return ModelConfig(2, 1, 1)


@pytest.fixture
def example_phi(example_cfg):
    return Signal(example_cfg, [1.0, 0.0, 0.5, 0.0])


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))
    elif report.when == "setup" and report.outcome != "passed" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
