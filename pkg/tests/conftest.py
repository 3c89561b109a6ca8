import sys
from pathlib import Path

import numpy as np
import pytest

from sparsecs import kernels

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))


def load_bits(name):
    return np.array([[int(c) for c in line.strip()] for line in (DATA / name).read_text().splitlines()])


@pytest.fixture(scope="session")
def printed_psi():
    return load_bits("psi_4x4.txt")


@pytest.fixture(scope="session")
def printed_psi_prime():
    return load_bits("psi_prime_9x9.txt")


@pytest.fixture(scope="session")
def printed_phi():
    return load_bits("phi_12x36.txt")


@pytest.fixture(scope="session")
def printed_s3():
    return [tuple(int(v) for v in line.split()) for line in (DATA / "s_triple_prime.txt").read_text().splitlines()]


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)
