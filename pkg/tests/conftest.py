import numpy as np
import pytest

from sepfaces import PureState, tensor_product

SQ2 = np.sqrt(2)


def random_vector(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_vector(rng, n * n).reshape(n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng, dims):
    return PureState.from_amplitudes(dims, random_vector(rng, int(np.prod(dims))))


def bell_vec():
    return np.array([1, 0, 0, 1]) / SQ2


@pytest.fixture
def rng():
    return np.random.default_rng(20141015)


@pytest.fixture
def ghz():
    return PureState.from_amplitudes([2, 2, 2], np.array([1, 0, 0, 0, 0, 0, 0, 1]) / SQ2)


@pytest.fixture
def bell():
    return PureState.from_amplitudes([2, 2], bell_vec())


@pytest.fixture
def zero_bell():
    """|0> (x) Bell on parties 2, 3."""
    return PureState.from_amplitudes([2, 2, 2], np.kron([1, 0], bell_vec()))


@pytest.fixture
def twisted_bell():
    return PureState.from_amplitudes([2, 2], np.array([1, 0, 0, 1j]) / SQ2)


@pytest.fixture
def ket11():
    return tensor_product([[0, 1], [0, 1]])


_ACCEPTANCE_LINES = []


def record_acceptance(line):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
