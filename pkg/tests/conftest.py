import pathlib

import numpy as np
import pytest

TESTS = pathlib.Path(__file__).parent
DATA = TESTS / "data"
GOLDEN = TESTS / "golden"


def random_matrix(rng, n, scale=1.0):
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_matrix(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
