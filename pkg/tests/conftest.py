import numpy as np
import pytest

from numrad import SampleSpec, sample

DIMS_SMALL = (1, 2, 3, 4, 6, 8)


def ginibre(dim, seed):
    return sample(SampleSpec("ginibre", dim, seed))


def draw(family, dim, seed):
    return sample(SampleSpec(family, dim, seed))


def herm_norm(h):
    w = np.linalg.eigvalsh(h)
    return float(max(abs(w[0]), abs(w[-1])))


@pytest.fixture
def shift2():
    return np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
