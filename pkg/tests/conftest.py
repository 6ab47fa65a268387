import numpy as np
import pytest

from summability import FormTensor, ScalarField, SpaceSpec, TestFamily, VectorSeq


@pytest.fixture
def littlewood():
    return FormTensor.on_linf([[1.0, 1.0], [1.0, -1.0]])


@pytest.fixture
def littlewood_complex():
    return FormTensor.on_linf([[1.0, 1.0], [1.0, -1.0]], ScalarField.COMPLEX)


def basis_family(n=2, dim=2, space=None):
    space = space or SpaceSpec.linf(dim)
    return TestFamily(tuple(VectorSeq(np.eye(dim), space) for _ in range(n)))


@pytest.fixture
def diag_family():
    return basis_family()
