import pytest

from quasihopf.algebra import derive_elements
from quasihopf.dpr import (FiniteGroup, build_dpr, build_group_algebra,
                           cyclic_cocycle, trivial_cocycle)
from quasihopf.integrals import compute_integral_data


@pytest.fixture(scope="session")
def kz2():
    return build_group_algebra(FiniteGroup.cyclic(2))


@pytest.fixture(scope="session")
def kz3():
    return build_group_algebra(FiniteGroup.cyclic(3))


@pytest.fixture(scope="session")
def ks3():
    return build_group_algebra(FiniteGroup.symmetric(3))


@pytest.fixture(scope="session")
def dz2():
    return build_dpr(FiniteGroup.cyclic(2), trivial_cocycle())


@pytest.fixture(scope="session")
def dz2w():
    return build_dpr(FiniteGroup.cyclic(2), cyclic_cocycle(2, 1))


@pytest.fixture(scope="session")
def dz3():
    return build_dpr(FiniteGroup.cyclic(3), trivial_cocycle())


@pytest.fixture(scope="session")
def dz3w():
    return build_dpr(FiniteGroup.cyclic(3), cyclic_cocycle(3, 1))


@pytest.fixture(scope="session")
def ds3():
    return build_dpr(FiniteGroup.symmetric(3), trivial_cocycle())


def _ctx(alg):
    der = derive_elements(alg)
    data = compute_integral_data(alg, der)
    return alg, der, data


@pytest.fixture(scope="session")
def dz2_ctx(dz2):
    return _ctx(dz2)


@pytest.fixture(scope="session")
def dz2w_ctx(dz2w):
    return _ctx(dz2w)


@pytest.fixture(scope="session")
def dz3_ctx(dz3):
    return _ctx(dz3)


@pytest.fixture(scope="session")
def dz3w_ctx(dz3w):
    return _ctx(dz3w)
