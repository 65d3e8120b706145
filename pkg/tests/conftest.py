import pytest

from skewsf import gf, semifield, skewpoly


@pytest.fixture(scope="session")
def f4():
    """Tower F_2 < F_4 (q = 2, n = 2)."""
    return gf.build_tower(2, 1, 2)


@pytest.fixture(scope="session")
def f9():
    return gf.build_tower(3, 1, 2)


@pytest.fixture(scope="session")
def ring4(f4):
    return skewpoly.SkewRing(f4, 1)


@pytest.fixture(scope="session")
def ring9(f9):
    return skewpoly.SkewRing(f9, 1)


@pytest.fixture(scope="session")
def f_order16(ring4):
    """The running example t^2 + w t + 1 over F_4[t;sigma]."""
    return ring4.poly([1, 2, 1])


@pytest.fixture(scope="session")
def s_order16(f_order16):
    return semifield.Semifield(f_order16)
