import pytest

from spinform.homology import HomologyClass, SurfaceSignature


@pytest.fixture
def torus():
    return SurfaceSignature(1, 0)


def cls(surface, *labels, name=None):
    return HomologyClass.from_labels(surface, {lbl: 1 for lbl in labels}, name)
