import pytest

from quakewait import IntensityModel, load_reference_catalog, segment_by_major


@pytest.fixture(scope="session")
def constant_model():
    return IntensityModel.constant(1.0)


@pytest.fixture(scope="session")
def piecewise_model():
    # rate 2 on [0, 1), rate 1 afterwards
    return IntensityModel.piecewise([(0.0, 2.0), (1.0, 1.0)])


@pytest.fixture(scope="session")
def reference_segments():
    return segment_by_major(load_reference_catalog())
