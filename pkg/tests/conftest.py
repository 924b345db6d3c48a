import pytest
from hypothesis import HealthCheck, settings

from lofs.poset import monotone_maps, posets_up_to

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def all_maps(objects):
    return [f for X in objects for Y in objects for f in monotone_maps(X, Y)]


@pytest.fixture(scope="session")
def posets3():
    return posets_up_to(3)


@pytest.fixture(scope="session")
def maps3(posets3):
    return all_maps(posets3)


@pytest.fixture(scope="session")
def posets2():
    return posets_up_to(2)


@pytest.fixture(scope="session")
def maps2(posets2):
    return all_maps(posets2)
