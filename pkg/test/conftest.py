import random

import matplotlib
import pytest

from span_localization.catalog import BUILDERS, FIXTURES
from span_localization.relcat import RelativeCategory

matplotlib.use("Agg")


@pytest.fixture()
def meet() -> RelativeCategory:
    return BUILDERS["meet-poset"]()


@pytest.fixture()
def cube() -> RelativeCategory:
    return BUILDERS["cube-poset"]()


@pytest.fixture()
def parallel() -> RelativeCategory:
    return BUILDERS["parallel-pair"]()


@pytest.fixture()
def walking_iso() -> RelativeCategory:
    return BUILDERS["walking-iso"]()


@pytest.fixture()
def collapse() -> RelativeCategory:
    return BUILDERS["collapse"]()


@pytest.fixture(params=FIXTURES)
def fixture_name(request: pytest.FixtureRequest) -> str:
    return request.param


@pytest.fixture()
def relative(fixture_name: str) -> RelativeCategory:
    return BUILDERS[fixture_name]()


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(1977)
