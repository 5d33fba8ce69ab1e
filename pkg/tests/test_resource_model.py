from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from poolgame.errors import (
    EmptyPool,
    NonPositiveWeight,
    OverlappingPools,
    UnknownOwner,
    WeightsDoNotSumToOne,
)
from poolgame.resource_model import PoolingConfiguration, measure, new_universe, validate_configuration


def test_new_universe_examples():
    assert new_universe(["1/2", "1/3", "1/6"]).n == 3
    single = new_universe([1])
    assert single.n == 1 and measure(single, {0}) == 1
    with pytest.raises(WeightsDoNotSumToOne):
        new_universe(["1/2", "1/2", "1/2"])
    with pytest.raises(NonPositiveWeight):
        new_universe(["3/2", "-1/2"])


def test_floats_rejected():
    with pytest.raises(ValueError):
        new_universe([0.5, 0.5])


def test_measure_examples():
    u = new_universe(["1/2", "1/3", "1/6"])
    assert measure(u, {0, 1}) == F(5, 6)
    assert measure(u, set()) == 0
    assert measure(u, {0, 1, 2}) == 1
    with pytest.raises(UnknownOwner):
        measure(u, {3})


def test_validate_configuration_examples():
    u = new_universe(["1/2", "1/3", "1/6"])
    validate_configuration(u, PoolingConfiguration(({0}, {1, 2})))
    validate_configuration(u, PoolingConfiguration.centralized(u))
    with pytest.raises(OverlappingPools) as exc:
        validate_configuration(u, PoolingConfiguration(({0, 1}, {1, 2})))
    assert (exc.value.owner, exc.value.pool_a, exc.value.pool_b) == (1, 0, 1)
    with pytest.raises(EmptyPool):
        validate_configuration(u, PoolingConfiguration(({0}, set())))
    with pytest.raises(UnknownOwner):
        validate_configuration(u, PoolingConfiguration(({0, 5},)))
    # inactive owners are allowed
    validate_configuration(u, PoolingConfiguration(({0},)))


@st.composite
def universes(draw, max_n=7):
    raw = draw(st.lists(st.integers(1, 50), min_size=1, max_size=max_n))
    total = sum(raw)
    return new_universe([F(r, total) for r in raw])


@given(universes(), st.data())
def test_measure_modular_and_monotone(u, data):
    s = data.draw(st.frozensets(st.sampled_from(range(u.n))))
    t = data.draw(st.frozensets(st.sampled_from(range(u.n))))
    assert measure(u, s | t) == measure(u, s) + measure(u, t) - measure(u, s & t)
    if s <= t:
        assert measure(u, s) <= measure(u, t)
    assert measure(u, range(u.n)) == 1
