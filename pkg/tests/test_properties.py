"""Seeded randomized checks of the algebraic laws, at least 1000 cases each."""

import pytest

import laws


@pytest.fixture(scope="module")
def pool(seed):
    return laws.Pool(seed)


@pytest.mark.parametrize("law", list(laws.ALL_LAWS))
def test_law(law, seed, pool):
    assert laws.run_law(law, seed, pool) >= laws.CASES
