from functools import lru_cache

import pytest

from bihecke import build_group


@lru_cache(maxsize=None)
def group(text: str):
    return build_group(text)


@pytest.fixture(scope="session")
def A2():
    return group("A2")


@pytest.fixture(scope="session")
def A3():
    return group("A3")


@pytest.fixture(scope="session")
def B2():
    return group("B2")
