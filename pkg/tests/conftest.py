"""Shared fixtures: the constructed sets and forms are immutable, so one
session-scoped copy serves every test."""

import pytest

import ksray as K


@pytest.fixture(scope="session")
def g9():
    return K.base_graph_9()


@pytest.fixture(scope="session")
def s13():
    return K.build_13ray()


@pytest.fixture(scope="session")
def s18():
    return K.build_18ray()


@pytest.fixture(scope="session")
def s25():
    return K.build_25ray()


@pytest.fixture(scope="session")
def l3(s13):
    return K.build_L3(s13)


@pytest.fixture(scope="session")
def l4():
    return K.build_L4()


@pytest.fixture(scope="session")
def l5():
    return K.build_L5()


@pytest.fixture(scope="session")
def l5prime():
    return K.build_L5prime()
