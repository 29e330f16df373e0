"""Shared scenario parameters for the test suite.

The three parameter families used throughout mirror the bundled presets:
single-photon conversion in the generalized model (g = 0.15, theta = pi/6,
omega_a = 3, omega_b = 2), two-photon |1,0,g> <-> |0,2,e> conversion in the
quantum Rabi model (g = 0.2, omega_a = 5, omega_b = 2), and two-photon
|1,0,e> <-> |0,2,g> conversion (g = 0.125, omega_a = 3, omega_b = 2).
"""

import math

import pytest

from freqconv.fockspace import SpaceConfig
from freqconv.models import ModelParams


def single_photon_params(g: float = 0.15, omega_q: float = 1.0) -> ModelParams:
    return ModelParams(omega_a=3.0, omega_b=2.0, omega_q=omega_q,
                       g_a=g, g_b=g, theta=math.pi / 6)


def two_photon_ge_params(g: float = 0.2, omega_q: float = 1.0) -> ModelParams:
    return ModelParams(omega_a=5.0, omega_b=2.0, omega_q=omega_q, g_a=g, g_b=g)


def two_photon_eg_params(g: float = 0.125, omega_q: float = 1.0) -> ModelParams:
    return ModelParams(omega_a=3.0, omega_b=2.0, omega_q=omega_q, g_a=g, g_b=g)


@pytest.fixture(scope="session")
def cfg6() -> SpaceConfig:
    return SpaceConfig(6, 6)


@pytest.fixture(scope="session")
def cfg4() -> SpaceConfig:
    return SpaceConfig(4, 4)


@pytest.fixture(scope="session")
def cfg3() -> SpaceConfig:
    return SpaceConfig(3, 3)
