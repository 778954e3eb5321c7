from __future__ import annotations

import pytest

from k3tau.k3lattices import cubic_lattice, extended_k3_lattice, k3_lattice
from k3tau.lattice import standard_lattice


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("K3TAU_WORKERS", "K3TAU_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def k3():
    return k3_lattice()


@pytest.fixture
def extended():
    return extended_k3_lattice()


@pytest.fixture
def cubic():
    return cubic_lattice()


@pytest.fixture
def hyperbolic():
    return standard_lattice("U")
