import functools
import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

import catcorr as cc  # noqa: E402
from oracles import dyad_to_fock, fock_nmax  # noqa: E402


@functools.lru_cache(maxsize=None)
def _build(name: str, gamma: float):
    return cc.build(cc.StateId[name], gamma)


@functools.lru_cache(maxsize=None)
def _fock(name: str, gamma: float):
    nmax = fock_nmax(gamma)
    return dyad_to_fock(_build(name, gamma), nmax), nmax


@functools.lru_cache(maxsize=None)
def _qubit(name: str, gamma: float):
    return cc.qubit_matrix(_build(name, gamma), gamma)


@pytest.fixture(scope="session")
def state():
    """Cached catalog-state builder: ``state('RHO_PP', 1.0)``."""
    return _build


@pytest.fixture(scope="session")
def fock_state():
    """Cached truncated-Fock matrix of a catalog state: ``(matrix, nmax)``."""
    return _fock


@pytest.fixture(scope="session")
def qubit_state():
    """Cached two-qubit embedding of a catalog state."""
    return _qubit
