import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bicliff.werner import best_fidelity_protocol, distinct_protocols
from bicliff.transversal import build_transversal

_PROTOCOLS: dict = {}
_TRANSVERSALS: dict = {}
_BEST: dict = {}


def get_protocols(n: int):
    if n not in _PROTOCOLS:
        _PROTOCOLS[n] = distinct_protocols(n)
    return _PROTOCOLS[n]


def get_best(n: int):
    if n not in _BEST:
        _BEST[n] = best_fidelity_protocol(n, protocols=get_protocols(n))
    return _BEST[n]


def get_transversal(n: int, seed: int = 0):
    if (n, seed) not in _TRANSVERSALS:
        _TRANSVERSALS[(n, seed)] = build_transversal(n, seed=seed)
    return _TRANSVERSALS[(n, seed)]


@pytest.fixture(scope="session")
def protocols_for():
    return get_protocols


@pytest.fixture(scope="session")
def best_for():
    return get_best


@pytest.fixture(scope="session")
def transversal_for():
    return get_transversal
