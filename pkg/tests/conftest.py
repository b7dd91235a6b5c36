import numpy as np
import pytest

from schemecodes import fixtures as FX
from schemecodes import partitions as PT


def trivial_quotient(name: str) -> PT.QuotientSystem:
    scheme, _ = FX.fixture_scheme(name)
    qs = PT.check_equitable(scheme, [(v,) for v in range(scheme.n)])
    assert isinstance(qs, PT.QuotientSystem)
    return qs


def one_cell_quotient(name: str) -> PT.QuotientSystem:
    scheme, _ = FX.fixture_scheme(name)
    qs = PT.check_equitable(scheme, [tuple(range(scheme.n))])
    assert isinstance(qs, PT.QuotientSystem)
    return qs


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
