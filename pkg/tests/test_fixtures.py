import pytest

from schemecodes import fixtures as FX
from schemecodes import groups as GR


def test_manifest_covers_all_names():
    m = FX.manifest()
    assert set(FX.FIXTURE_NAMES) == set(m)


@pytest.mark.parametrize("name", FX.FIXTURE_NAMES)
def test_fixture_arrays_match_manifest(name):
    g, _, arr = FX.fixture_system(name)
    entry = FX.manifest()[name]
    assert g.n == entry["n"]
    assert list(arr.b) == entry["b"] and list(arr.c) == entry["c"]


@pytest.mark.parametrize("name", FX.FIXTURE_NAMES)
def test_fixture_generators_are_automorphisms(name):
    g = FX.fixture_graph(name)
    gens = FX.fixture_generators(name)
    assert gens
    for p in gens:
        assert GR.is_automorphism(g, p)


def test_unknown_fixture():
    with pytest.raises(FX.UnknownFixture, match="unknown fixture"):
        FX.fixture_graph("petersen")
